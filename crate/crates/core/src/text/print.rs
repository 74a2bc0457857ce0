use std::fmt::{self, Display, Formatter};

use crate::derive::{Context, Judgment, Subject};
use crate::syntax::{Binding, Term};
use crate::types::Type;

#[derive(Clone, Copy, PartialEq, Eq)]
enum TermCtx {
    /// Extends maximally to the right.
    Open,
    Head,
    Arg,
}

fn term(t: &Term, ctx: TermCtx, f: &mut Formatter<'_>) -> fmt::Result {
    match t {
        Term::Var(x) => f.write_str(x),
        Term::Constr(c) => f.write_str(c),
        Term::Daimon => f.write_str("!"),
        Term::App(a, b) => {
            if ctx == TermCtx::Arg {
                f.write_str("(")?;
            }
            term(a, TermCtx::Head, f)?;
            f.write_str(" ")?;
            term(b, TermCtx::Arg, f)?;
            if ctx == TermCtx::Arg {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::Lam(..) | Term::Case(..) => {
            let wrap = ctx != TermCtx::Open;
            if wrap {
                f.write_str("(")?;
            }
            match t {
                Term::Lam(x, body) => {
                    write!(f, "\\{x}. ")?;
                    term(body, TermCtx::Open, f)?;
                }
                Term::Case(theta, s) => {
                    binding(theta, f)?;
                    f.write_str(". ")?;
                    term(s, TermCtx::Open, f)?;
                }
                _ => unreachable!(),
            }
            if wrap {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

fn binding(theta: &Binding, f: &mut Formatter<'_>) -> fmt::Result {
    if theta.is_empty() {
        return f.write_str("{| |}");
    }
    f.write_str("{| ")?;
    for (i, (c, u)) in theta.branches().iter().enumerate() {
        if i > 0 {
            f.write_str(" ; ")?;
        }
        write!(f, "{c} -> ")?;
        term(u, TermCtx::Open, f)?;
    }
    f.write_str(" |}")
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        term(self, TermCtx::Open, f)
    }
}

impl Display for Binding {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        binding(self, f)
    }
}

// Precedence levels: 0 quantifier/arrow, 1 union, 2 intersection,
// 3 application, 4 atom.
fn ty(t: &Type, level: u8, f: &mut Formatter<'_>) -> fmt::Result {
    let (own, wrap) = match t {
        Type::OrdVar(n) => return write!(f, "${n}"),
        Type::DataVar(n) => return write!(f, "@{n}"),
        Type::Const(c) => return f.write_str(c),
        Type::Forall(..) | Type::Exists(..) | Type::Arrow(..) => (0, level > 0),
        Type::Union(..) => (1, level > 1),
        Type::Inter(..) => (2, level > 2),
        Type::App(..) => (3, level > 3),
    };
    if wrap {
        f.write_str("(")?;
    }
    match t {
        Type::Forall(v, body) | Type::Exists(v, body) => {
            let kw = if matches!(t, Type::Forall(..)) {
                "forall"
            } else {
                "exists"
            };
            write!(f, "{kw} {v}. ")?;
            ty(body, 0, f)?;
        }
        Type::Arrow(a, b) => {
            ty(a, 1, f)?;
            f.write_str(" -> ")?;
            ty(b, 0, f)?;
        }
        Type::Union(a, b) | Type::Inter(a, b) | Type::App(a, b) => {
            let sep = match t {
                Type::Union(..) => " | ",
                Type::Inter(..) => " & ",
                _ => " ",
            };
            ty(a, own, f)?;
            f.write_str(sep)?;
            ty(b, own + 1, f)?;
        }
        _ => unreachable!(),
    }
    if wrap {
        f.write_str(")")?;
    }
    Ok(())
}

impl Display for Type {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        ty(self, 0, f)
    }
}

impl Display for Context {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for (i, (x, t)) in self.entries().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} : {t}")?;
        }
        Ok(())
    }
}

impl Display for Subject {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Term(t) => t.fmt(f),
            Subject::Binding(theta) => theta.fmt(f),
        }
    }
}

impl Display for Judgment {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Judgment::Subtype(a, b) => write!(f, "{a} <= {b}"),
            Judgment::Typing { ctx, subject, ty } => {
                if ctx.is_empty() {
                    write!(f, "|- {subject} : {ty}")
                } else {
                    write!(f, "{ctx} |- {subject} : {ty}")
                }
            }
        }
    }
}
