//! Node-by-node validation of derivations.

use std::fmt;

use thiserror::Error;

use super::{Context, Derivation, Judgment, Rule, Subject, SubtypingRule as S, TypingRule as T};
use crate::syntax::{alpha_eq, alpha_eq_binding, Binding, Path, Term};
use crate::types::{
    type_alpha_eq, type_substitute, DataSubstitutionViolation, IllFormedType, TyVar, Type,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checked {
    pub judgment: Judgment,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Reason {
    #[error("rule `{rule}` does not conclude a {expected} judgment")]
    WrongJudgmentKind {
        rule: &'static str,
        expected: &'static str,
    },
    #[error("ill-formed type: {0}")]
    IllFormed(IllFormedType),
    #[error("expected {expected} premise(s), found {found}")]
    PremiseCount { expected: usize, found: usize },
    #[error("premise {index} must be a {expected} judgment")]
    PremiseKind {
        index: usize,
        expected: &'static str,
    },
    #[error("missing witness `{0}`")]
    MissingWitness(&'static str),
    #[error("judgment does not match the schema {0}")]
    Schema(&'static str),
    #[error("{what}: expected `{expected}`, found `{found}`")]
    Mismatch {
        what: String,
        expected: String,
        found: String,
    },
    #[error("side condition {var} ∉ tv({ty}) violated")]
    Freshness { var: TyVar, ty: String },
    #[error("side condition {var} ∉ tv(Γ) violated")]
    ContextFreshness { var: TyVar },
    #[error("side condition c1 ≠ c2 violated: both constructors are `{0}`")]
    SameConstructor(String),
    #[error("branch index i0 = {i0} out of range 1..={branches}")]
    BranchIndex { i0: usize, branches: usize },
    #[error("`{0}` is not a data type")]
    NotDataType(String),
    #[error("variable `{0}` is not in the context")]
    NotInContext(String),
    #[error("{0}")]
    DataSubstitution(DataSubstitutionViolation),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("rejected at node {path} ({rule}): {reason}")]
pub struct Rejection {
    pub path: Path,
    pub rule: &'static str,
    pub reason: Reason,
}

type Local = Result<(), Reason>;

/// Checks a derivation of either kind.
pub fn check(d: &Derivation) -> Result<Checked, Rejection> {
    let mut warnings = Vec::new();
    walk(d, &mut Path::root(), &mut warnings)?;
    Ok(Checked {
        judgment: d.conclusion.clone(),
        warnings,
    })
}

pub fn check_subtyping(d: &Derivation) -> Result<Checked, Rejection> {
    if d.conclusion.is_typing() {
        return Err(root_kind(d, "sub-typing"));
    }
    check(d)
}

pub fn check_typing(d: &Derivation) -> Result<Checked, Rejection> {
    if !d.conclusion.is_typing() {
        return Err(root_kind(d, "typing"));
    }
    check(d)
}

fn root_kind(d: &Derivation, expected: &'static str) -> Rejection {
    Rejection {
        path: Path::root(),
        rule: d.rule.name(),
        reason: Reason::WrongJudgmentKind {
            rule: d.rule.name(),
            expected,
        },
    }
}

fn walk(d: &Derivation, path: &mut Path, warnings: &mut Vec<String>) -> Result<(), Rejection> {
    let mut local_warnings = Vec::new();
    local(d, &mut local_warnings).map_err(|reason| Rejection {
        path: path.clone(),
        rule: d.rule.name(),
        reason,
    })?;
    warnings.extend(
        local_warnings
            .into_iter()
            .map(|w| format!("node {path} ({}): {w}", d.rule.name())),
    );
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        walk(p, path, warnings)?;
        path.pop();
    }
    Ok(())
}

fn local(d: &Derivation, warnings: &mut Vec<String>) -> Local {
    for t in d.conclusion.types() {
        t.check_wellformed().map_err(Reason::IllFormed)?;
    }
    let w = &d.witnesses;
    let witness_types = w
        .inst
        .iter()
        .chain(w.args.iter().flat_map(|v| v.0.iter()))
        .chain(
            w.splits
                .iter()
                .flatten()
                .flat_map(|(v, t)| v.0.iter().chain(std::iter::once(t))),
        );
    for t in witness_types {
        t.check_wellformed().map_err(Reason::IllFormed)?;
    }
    match (d.rule, &d.conclusion) {
        (Rule::Typing(r), Judgment::Typing { ctx, subject, ty }) => {
            typing(r, d, ctx, subject, ty, warnings)
        }
        (Rule::Subtyping(r), Judgment::Subtype(lhs, rhs)) => subtyping(r, d, lhs, rhs),
        (Rule::Typing(r), _) => Err(Reason::WrongJudgmentKind {
            rule: r.name(),
            expected: "typing",
        }),
        (Rule::Subtyping(r), _) => Err(Reason::WrongJudgmentKind {
            rule: r.name(),
            expected: "sub-typing",
        }),
    }
}

fn arity(d: &Derivation, n: usize) -> Local {
    if d.premises.len() == n {
        Ok(())
    } else {
        Err(Reason::PremiseCount {
            expected: n,
            found: d.premises.len(),
        })
    }
}

fn same_type(what: &str, found: &Type, expected: &Type) -> Local {
    if type_alpha_eq(found, expected) {
        Ok(())
    } else {
        Err(Reason::Mismatch {
            what: what.to_string(),
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

fn fresh(var: &TyVar, ty: &Type) -> Local {
    if ty.has_free(var) {
        Err(Reason::Freshness {
            var: var.clone(),
            ty: ty.to_string(),
        })
    } else {
        Ok(())
    }
}

fn witness<'a, W>(w: &'a Option<W>, name: &'static str) -> Result<&'a W, Reason> {
    w.as_ref().ok_or(Reason::MissingWitness(name))
}

struct Premise<'a> {
    ctx: &'a Context,
    subject: &'a Subject,
    ty: &'a Type,
}

fn typing_premise(d: &Derivation, i: usize) -> Result<Premise<'_>, Reason> {
    match &d.premises[i].conclusion {
        Judgment::Typing { ctx, subject, ty } => Ok(Premise { ctx, subject, ty }),
        _ => Err(Reason::PremiseKind {
            index: i,
            expected: "typing",
        }),
    }
}

fn subtype_premise(d: &Derivation, i: usize) -> Result<(&Type, &Type), Reason> {
    match &d.premises[i].conclusion {
        Judgment::Subtype(a, b) => Ok((a, b)),
        _ => Err(Reason::PremiseKind {
            index: i,
            expected: "sub-typing",
        }),
    }
}

fn same_context(i: usize, found: &Context, expected: &Context) -> Local {
    if found.same_as(expected) {
        Ok(())
    } else {
        Err(Reason::Mismatch {
            what: format!("context of premise {i}"),
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

fn same_subject(i: usize, found: &Subject, expected: &Subject) -> Local {
    let ok = match (found, expected) {
        (Subject::Term(a), Subject::Term(b)) => alpha_eq(a, b),
        (Subject::Binding(a), Subject::Binding(b)) => alpha_eq_binding(a, b),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Reason::Mismatch {
            what: format!("subject of premise {i}"),
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

fn term_subject(subject: &Subject) -> Option<&Term> {
    match subject {
        Subject::Term(t) => Some(t),
        Subject::Binding(_) => None,
    }
}

fn binding_subject(subject: &Subject) -> Option<&Binding> {
    match subject {
        Subject::Binding(b) => Some(b),
        Subject::Term(_) => None,
    }
}

fn typing(
    rule: T,
    d: &Derivation,
    ctx: &Context,
    subject: &Subject,
    ty: &Type,
    warnings: &mut Vec<String>,
) -> Local {
    let w = &d.witnesses;
    match rule {
        T::Init => {
            arity(d, 0)?;
            let Some(Term::Var(x)) = term_subject(subject) else {
                return Err(Reason::Schema("Γ ⊢ x : T"));
            };
            let bound = ctx.get(x).ok_or_else(|| Reason::NotInContext(x.clone()))?;
            same_type(&format!("type of `{x}`"), ty, bound)
        }
        T::False => {
            arity(d, 0)?;
            match term_subject(subject) {
                Some(Term::Daimon) => Ok(()),
                _ => Err(Reason::Schema("Γ ⊢ ! : T")),
            }
        }
        T::Constr => {
            arity(d, 0)?;
            let Some(Term::Constr(c)) = term_subject(subject) else {
                return Err(Reason::Schema("Γ ⊢ c : c"));
            };
            same_type("constructor type", ty, &Type::constant(c.clone()))
        }
        T::ArrowIntro => {
            arity(d, 1)?;
            let (Some(Term::Lam(x, body)), Type::Arrow(dom, cod)) = (term_subject(subject), ty)
            else {
                return Err(Reason::Schema("Γ ⊢ \\x. t : T -> U"));
            };
            let p = typing_premise(d, 0)?;
            same_context(0, p.ctx, &ctx.with(x, (**dom).clone()))?;
            same_subject(0, p.subject, &Subject::Term((**body).clone()))?;
            same_type("type of premise 0", p.ty, cod)
        }
        T::ArrowElim => {
            arity(d, 2)?;
            let Some(Term::App(f, a)) = term_subject(subject) else {
                return Err(Reason::Schema("Γ ⊢ t u : U"));
            };
            let p = typing_premise(d, 0)?;
            let q = typing_premise(d, 1)?;
            same_context(0, p.ctx, ctx)?;
            same_context(1, q.ctx, ctx)?;
            same_subject(0, p.subject, &Subject::Term((**f).clone()))?;
            same_subject(1, q.subject, &Subject::Term((**a).clone()))?;
            let Type::Arrow(dom, cod) = p.ty else {
                return Err(Reason::Mismatch {
                    what: "type of premise 0".into(),
                    expected: format!("_ -> {ty}"),
                    found: p.ty.to_string(),
                });
            };
            same_type("result type", ty, cod)?;
            same_type("type of premise 1", q.ty, dom)
        }
        T::Case => {
            arity(d, 2)?;
            let Some(Term::Case(theta, t)) = term_subject(subject) else {
                return Err(Reason::Schema("Γ ⊢ {|θ|}. t : U⃗ -> T'"));
            };
            let args = witness(&w.args, "args")?;
            let p = typing_premise(d, 0)?;
            let q = typing_premise(d, 1)?;
            same_context(0, p.ctx, ctx)?;
            same_context(1, q.ctx, ctx)?;
            same_subject(0, p.subject, &Subject::Term((**t).clone()))?;
            same_subject(1, q.subject, &Subject::Binding(theta.clone()))?;
            let inner = args.strip_arrows(p.ty).ok_or_else(|| Reason::Mismatch {
                what: "type of premise 0".into(),
                expected: args.arrow(Type::ord("T")).to_string(),
                found: p.ty.to_string(),
            })?;
            let Type::Arrow(dom, cod) = q.ty else {
                return Err(Reason::Mismatch {
                    what: "type of premise 1".into(),
                    expected: format!("{inner} -> _"),
                    found: q.ty.to_string(),
                });
            };
            same_type("domain of premise 1", dom, inner)?;
            same_type("conclusion type", ty, &args.arrow((**cod).clone()))
        }
        T::Cb => {
            let Some(theta) = binding_subject(subject) else {
                return Err(Reason::Schema("Γ ⊢ θ : c U⃗ -> T"));
            };
            let n = theta.len();
            let i0 = *witness(&w.i0, "i0")?;
            if i0 == 0 || i0 > n {
                return Err(Reason::BranchIndex { i0, branches: n });
            }
            let splits = witness(&w.splits, "splits")?;
            if splits.len() != n {
                return Err(Reason::Mismatch {
                    what: "number of splits".into(),
                    expected: n.to_string(),
                    found: splits.len().to_string(),
                });
            }
            arity(d, n)?;
            for (i, ((_, u), (args, result))) in theta.branches().iter().zip(splits).enumerate() {
                let p = typing_premise(d, i)?;
                same_context(i, p.ctx, ctx)?;
                same_subject(i, p.subject, &Subject::Term(u.clone()))?;
                same_type(
                    &format!("type of premise {i}"),
                    p.ty,
                    &args.arrow(result.clone()),
                )?;
            }
            let (c, _) = &theta.branches()[i0 - 1];
            let (args, result) = &splits[i0 - 1];
            let head = args
                .apply(Type::constant(c.clone()))
                .map_err(|e| Reason::NotDataType(e.0.to_string()))?;
            same_type("conclusion type", ty, &Type::arrow(head, result.clone()))
        }
        T::CbBot => {
            let Some(theta) = binding_subject(subject) else {
                return Err(Reason::Schema("Γ ⊢ θ : (∀α.α) -> ∀X.X"));
            };
            arity(d, theta.len())?;
            for (i, (_, u)) in theta.branches().iter().enumerate() {
                let p = typing_premise(d, i)?;
                same_context(i, p.ctx, ctx)?;
                same_subject(i, p.subject, &Subject::Term(u.clone()))?;
            }
            same_type(
                "conclusion type",
                ty,
                &Type::arrow(Type::bottom_data(), Type::bottom()),
            )
        }
        T::Univ => {
            arity(d, 1)?;
            let Type::Forall(v, body) = ty else {
                return Err(Reason::Schema("Γ ⊢ M : ∀ν.T"));
            };
            let var = witness(&w.var, "var")?;
            if var != v {
                return Err(Reason::Mismatch {
                    what: "quantified variable".into(),
                    expected: v.to_string(),
                    found: var.to_string(),
                });
            }
            let p = typing_premise(d, 0)?;
            same_context(0, p.ctx, ctx)?;
            same_subject(0, p.subject, subject)?;
            same_type("type of premise 0", p.ty, body)?;
            if ctx.free_tyvars().contains(v) {
                return Err(Reason::ContextFreshness { var: v.clone() });
            }
            Ok(())
        }
        T::Inter => {
            arity(d, 2)?;
            let Type::Inter(a, b) = ty else {
                return Err(Reason::Schema("Γ ⊢ M : T & U"));
            };
            for (i, part) in [a, b].into_iter().enumerate() {
                let p = typing_premise(d, i)?;
                same_context(i, p.ctx, ctx)?;
                same_subject(i, p.subject, subject)?;
                same_type(&format!("type of premise {i}"), p.ty, part)?;
            }
            Ok(())
        }
        T::Exist => {
            arity(d, 1)?;
            let x = witness(&w.x, "x")?;
            let var = witness(&w.var, "var")?;
            let bound = ctx.get(x).ok_or_else(|| Reason::NotInContext(x.clone()))?;
            let Type::Exists(v, body) = bound else {
                return Err(Reason::Schema("Γ, x : ∃ν.T ⊢ M : U"));
            };
            if var != v {
                return Err(Reason::Mismatch {
                    what: "quantified variable".into(),
                    expected: v.to_string(),
                    found: var.to_string(),
                });
            }
            fresh(v, ty)?;
            let p = typing_premise(d, 0)?;
            same_context(0, p.ctx, &ctx.with(x, (**body).clone()))?;
            same_subject(0, p.subject, subject)?;
            same_type("type of premise 0", p.ty, ty)?;
            if ctx.without(x).free_tyvars().contains(v) {
                warnings.push(format!("{v} occurs free in the rest of the context"));
            }
            Ok(())
        }
        T::Union => {
            arity(d, 2)?;
            let x = witness(&w.x, "x")?;
            let bound = ctx.get(x).ok_or_else(|| Reason::NotInContext(x.clone()))?;
            let Type::Union(a, b) = bound else {
                return Err(Reason::Schema("Γ, x : T1 | T2 ⊢ M : U"));
            };
            for (i, part) in [a, b].into_iter().enumerate() {
                let p = typing_premise(d, i)?;
                same_context(i, p.ctx, &ctx.with(x, (**part).clone()))?;
                same_subject(i, p.subject, subject)?;
                same_type(&format!("type of premise {i}"), p.ty, ty)?;
            }
            Ok(())
        }
        T::Subs => {
            arity(d, 2)?;
            let p = typing_premise(d, 0)?;
            same_context(0, p.ctx, ctx)?;
            same_subject(0, p.subject, subject)?;
            let (lhs, rhs) = subtype_premise(d, 1)?;
            same_type("left side of premise 1", lhs, p.ty)?;
            same_type("right side of premise 1", rhs, ty)
        }
    }
}

fn subtyping(rule: S, d: &Derivation, lhs: &Type, rhs: &Type) -> Local {
    use Type as Ty;
    let w = &d.witnesses;
    let check_rhs = |expected: Type| same_type("right side", rhs, &expected);
    let premise = |i: usize, l: &Type, r: &Type| -> Local {
        let (a, b) = subtype_premise(d, i)?;
        same_type(&format!("left side of premise {i}"), a, l)?;
        same_type(&format!("right side of premise {i}"), b, r)
    };
    let arity_for = |r: S| match r {
        S::Trans | S::Arrow | S::App | S::UnionElim | S::InterIntro => 2,
        S::ForallIntro | S::ExistsElim => 1,
        _ => 0,
    };
    arity(d, arity_for(rule))?;
    match rule {
        S::Refl => check_rhs(lhs.clone()),
        S::Trans => {
            let (a, b) = subtype_premise(d, 0)?;
            let (c, e) = subtype_premise(d, 1)?;
            same_type("left side of premise 0", a, lhs)?;
            same_type("right side of premise 1", e, rhs)?;
            same_type("left side of premise 1", c, b)
        }
        S::Arrow => {
            let (Ty::Arrow(t, u), Ty::Arrow(t2, u2)) = (lhs, rhs) else {
                return Err(Reason::Schema("T -> U <= T' -> U'"));
            };
            premise(0, t2, t)?;
            premise(1, u, u2)
        }
        S::App => {
            let (Ty::App(dd, t), Ty::App(dd2, t2)) = (lhs, rhs) else {
                return Err(Reason::Schema("D T <= D' T'"));
            };
            premise(0, dd, dd2)?;
            premise(1, t, t2)
        }
        S::UnionIntroL | S::UnionIntroR => {
            let Ty::Union(a, b) = rhs else {
                return Err(Reason::Schema("U1 <= U1 | U2"));
            };
            let part = if rule == S::UnionIntroL { a } else { b };
            same_type("left side", lhs, part)
        }
        S::UnionElim => {
            let Ty::Union(a, b) = lhs else {
                return Err(Reason::Schema("T1 | T2 <= U"));
            };
            premise(0, a, rhs)?;
            premise(1, b, rhs)
        }
        S::InterIntro => {
            let Ty::Inter(a, b) = rhs else {
                return Err(Reason::Schema("T <= U1 & U2"));
            };
            premise(0, lhs, a)?;
            premise(1, lhs, b)
        }
        S::InterElimL | S::InterElimR => {
            let Ty::Inter(a, b) = lhs else {
                return Err(Reason::Schema("U1 & U2 <= U1"));
            };
            check_rhs(if rule == S::InterElimL {
                (**a).clone()
            } else {
                (**b).clone()
            })
        }
        S::ForallIntro => {
            let Ty::Forall(v, u) = rhs else {
                return Err(Reason::Schema("T <= ∀ν.U"));
            };
            fresh(v, lhs)?;
            premise(0, lhs, u)
        }
        S::ForallElim | S::ForallElimD => {
            let data = rule == S::ForallElimD;
            let Ty::Forall(v, body) = lhs else {
                return Err(Reason::Schema("∀ν.T <= T{ν <- U}"));
            };
            if v.is_data() != data {
                return Err(Reason::Schema(if data {
                    "∀α.T <= T{α <- D}"
                } else {
                    "∀X.T <= T{X <- U}"
                }));
            }
            let inst = witness(&w.inst, "inst")?;
            if data && !inst.is_data_type() {
                return Err(Reason::NotDataType(inst.to_string()));
            }
            let expected = type_substitute(body, v, inst).map_err(Reason::DataSubstitution)?;
            check_rhs(expected)
        }
        S::ExistsIntro | S::ExistsIntroD => {
            let data = rule == S::ExistsIntroD;
            let Ty::Exists(v, body) = rhs else {
                return Err(Reason::Schema("T{ν <- U} <= ∃ν.T"));
            };
            if v.is_data() != data {
                return Err(Reason::Schema(if data {
                    "T{α <- D} <= ∃α.T"
                } else {
                    "T{X <- U} <= ∃X.T"
                }));
            }
            let inst = witness(&w.inst, "inst")?;
            if data && !inst.is_data_type() {
                return Err(Reason::NotDataType(inst.to_string()));
            }
            let expected = type_substitute(body, v, inst).map_err(Reason::DataSubstitution)?;
            same_type("left side", lhs, &expected)
        }
        S::ExistsElim => {
            let Ty::Exists(v, u) = lhs else {
                return Err(Reason::Schema("∃ν.U <= T"));
            };
            fresh(v, rhs)?;
            premise(0, u, rhs)
        }
        S::Data => {
            if !lhs.is_data_type() {
                return Err(Reason::NotDataType(lhs.to_string()));
            }
            let Ty::Arrow(t, _) = rhs else {
                return Err(Reason::Schema("D <= T -> D T"));
            };
            check_rhs(Ty::arrow(
                (**t).clone(),
                Ty::app(lhs.clone(), (**t).clone()),
            ))
        }
        S::Constr => {
            let Ty::Inter(a, b) = lhs else {
                return Err(Reason::Schema("c1 T⃗ & c2 U⃗ <= ∀α.α"));
            };
            let (Ty::Const(c1), Ty::Const(c2)) = (a.app_spine().0, b.app_spine().0) else {
                return Err(Reason::Schema("c1 T⃗ & c2 U⃗ <= ∀α.α"));
            };
            if c1 == c2 {
                return Err(Reason::SameConstructor(c1.clone()));
            }
            check_rhs(Ty::bottom_data())
        }
        S::AppInter => {
            let Ty::Inter(a, b) = lhs else {
                return Err(Reason::Schema("D1 T1 & D2 T2 <= (D1 & D2) (T1 & T2)"));
            };
            let (Ty::App(d1, t1), Ty::App(d2, t2)) = (&**a, &**b) else {
                return Err(Reason::Schema("D1 T1 & D2 T2 <= (D1 & D2) (T1 & T2)"));
            };
            check_rhs(Ty::app(
                Ty::inter((**d1).clone(), (**d2).clone()),
                Ty::inter((**t1).clone(), (**t2).clone()),
            ))
        }
        S::AppForall => {
            let Ty::Forall(v, body) = lhs else {
                return Err(Reason::Schema("∀ν.(D T) <= (∀ν.D) (∀ν.T)"));
            };
            let Ty::App(dd, t) = &**body else {
                return Err(Reason::Schema("∀ν.(D T) <= (∀ν.D) (∀ν.T)"));
            };
            check_rhs(Ty::app(
                Ty::forall(v.clone(), (**dd).clone()),
                Ty::forall(v.clone(), (**t).clone()),
            ))
        }
        S::ArrowInter | S::ArrowUnion => {
            let schema = if rule == S::ArrowInter {
                "(T1 -> U1) & (T2 -> U2) <= (T1 & T2) -> (U1 & U2)"
            } else {
                "(T1 -> U1) & (T2 -> U2) <= (T1 | T2) -> (U1 | U2)"
            };
            let Ty::Inter(a, b) = lhs else {
                return Err(Reason::Schema(schema));
            };
            let (Ty::Arrow(t1, u1), Ty::Arrow(t2, u2)) = (&**a, &**b) else {
                return Err(Reason::Schema(schema));
            };
            let join = if rule == S::ArrowInter {
                Ty::inter
            } else {
                Ty::union
            };
            check_rhs(Ty::arrow(
                join((**t1).clone(), (**t2).clone()),
                join((**u1).clone(), (**u2).clone()),
            ))
        }
        S::ArrowForall | S::ArrowExists => {
            let schema = if rule == S::ArrowForall {
                "∀ν.(T -> U) <= (∀ν.T) -> (∀ν.U)"
            } else {
                "∀ν.(T -> U) <= (∃ν.T) -> (∃ν.U)"
            };
            let Ty::Forall(v, body) = lhs else {
                return Err(Reason::Schema(schema));
            };
            let Ty::Arrow(t, u) = &**body else {
                return Err(Reason::Schema(schema));
            };
            let q = if rule == S::ArrowForall {
                Ty::forall
            } else {
                Ty::exists
            };
            check_rhs(Ty::arrow(
                q(v.clone(), (**t).clone()),
                q(v.clone(), (**u).clone()),
            ))
        }
        S::UnionAppR => {
            let Ty::App(dd, arg) = lhs else {
                return Err(Reason::Schema("D (T1 | T2) <= D T1 | D T2"));
            };
            let Ty::Union(t1, t2) = &**arg else {
                return Err(Reason::Schema("D (T1 | T2) <= D T1 | D T2"));
            };
            check_rhs(Ty::union(
                Ty::app((**dd).clone(), (**t1).clone()),
                Ty::app((**dd).clone(), (**t2).clone()),
            ))
        }
        S::UnionAppL => {
            let Ty::App(head, t) = lhs else {
                return Err(Reason::Schema("(D1 | D2) T <= D1 T | D2 T"));
            };
            let Ty::Union(d1, d2) = &**head else {
                return Err(Reason::Schema("(D1 | D2) T <= D1 T | D2 T"));
            };
            check_rhs(Ty::union(
                Ty::app((**d1).clone(), (**t).clone()),
                Ty::app((**d2).clone(), (**t).clone()),
            ))
        }
        S::ExistsAppR => {
            let Ty::App(dd, arg) = lhs else {
                return Err(Reason::Schema("D (∃ν.T) <= ∃ν.(D T)"));
            };
            let Ty::Exists(v, t) = &**arg else {
                return Err(Reason::Schema("D (∃ν.T) <= ∃ν.(D T)"));
            };
            fresh(v, dd)?;
            check_rhs(Ty::exists(
                v.clone(),
                Ty::app((**dd).clone(), (**t).clone()),
            ))
        }
        S::ExistsAppL => {
            let Ty::App(head, t) = lhs else {
                return Err(Reason::Schema("(∃ν.D) T <= ∃ν.(D T)"));
            };
            let Ty::Exists(v, dd) = &**head else {
                return Err(Reason::Schema("(∃ν.D) T <= ∃ν.(D T)"));
            };
            fresh(v, t)?;
            check_rhs(Ty::exists(
                v.clone(),
                Ty::app((**dd).clone(), (**t).clone()),
            ))
        }
        S::UnionForall => {
            let Ty::Forall(v, body) = lhs else {
                return Err(Reason::Schema("∀ν.(T | U) <= (∀ν.T) | U"));
            };
            let Ty::Union(t, u) = &**body else {
                return Err(Reason::Schema("∀ν.(T | U) <= (∀ν.T) | U"));
            };
            fresh(v, u)?;
            check_rhs(Ty::union(
                Ty::forall(v.clone(), (**t).clone()),
                (**u).clone(),
            ))
        }
        S::ExistsInter => {
            let Ty::Inter(a, u) = lhs else {
                return Err(Reason::Schema("(∃ν.T) & U <= ∃ν.(T & U)"));
            };
            let Ty::Exists(v, t) = &**a else {
                return Err(Reason::Schema("(∃ν.T) & U <= ∃ν.(T & U)"));
            };
            fresh(v, u)?;
            check_rhs(Ty::exists(
                v.clone(),
                Ty::inter((**t).clone(), (**u).clone()),
            ))
        }
    }
}

impl fmt::Display for Checked {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "accepted: {}", self.judgment)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_script;

    fn accepts(src: &str) {
        let d = parse_script(src).unwrap();
        if let Err(e) = check(&d) {
            panic!("{e}\n{src}");
        }
    }

    fn rejects(src: &str) -> Rejection {
        check(&parse_script(src).unwrap()).unwrap_err()
    }

    #[test]
    fn data_axiom() {
        accepts("(data [Tab $T1 <= $T3 -> Tab $T1 $T3])");
        let r = rejects("(data [$X <= $T -> $T])");
        assert!(matches!(r.reason, Reason::NotDataType(_)));
    }

    #[test]
    fn constr_axiom() {
        accepts("(constr [C & D <= forall @a. @a])");
        accepts("(constr [C $X & D <= forall @b. @b])");
        let r = rejects("(constr [C & C <= forall @a. @a])");
        assert_eq!(r.reason, Reason::SameConstructor("C".into()));
        assert!(r.path.is_root());
    }

    #[test]
    fn forall_intro_freshness() {
        accepts("(forall-intro [C <= forall $X. C] (refl [C <= C]))");
        let r = rejects("(forall-intro [$X <= forall $X. $X] (refl [$X <= $X]))");
        assert!(matches!(r.reason, Reason::Freshness { .. }));
        assert!(r.reason.to_string().contains("∉ tv($X)"));
    }

    #[test]
    fn forall_elim_needs_witness() {
        accepts("(forall-elim [forall $X. $X <= C] inst={C})");
        let r = rejects("(forall-elim [forall $X. $X <= C])");
        assert_eq!(r.reason, Reason::MissingWitness("inst"));
        let r = rejects("(forall-elim-d [forall @a. @a <= C -> C] inst={C -> C})");
        assert!(matches!(r.reason, Reason::NotDataType(_)));
    }

    #[test]
    fn both_cb_typings() {
        let base = "(init [u : $T -> $U |- u : $T -> $U])";
        accepts(&format!(
            "(cb [u : $T -> $U |- {{| C -> u |}} : C -> $T -> $U] i0=1 splits={{=> $T -> $U}} {base})"
        ));
        accepts(&format!(
            "(cb [u : $T -> $U |- {{| C -> u |}} : C $T -> $U] i0=1 splits={{$T => $U}} {base})"
        ));
        let r = rejects(&format!(
            "(cb [u : $T -> $U |- {{| C -> u |}} : C $T -> $U] i0=2 splits={{$T => $U}} {base})"
        ));
        assert_eq!(r.reason, Reason::BranchIndex { i0: 2, branches: 1 });
    }

    #[test]
    fn rejection_path_points_at_premise() {
        let r = rejects(
            "(trans [C & D <= D]\n  (refl [C & D <= C & D])\n  (inter-elim-l [C & D <= D]))",
        );
        assert_eq!(r.path, Path::from_steps(vec![1]));
        assert_eq!(r.rule, "inter-elim-l");
    }

    #[test]
    fn exist_side_conditions() {
        let d = parse_script(
            "(exist [y : $X, x : exists $X. C |- x : C] var=$X x=x \
               (init [y : $X, x : C |- x : C]))",
        )
        .unwrap();
        let ok = check(&d).unwrap();
        assert_eq!(ok.warnings.len(), 1, "{:?}", ok.warnings);
        let bad = parse_script(
            "(exist [y : $X, x : exists $X. $X |- y : $X] var=$X x=x \
               (init [y : $X, x : $X |- y : $X]))",
        )
        .unwrap();
        assert!(matches!(
            check(&bad).unwrap_err().reason,
            Reason::Freshness { .. }
        ));
    }

    #[test]
    fn distributivity_axioms() {
        for src in [
            "(app-inter [C $X & D $Y <= (C & D) ($X & $Y)])",
            "(app-forall [forall $X. C $X <= (forall $X. C) (forall $X. $X)])",
            "(arrow-inter [($A -> $B) & ($C -> $D) <= $A & $C -> $B & $D])",
            "(arrow-forall [forall $X. $X -> $X <= (forall $X. $X) -> forall $X. $X])",
            "(arrow-union [($A -> $B) & ($C -> $D) <= $A | $C -> $B | $D])",
            "(arrow-exists [forall $X. $X -> C <= (exists $X. $X) -> exists $X. C])",
            "(union-app-r [C ($A | $B) <= C $A | C $B])",
            "(union-app-l [(C | D) $A <= C $A | D $A])",
            "(exists-app-r [C (exists $X. $X) <= exists $X. C $X])",
            "(exists-app-l [(exists @a. @a) $T <= exists @a. @a $T])",
            "(union-forall [forall $X. $X | C <= (forall $X. $X) | C])",
            "(exists-inter [(exists $X. $X) & C <= exists $X. $X & C])",
        ] {
            accepts(src);
        }
        let r = rejects("(exists-app-l [(exists $T. C) $T <= exists $T. C $T])");
        assert!(matches!(r.reason, Reason::Freshness { .. }));
    }
}
