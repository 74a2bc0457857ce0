use super::lexer::{lex, Pos, Tok, Token};
use super::ParseError;
use crate::derive::{Context, Judgment, Subject};
use crate::syntax::{Binding, Term};
use crate::types::{TyVar, Type, TypeVector};

pub(crate) struct Parser {
    toks: Vec<Token>,
    i: usize,
}

const TERM_START: &[&str] = &["identifier", "constructor", "`!`", "`(`", "`\\`", "`{|`"];
const TYPE_START: &[&str] = &[
    "type variable",
    "data type variable",
    "type constant",
    "`(`",
    "`forall`",
    "`exists`",
];

impl Parser {
    pub(crate) fn new(src: &str, start: Pos) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src, start)?,
            i: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.i + 1).min(self.toks.len() - 1)].tok
    }

    pub(crate) fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].tok.clone();
        if t != Tok::Eof {
            self.i += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            found: self.peek().to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&tok.to_string()]))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    fn lower(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Lower(x) => {
                self.bump();
                Ok(x)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    // ---- terms ----

    pub(crate) fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Backslash => self.lambda(),
            Tok::CaseOpen => {
                let theta = self.binding()?;
                self.expect(Tok::Dot)?;
                Ok(Term::case(theta, self.term()?))
            }
            _ => self.application(),
        }
    }

    fn lambda(&mut self) -> Result<Term, ParseError> {
        self.expect(Tok::Backslash)?;
        let mut vars = vec![self.lower()?];
        while let Tok::Lower(x) = self.peek().clone() {
            self.bump();
            vars.push(x);
        }
        self.expect(Tok::Dot)?;
        let body = self.term()?;
        Ok(vars.into_iter().rev().fold(body, |b, x| Term::lam(x, b)))
    }

    pub(crate) fn binding(&mut self) -> Result<Binding, ParseError> {
        let open = self.pos();
        self.expect(Tok::CaseOpen)?;
        let mut branches = Vec::new();
        if !self.eat(&Tok::CaseClose) {
            loop {
                let c = match self.peek().clone() {
                    Tok::Upper(c) => {
                        self.bump();
                        c
                    }
                    _ => return Err(self.error(&["constructor"])),
                };
                self.expect(Tok::Arrow)?;
                branches.push((c, self.term()?));
                if self.eat(&Tok::Semi) {
                    continue;
                }
                if self.eat(&Tok::CaseClose) {
                    break;
                }
                return Err(self.error(&["`;`", "`|}`"]));
            }
        }
        Binding::new(branches).map_err(|e| ParseError::DuplicateBranch {
            pos: open,
            name: e.0,
        })
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Lower(_) | Tok::Upper(_) | Tok::Bang | Tok::LParen
        )
    }

    fn application(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        loop {
            if self.starts_atom() {
                let a = self.atom()?;
                t = Term::app(t, a);
            } else if matches!(self.peek(), Tok::Backslash | Tok::CaseOpen) {
                let a = self.term()?;
                return Ok(Term::app(t, a));
            } else {
                return Ok(t);
            }
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Lower(x) => {
                self.bump();
                Ok(Term::Var(x))
            }
            Tok::Upper(c) => {
                self.bump();
                Ok(Term::Constr(c))
            }
            Tok::Bang => {
                self.bump();
                Ok(Term::Daimon)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.error(TERM_START)),
        }
    }

    // ---- types ----

    pub(crate) fn ty(&mut self) -> Result<Type, ParseError> {
        match self.peek() {
            Tok::Lower(k) if k == "forall" || k == "exists" => {
                let forall = k == "forall";
                self.bump();
                let mut vars = vec![self.tyvar()?];
                while matches!(self.peek(), Tok::OrdTv(_) | Tok::DataTv(_)) {
                    vars.push(self.tyvar()?);
                }
                self.expect(Tok::Dot)?;
                let body = self.ty()?;
                Ok(vars.into_iter().rev().fold(body, |b, v| {
                    if forall {
                        Type::forall(v, b)
                    } else {
                        Type::exists(v, b)
                    }
                }))
            }
            _ => {
                let lhs = self.union_ty()?;
                if self.eat(&Tok::Arrow) {
                    Ok(Type::arrow(lhs, self.ty()?))
                } else {
                    Ok(lhs)
                }
            }
        }
    }

    pub(crate) fn tyvar(&mut self) -> Result<TyVar, ParseError> {
        match self.bump() {
            Tok::OrdTv(n) => Ok(TyVar::Ord(n)),
            Tok::DataTv(n) => Ok(TyVar::Data(n)),
            _ => {
                self.i -= 1;
                Err(self.error(&["type variable", "data type variable"]))
            }
        }
    }

    fn union_ty(&mut self) -> Result<Type, ParseError> {
        let mut t = self.inter_ty()?;
        while self.eat(&Tok::Bar) {
            t = Type::union(t, self.inter_ty()?);
        }
        Ok(t)
    }

    fn inter_ty(&mut self) -> Result<Type, ParseError> {
        let mut t = self.app_ty()?;
        while self.eat(&Tok::Amp) {
            t = Type::inter(t, self.app_ty()?);
        }
        Ok(t)
    }

    fn app_ty(&mut self) -> Result<Type, ParseError> {
        let head_pos = self.pos();
        let mut t = self.atom_ty()?;
        while matches!(
            self.peek(),
            Tok::OrdTv(_) | Tok::DataTv(_) | Tok::Upper(_) | Tok::LParen
        ) {
            if !t.is_data_type() {
                return Err(ParseError::IllFormed {
                    pos: head_pos,
                    head: t.to_string(),
                });
            }
            let arg = self.atom_ty()?;
            t = Type::app(t, arg);
        }
        Ok(t)
    }

    fn atom_ty(&mut self) -> Result<Type, ParseError> {
        match self.peek().clone() {
            Tok::OrdTv(n) => {
                self.bump();
                Ok(Type::OrdVar(n))
            }
            Tok::DataTv(n) => {
                self.bump();
                Ok(Type::DataVar(n))
            }
            Tok::Upper(c) => {
                self.bump();
                Ok(Type::Const(c))
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.error(TYPE_START)),
        }
    }

    /// Comma-separated, possibly empty, list of types.
    pub(crate) fn type_list(&mut self) -> Result<TypeVector, ParseError> {
        let mut out = Vec::new();
        if matches!(self.peek(), Tok::Eof | Tok::FatArrow | Tok::Semi) {
            return Ok(TypeVector::new(out));
        }
        loop {
            out.push(self.ty()?);
            if !self.eat(&Tok::Comma) {
                return Ok(TypeVector::new(out));
            }
        }
    }

    /// `T1, T2 => U ; => V ; ...`
    pub(crate) fn splits(&mut self) -> Result<Vec<(TypeVector, Type)>, ParseError> {
        let mut out = Vec::new();
        if *self.peek() == Tok::Eof {
            return Ok(out);
        }
        loop {
            let args = self.type_list()?;
            self.expect(Tok::FatArrow)?;
            out.push((args, self.ty()?));
            if !self.eat(&Tok::Semi) {
                return Ok(out);
            }
        }
    }

    // ---- judgments ----

    pub(crate) fn judgment(&mut self) -> Result<Judgment, ParseError> {
        let typing = matches!(self.peek(), Tok::Turnstile)
            || (matches!(self.peek(), Tok::Lower(k) if k != "forall" && k != "exists")
                && *self.peek2() == Tok::Colon);
        if !typing {
            let lhs = self.ty()?;
            self.expect(Tok::Le)?;
            return Ok(Judgment::Subtype(lhs, self.ty()?));
        }
        let ctx_pos = self.pos();
        let mut entries = Vec::new();
        if !self.eat(&Tok::Turnstile) {
            loop {
                let x = self.lower()?;
                self.expect(Tok::Colon)?;
                entries.push((x, self.ty()?));
                if self.eat(&Tok::Turnstile) {
                    break;
                }
                if !self.eat(&Tok::Comma) {
                    return Err(self.error(&["`,`", "`|-`"]));
                }
            }
        }
        let ctx = Context::new(entries).map_err(|e| ParseError::DuplicateEntry {
            pos: ctx_pos,
            name: e.0,
        })?;
        let subject = self.subject()?;
        self.expect(Tok::Colon)?;
        let ty = self.ty()?;
        Ok(Judgment::Typing { ctx, subject, ty })
    }

    fn subject(&mut self) -> Result<Subject, ParseError> {
        if *self.peek() == Tok::CaseOpen {
            let theta = self.binding()?;
            if self.eat(&Tok::Dot) {
                return Ok(Subject::Term(Term::case(theta, self.term()?)));
            }
            return Ok(Subject::Binding(theta));
        }
        Ok(Subject::Term(self.term()?))
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    parse_with(src, Pos::START, Parser::term)
}

pub fn parse_binding(src: &str) -> Result<Binding, ParseError> {
    parse_with(src, Pos::START, Parser::binding)
}

pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    parse_with(src, Pos::START, Parser::ty)
}

pub fn parse_judgment(src: &str) -> Result<Judgment, ParseError> {
    parse_with(src, Pos::START, Parser::judgment)
}

pub(crate) fn parse_with<T>(
    src: &str,
    start: Pos,
    f: impl FnOnce(&mut Parser) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut p = Parser::new(src, start)?;
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}
