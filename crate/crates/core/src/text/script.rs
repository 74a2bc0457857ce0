//! Derivation scripts: `(rule [judgment] key=value ... premise ...)`.
//!
//! Witness values are either bare tokens (`i0=2`, `var=$X`, `x=y`) or
//! braced: `inst={T}`, `args={T1, T2}`, `splits={T1 => U ; => V}`.

use std::fmt::Write as _;

use super::lexer::Pos;
use super::parse::{parse_with, Parser};
use super::ParseError;
use crate::derive::{Derivation, Rule, Witnesses};
use crate::types::TypeVector;

struct Scanner<'a> {
    src: &'a str,
    at: usize,
    pos: Pos,
}

impl<'a> Scanner<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.at..]
    }

    fn advance(&mut self, n: usize) -> &'a str {
        let s = &self.src[self.at..self.at + n];
        self.pos = self.pos.advance(s);
        self.at += n;
        s
    }

    fn skip_ws(&mut self) {
        loop {
            let rest = self.rest();
            let trimmed = rest.trim_start();
            self.advance(rest.len() - trimmed.len());
            if trimmed.starts_with("--") {
                let n = trimmed.find('\n').unwrap_or(trimmed.len());
                self.advance(n);
            } else {
                return;
            }
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Script {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.advance(c.len_utf8());
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> &'a str {
        let n = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || "-_'$@".contains(c)))
            .unwrap_or(self.rest().len());
        self.advance(n)
    }

    /// Text up to (not including) `close`, consuming the delimiter.
    fn until(&mut self, close: char) -> Result<(&'a str, Pos), ParseError> {
        let start = self.pos;
        match self.rest().find(close) {
            Some(n) => {
                let s = self.advance(n);
                self.advance(close.len_utf8());
                Ok((s, start))
            }
            None => Err(self.error(format!("unterminated, expected `{close}`"))),
        }
    }

    fn node(&mut self) -> Result<Derivation, ParseError> {
        self.expect('(')?;
        self.skip_ws();
        let rule_pos = self.pos;
        let name = self.word();
        self.expect('[')?;
        let (text, start) = self.until(']')?;
        let conclusion = parse_with(text, start, Parser::judgment)?;
        let rule = Rule::from_name(name, conclusion.is_typing()).ok_or_else(|| {
            let kind = if conclusion.is_typing() {
                "typing"
            } else {
                "sub-typing"
            };
            ParseError::Script {
                pos: rule_pos,
                message: format!("unknown {kind} rule `{name}`"),
            }
        })?;
        let mut witnesses = Witnesses::default();
        let mut premises = Vec::new();
        loop {
            self.skip_ws();
            if self.rest().starts_with(')') {
                self.advance(1);
                break;
            }
            if self.rest().starts_with('(') {
                premises.push(self.node()?);
                continue;
            }
            if self.rest().is_empty() {
                return Err(self.error("unterminated node, expected `)`"));
            }
            self.witness(&mut witnesses)?;
        }
        Ok(Derivation {
            rule,
            conclusion,
            witnesses,
            premises,
        })
    }

    fn witness(&mut self, w: &mut Witnesses) -> Result<(), ParseError> {
        let key_pos = self.pos;
        let key = self.word();
        if key.is_empty() {
            return Err(self.error("expected witness `key=value`, premise or `)`"));
        }
        self.expect('=')?;
        let (text, start) = if self.rest().starts_with('{') {
            self.advance(1);
            self.until('}')?
        } else {
            let start = self.pos;
            (self.word(), start)
        };
        let duplicate = match key {
            "inst" => w
                .inst
                .replace(parse_with(text, start, Parser::ty)?)
                .is_some(),
            "args" => w
                .args
                .replace(parse_with(text, start, Parser::type_list)?)
                .is_some(),
            "splits" => w
                .splits
                .replace(parse_with(text, start, Parser::splits)?)
                .is_some(),
            "var" => w
                .var
                .replace(parse_with(text, start, Parser::tyvar)?)
                .is_some(),
            "x" => w.x.replace(text.to_string()).is_some(),
            "i0" => {
                let n = text.parse::<usize>().map_err(|_| ParseError::Script {
                    pos: start,
                    message: format!("`i0` expects a positive integer, found `{text}`"),
                })?;
                w.i0.replace(n).is_some()
            }
            _ => {
                return Err(ParseError::Script {
                    pos: key_pos,
                    message: format!("unknown witness `{key}`"),
                })
            }
        };
        if duplicate {
            return Err(ParseError::Script {
                pos: key_pos,
                message: format!("witness `{key}` given twice"),
            });
        }
        Ok(())
    }
}

pub fn parse_script(src: &str) -> Result<Derivation, ParseError> {
    let mut s = Scanner {
        src,
        at: 0,
        pos: Pos::START,
    };
    let d = s.node()?;
    s.skip_ws();
    if !s.rest().is_empty() {
        return Err(s.error("trailing input after derivation"));
    }
    Ok(d)
}

fn vector(v: &TypeVector) -> String {
    v.0.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Indented script text that parses back to the same derivation.
pub fn print_script(d: &Derivation) -> String {
    let mut out = String::new();
    print_node(d, 0, &mut out);
    out.push('\n');
    out
}

fn print_node(d: &Derivation, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let _ = write!(out, "{pad}({} [{}]", d.rule.name(), d.conclusion);
    let w = &d.witnesses;
    if let Some(t) = &w.inst {
        let _ = write!(out, " inst={{{t}}}");
    }
    if let Some(v) = &w.args {
        let _ = write!(out, " args={{{}}}", vector(v));
    }
    if let Some(i) = w.i0 {
        let _ = write!(out, " i0={i}");
    }
    if let Some(splits) = &w.splits {
        let parts: Vec<String> = splits
            .iter()
            .map(|(v, t)| {
                if v.is_empty() {
                    format!("=> {t}")
                } else {
                    format!("{} => {t}", vector(v))
                }
            })
            .collect();
        let _ = write!(out, " splits={{{}}}", parts.join(" ; "));
    }
    if let Some(v) = &w.var {
        let _ = write!(out, " var={v}");
    }
    if let Some(x) = &w.x {
        let _ = write!(out, " x={x}");
    }
    for p in &d.premises {
        out.push('\n');
        print_node(p, indent + 1, out);
    }
    out.push(')');
}
