use std::fmt;

use super::ParseError;

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub const START: Pos = Pos { line: 1, col: 1 };

    /// Position reached after reading `text` from `self`.
    pub fn advance(mut self, text: &str) -> Pos {
        for ch in text.chars() {
            if ch == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        self
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Lower(String),
    Upper(String),
    OrdTv(String),
    DataTv(String),
    Backslash,
    Dot,
    LParen,
    RParen,
    CaseOpen,
    CaseClose,
    Arrow,
    FatArrow,
    Semi,
    Bang,
    Amp,
    Bar,
    Le,
    Turnstile,
    Colon,
    Comma,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Lower(s) => write!(f, "identifier `{s}`"),
            Tok::Upper(s) => write!(f, "constructor `{s}`"),
            Tok::OrdTv(s) => write!(f, "type variable `${s}`"),
            Tok::DataTv(s) => write!(f, "data type variable `@{s}`"),
            Tok::Backslash => f.write_str("`\\`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::CaseOpen => f.write_str("`{|`"),
            Tok::CaseClose => f.write_str("`|}`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::FatArrow => f.write_str("`=>`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Le => f.write_str("`<=`"),
            Tok::Turnstile => f.write_str("`|-`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Tokenizes `src`, reporting positions relative to `start`.
pub fn lex(src: &str, start: Pos) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut pos = start;
    let mut i = 0;
    let ident = |i: &mut usize| {
        let begin = *i;
        while *i < chars.len() && ident_char(chars[*i]) {
            *i += 1;
        }
        chars[begin..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let here = pos;
        let begin = i;
        let tok = match (c, next) {
            (c, _) if c.is_whitespace() => {
                i += 1;
                None
            }
            ('-', Some('-')) => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                None
            }
            ('-', Some('>')) => {
                i += 2;
                Some(Tok::Arrow)
            }
            ('=', Some('>')) => {
                i += 2;
                Some(Tok::FatArrow)
            }
            ('{', Some('|')) => {
                i += 2;
                Some(Tok::CaseOpen)
            }
            ('|', Some('}')) => {
                i += 2;
                Some(Tok::CaseClose)
            }
            ('|', Some('-')) => {
                i += 2;
                Some(Tok::Turnstile)
            }
            ('<', Some('=')) => {
                i += 2;
                Some(Tok::Le)
            }
            ('$' | '@', Some(n)) if n.is_ascii_alphabetic() => {
                i += 1;
                let name = ident(&mut i);
                Some(if c == '$' {
                    Tok::OrdTv(name)
                } else {
                    Tok::DataTv(name)
                })
            }
            (c, _) if c.is_ascii_uppercase() => Some(Tok::Upper(ident(&mut i))),
            (c, _) if c.is_ascii_lowercase() || c == '_' => Some(Tok::Lower(ident(&mut i))),
            _ => {
                i += 1;
                Some(match c {
                    '\\' => Tok::Backslash,
                    '.' => Tok::Dot,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ';' => Tok::Semi,
                    '!' => Tok::Bang,
                    '&' => Tok::Amp,
                    '|' => Tok::Bar,
                    ':' => Tok::Colon,
                    ',' => Tok::Comma,
                    _ => return Err(ParseError::Lex { pos: here, ch: c }),
                })
            }
        };
        pos = pos.advance(&chars[begin..i].iter().collect::<String>());
        if let Some(tok) = tok {
            out.push(Token { tok, pos: here });
        }
    }
    out.push(Token { tok: Tok::Eof, pos });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s, Pos::START)
            .unwrap()
            .into_iter()
            .map(|t| t.tok)
            .collect()
    }

    #[test]
    fn case_delimiters() {
        assert_eq!(
            toks("{||}. !"),
            vec![Tok::CaseOpen, Tok::CaseClose, Tok::Dot, Tok::Bang, Tok::Eof]
        );
    }

    #[test]
    fn comments_and_positions() {
        let ts = lex("-- hi\n  x' -> $T1", Pos::START).unwrap();
        assert_eq!(ts[0].tok, Tok::Lower("x'".into()));
        assert_eq!(ts[0].pos, Pos { line: 2, col: 3 });
        assert_eq!(ts[1].tok, Tok::Arrow);
        assert_eq!(ts[2].tok, Tok::OrdTv("T1".into()));
        assert_eq!(ts[2].pos, Pos { line: 2, col: 9 });
    }

    #[test]
    fn bad_character() {
        assert!(matches!(
            lex("x # y", Pos::START),
            Err(ParseError::Lex { ch: '#', .. })
        ));
    }
}
