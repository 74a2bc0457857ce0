//! Concrete syntax.
//!
//! Terms: `x`, `C`, `!`, `\x y. t`, `t u`, `{| C -> u ; D -> v |}. t`.
//! Types: `$X`, `@a`, `C`, `D T`, `T & U`, `T | U`, `T -> U`,
//! `forall $X @a. T`, `exists $X. T`.
//! Judgments: `T <= U` and `x : T, y : U |- subject : T`.
//! `--` starts a line comment everywhere.

mod lexer;
mod parse;
mod print;
mod script;

use thiserror::Error;

pub use lexer::Pos;
pub use parse::{parse_binding, parse_judgment, parse_term, parse_type};
pub use script::{parse_script, print_script};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: unexpected character `{ch}`")]
    Lex { pos: Pos, ch: char },
    #[error("{pos}: unexpected {found}; expected {}", .expected.join(" or "))]
    Syntax {
        pos: Pos,
        found: String,
        expected: Vec<String>,
    },
    #[error("{pos}: ill-formed type application: head `{head}` is not a data type")]
    IllFormed { pos: Pos, head: String },
    #[error("{pos}: duplicate branch for constructor `{name}`")]
    DuplicateBranch { pos: Pos, name: String },
    #[error("{pos}: variable `{name}` bound twice in context")]
    DuplicateEntry { pos: Pos, name: String },
    #[error("{pos}: {message}")]
    Script { pos: Pos, message: String },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Lex { pos, .. }
            | ParseError::Syntax { pos, .. }
            | ParseError::IllFormed { pos, .. }
            | ParseError::DuplicateBranch { pos, .. }
            | ParseError::DuplicateEntry { pos, .. }
            | ParseError::Script { pos, .. } => *pos,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derive::{Judgment, Subject};
    use crate::syntax::{alpha_eq, Binding, Term};
    use crate::types::{type_alpha_eq, TyVar, Type};

    #[test]
    fn pred_term() {
        let t = parse_term(r"\x. {| Zero -> Zero ; S -> \z. z |}. x").unwrap();
        let theta = Binding::new(vec![
            ("Zero".into(), Term::constr("Zero")),
            ("S".into(), Term::lam("z", Term::var("z"))),
        ])
        .unwrap();
        assert_eq!(t, Term::lam("x", Term::case(theta, Term::var("x"))));
    }

    #[test]
    fn empty_case_on_daimon() {
        assert_eq!(
            parse_term("{| |}. !").unwrap(),
            Term::case(Binding::empty(), Term::Daimon)
        );
        assert_eq!(
            parse_term("{||}.!").unwrap(),
            Term::case(Binding::empty(), Term::Daimon)
        );
    }

    #[test]
    fn delta_delta() {
        let d = Term::lam("x", Term::app(Term::var("x"), Term::var("x")));
        assert_eq!(
            parse_term(r"(\x. x x) (\x. x x)").unwrap(),
            Term::app(d.clone(), d)
        );
    }

    #[test]
    fn application_is_left_associative_and_lambda_extends_right() {
        let t = parse_term(r"f a \x. x b").unwrap();
        let expected = Term::app(
            Term::app(Term::var("f"), Term::var("a")),
            Term::lam("x", Term::app(Term::var("x"), Term::var("b"))),
        );
        assert_eq!(t, expected);
        let s = parse_term(r"\x y. x").unwrap();
        assert_eq!(s, Term::lam("x", Term::lam("y", Term::var("x"))));
    }

    #[test]
    fn syntax_error_positions() {
        let e = parse_term("(x\n  ;").unwrap_err();
        match e {
            ParseError::Syntax { pos, expected, .. } => {
                assert_eq!(pos, Pos { line: 2, col: 3 });
                assert_eq!(expected, vec!["`)`".to_string()]);
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_term("{| C -> x ; C -> y |}. z").is_err());
    }

    #[test]
    fn tab_type() {
        let t = parse_type("Tab $T1 $T3").unwrap();
        assert_eq!(
            t,
            Type::app(
                Type::app(Type::constant("Tab"), Type::ord("T1")),
                Type::ord("T3")
            )
        );
    }

    #[test]
    fn quantifier_body_extends_right() {
        let t = parse_type("forall @a. @a -> forall $X. $X").unwrap();
        let expected = Type::forall(
            TyVar::Data("a".into()),
            Type::arrow(Type::data("a"), Type::bottom()),
        );
        assert_eq!(t, expected);
        let u = parse_type("(forall @a. @a) -> forall $X. $X").unwrap();
        assert_eq!(u, Type::arrow(Type::bottom_data(), Type::bottom()));
    }

    #[test]
    fn precedence() {
        let t = parse_type("A | B & C D -> E").unwrap();
        let expected = Type::arrow(
            Type::union(
                Type::constant("A"),
                Type::inter(
                    Type::constant("B"),
                    Type::app(Type::constant("C"), Type::constant("D")),
                ),
            ),
            Type::constant("E"),
        );
        assert_eq!(t, expected);
        assert_eq!(
            parse_type("$A -> $B -> $C").unwrap().to_string(),
            "$A -> $B -> $C"
        );
    }

    #[test]
    fn arrow_head_is_ill_formed() {
        let e = parse_type("($X -> $X) Nat").unwrap_err();
        assert!(matches!(
            e,
            ParseError::IllFormed {
                pos: Pos { line: 1, col: 1 },
                ..
            }
        ));
    }

    #[test]
    fn judgments() {
        match parse_judgment("x : C, y : $T -> $U |- y x : $U").unwrap() {
            Judgment::Typing { ctx, subject, ty } => {
                assert_eq!(ctx.entries().len(), 2);
                assert_eq!(
                    subject,
                    Subject::Term(Term::app(Term::var("y"), Term::var("x")))
                );
                assert_eq!(ty, Type::ord("U"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_judgment("|- {| C -> C |} : C -> C").unwrap(),
            Judgment::Typing {
                subject: Subject::Binding(_),
                ..
            }
        ));
        assert!(matches!(
            parse_judgment("|- {| C -> C |}. C : C").unwrap(),
            Judgment::Typing {
                subject: Subject::Term(_),
                ..
            }
        ));
        assert!(matches!(
            parse_judgment("forall $X. $X <= C").unwrap(),
            Judgment::Subtype(..)
        ));
    }

    #[test]
    fn print_round_trips() {
        for src in [
            r"\x. {| Zero -> Zero ; S -> \z. z |}. x",
            r"(\x. x x) (\x. x x)",
            r"f (\x. x) ({| |}. !) (g y)",
            r"({| C -> C |}. f) x",
            r"{| C -> \x. x ; D -> y |}. z",
        ] {
            let t = parse_term(src).unwrap();
            assert_eq!(t.to_string(), src);
            assert!(alpha_eq(&parse_term(&t.to_string()).unwrap(), &t));
        }
        for src in [
            "forall @a. @a -> forall $X. $X",
            "(forall @a. @a) -> forall $X. $X",
            "(A | B) & C",
            "A | (B | C)",
            "D (A -> B) (exists $X. $X)",
            "(A -> B) -> C",
        ] {
            let t = parse_type(src).unwrap();
            assert_eq!(t.to_string(), src);
            assert!(type_alpha_eq(&parse_type(&t.to_string()).unwrap(), &t));
        }
    }

    #[test]
    fn scripts_round_trip() {
        let src = "(subs [|- C : $T -> C $T]\n  (constr [|- C : C])\n  (data [C <= $T -> C $T]))\n";
        let d = parse_script(src).unwrap();
        assert_eq!(d.premises.len(), 2);
        assert_eq!(print_script(&d), src);
        let w = "(cb [|- {| C -> u |} : C $T -> $U] i0=1 splits={$T => $U}\n  (init [|- u : $T -> $U]))\n";
        let d = parse_script(w).unwrap();
        assert_eq!(d.witnesses.i0, Some(1));
        assert_eq!(print_script(&d), w);
    }

    #[test]
    fn script_errors_have_positions() {
        let e = parse_script("(refl [C <= C]\n  (bogus [C <= C]))").unwrap_err();
        assert_eq!(e.pos(), Pos { line: 2, col: 4 });
        let e = parse_script("(refl [C <=\n  ])").unwrap_err();
        assert_eq!(e.pos(), Pos { line: 2, col: 3 });
    }
}
