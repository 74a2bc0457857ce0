//! Principal reduct of a neutral term: a head reduct through which every
//! value reachable from the term stays reachable.

use crate::syntax::subst::freshen_binder;
use crate::syntax::{substitute, Term};

/// Follows the six head equations; `None` when none applies (daimon-headed
/// terms, match failures, variables, values).
pub fn principal_reduct(t: &Term) -> Option<Term> {
    let (head, args) = t.spine();
    if !args.is_empty() {
        return match head {
            // p((\x. t0) t1 ... tk) = t0{x := t1} t2 ... tk
            Term::Lam(x, body) => Some(Term::apps(
                substitute(body, x, args[0]),
                args[1..].iter().map(|a| (*a).clone()),
            )),
            // p(({|θ|}. t0) t1 ... tk) = p({|θ|}. t0) t1 ... tk
            Term::Case(..) => {
                let p = principal_reduct(head)?;
                Some(Term::apps(p, args.into_iter().cloned()))
            }
            _ => None,
        };
    }
    let Term::Case(theta, s) = t else {
        return None;
    };
    match s.as_ref() {
        Term::Constr(c) => theta.get(c).cloned(),
        Term::Lam(x, body) => {
            let (x, body) = freshen_binder(x, body, &theta.free_vars());
            Some(Term::lam(x, Term::case(theta.clone(), body)))
        }
        Term::App(f, a) => Some(Term::app(
            Term::case(theta.clone(), (**f).clone()),
            (**a).clone(),
        )),
        Term::Case(..) => Some(Term::case(theta.clone(), principal_reduct(s)?)),
        Term::Var(_) | Term::Daimon => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Binding;

    fn theta() -> Binding {
        Binding::new(vec![("C".into(), Term::constr("C"))]).unwrap()
    }

    #[test]
    fn case_over_application() {
        let t = Term::case(theta(), Term::app(Term::var("f"), Term::var("a")));
        assert_eq!(
            principal_reduct(&t),
            Some(Term::app(
                Term::case(theta(), Term::var("f")),
                Term::var("a")
            ))
        );
    }

    #[test]
    fn beta_with_extra_arguments() {
        let t = Term::apps(
            Term::lam("x", Term::var("x")),
            [Term::constr("C"), Term::constr("D")],
        );
        assert_eq!(
            principal_reduct(&t),
            Some(Term::app(Term::constr("C"), Term::constr("D")))
        );
    }

    #[test]
    fn match_failure_has_none() {
        let t = Term::case(
            Binding::new(vec![("C".into(), Term::var("u"))]).unwrap(),
            Term::constr("D"),
        );
        assert_eq!(principal_reduct(&t), None);
    }

    #[test]
    fn nested_case_reduces_inside() {
        let inner = Term::case(theta(), Term::constr("C"));
        let t = Term::case(theta(), inner);
        assert_eq!(
            principal_reduct(&t),
            Some(Term::case(theta(), Term::constr("C")))
        );
    }

    #[test]
    fn daimon_head_has_none() {
        assert_eq!(
            principal_reduct(&Term::app(Term::Daimon, Term::constr("C"))),
            None
        );
        assert_eq!(principal_reduct(&Term::Daimon), None);
    }
}
