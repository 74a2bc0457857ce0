//! Case-commutation normal form: the unique normal form for CaseApp and
//! CaseLam, computed by structural recursion.

use crate::syntax::subst::freshen_binder;
use crate::syntax::{structural_measure, Binding, Term};

pub fn case_normal_form(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::Constr(_) | Term::Daimon => t.clone(),
        Term::Lam(x, body) => Term::lam(x.clone(), case_normal_form(body)),
        Term::App(f, a) => Term::app(case_normal_form(f), case_normal_form(a)),
        Term::Case(theta, s) => case_on(theta, s),
    }
}

pub fn case_normal_form_binding(theta: &Binding) -> Binding {
    theta.map_bodies(case_normal_form)
}

/// `⌊{|θ|}. s⌋`
fn case_on(theta: &Binding, s: &Term) -> Term {
    match s {
        Term::Var(_) | Term::Constr(_) | Term::Daimon => {
            Term::case(case_normal_form_binding(theta), s.clone())
        }
        Term::Lam(x, body) => {
            let (x, body) = freshen_binder(x, body, &theta.free_vars());
            Term::lam(x, case_on(theta, &body))
        }
        Term::App(f, a) => Term::app(case_on(theta, f), case_normal_form(a)),
        Term::Case(phi, inner) => {
            let inner_nf = case_on(phi, inner);
            if inner_nf == *s {
                Term::case(case_normal_form_binding(theta), inner_nf)
            } else {
                // The recursion is not structural here; it terminates because
                // the scrutinee's measure strictly drops.
                let before = structural_measure(s);
                let after = structural_measure(&inner_nf);
                assert!(
                    after < before,
                    "case normal form: measure did not decrease ({before} -> {after})"
                );
                case_on(theta, &inner_nf)
            }
        }
    }
}
