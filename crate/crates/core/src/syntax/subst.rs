//! Capture-avoiding substitution.

use std::collections::BTreeSet;

use super::{Binding, Term};

/// Returns `base` with primes appended until it avoids every name in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = format!("{base}'");
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

/// `t{x := u}`.
pub fn substitute(t: &Term, x: &str, u: &Term) -> Term {
    let fv_u = u.free_vars();
    subst(t, x, u, &fv_u)
}

/// `theta{x := u}`, component-wise.
pub fn substitute_binding(theta: &Binding, x: &str, u: &Term) -> Binding {
    let fv_u = u.free_vars();
    theta.map_bodies(|body| subst(body, x, u, &fv_u))
}

fn subst(t: &Term, x: &str, u: &Term, fv_u: &BTreeSet<String>) -> Term {
    match t {
        Term::Var(y) if y == x => u.clone(),
        Term::Var(_) | Term::Constr(_) | Term::Daimon => t.clone(),
        Term::App(f, a) => Term::app(subst(f, x, u, fv_u), subst(a, x, u, fv_u)),
        Term::Case(theta, s) => Term::case(
            theta.map_bodies(|body| subst(body, x, u, fv_u)),
            subst(s, x, u, fv_u),
        ),
        Term::Lam(y, body) => {
            if y == x || !body.has_free(x) {
                return t.clone();
            }
            if fv_u.contains(y) {
                let mut avoid = fv_u.clone();
                avoid.extend(body.free_vars());
                avoid.insert(x.to_string());
                let y2 = fresh_name(y, &avoid);
                let renamed = subst(
                    body,
                    y,
                    &Term::Var(y2.clone()),
                    &BTreeSet::from([y2.clone()]),
                );
                Term::lam(y2, subst(&renamed, x, u, fv_u))
            } else {
                Term::lam(y.clone(), subst(body, x, u, fv_u))
            }
        }
    }
}

/// Renames the binder of `\y. body` so that it avoids `avoid`, returning
/// the new binder and body. The binder is kept when it is already fresh.
pub(crate) fn freshen_binder(y: &str, body: &Term, avoid: &BTreeSet<String>) -> (String, Term) {
    if !avoid.contains(y) {
        return (y.to_string(), body.clone());
    }
    let mut all = avoid.clone();
    all.extend(body.free_vars());
    let y2 = fresh_name(y, &all);
    let renamed = substitute(body, y, &Term::Var(y2.clone()));
    (y2, renamed)
}
