//! Alpha-equivalence through a nameless (de Bruijn) key.

use super::{Binding, Term};

/// Canonical nameless form of a term. Two terms are alpha-equivalent iff
/// their keys are equal, so the key can index hash maps of terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlphaKey {
    Bound(usize),
    Free(String),
    Constr(String),
    Lam(Box<AlphaKey>),
    App(Box<AlphaKey>, Box<AlphaKey>),
    /// Branches sorted by constructor.
    Case(Vec<(String, AlphaKey)>, Box<AlphaKey>),
    Daimon,
}

impl AlphaKey {
    pub fn of(t: &Term) -> AlphaKey {
        key(t, &mut Vec::new())
    }

    pub fn of_binding(theta: &Binding) -> Vec<(String, AlphaKey)> {
        binding_key(theta, &mut Vec::new())
    }
}

fn key<'a>(t: &'a Term, env: &mut Vec<&'a str>) -> AlphaKey {
    match t {
        Term::Var(x) => match env.iter().rev().position(|y| *y == x) {
            Some(i) => AlphaKey::Bound(i),
            None => AlphaKey::Free(x.clone()),
        },
        Term::Constr(c) => AlphaKey::Constr(c.clone()),
        Term::Daimon => AlphaKey::Daimon,
        Term::Lam(x, body) => {
            env.push(x);
            let k = key(body, env);
            env.pop();
            AlphaKey::Lam(Box::new(k))
        }
        Term::App(f, a) => AlphaKey::App(Box::new(key(f, env)), Box::new(key(a, env))),
        Term::Case(theta, s) => AlphaKey::Case(binding_key(theta, env), Box::new(key(s, env))),
    }
}

fn binding_key<'a>(theta: &'a Binding, env: &mut Vec<&'a str>) -> Vec<(String, AlphaKey)> {
    let mut out: Vec<(String, AlphaKey)> = theta
        .branches()
        .iter()
        .map(|(c, u)| (c.clone(), key(u, env)))
        .collect();
    out.sort();
    out
}

pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    AlphaKey::of(a) == AlphaKey::of(b)
}

pub fn alpha_eq_binding(a: &Binding, b: &Binding) -> bool {
    AlphaKey::of_binding(a) == AlphaKey::of_binding(b)
}
