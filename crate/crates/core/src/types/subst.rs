//! Capture-avoiding type substitution and alpha-equivalence of types.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{TyVar, Type};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("cannot substitute non-data type `{replacement}` for data variable `{var}`")]
pub struct DataSubstitutionViolation {
    pub var: TyVar,
    pub replacement: Type,
}

/// `v` with primes appended until its name avoids every variable in `avoid`.
pub fn fresh_tyvar(v: &TyVar, avoid: &BTreeSet<TyVar>) -> TyVar {
    let taken: BTreeSet<&str> = avoid.iter().map(TyVar::name).collect();
    let mut name = format!("{}'", v.name());
    while taken.contains(name.as_str()) {
        name.push('\'');
    }
    v.renamed(name)
}

/// `t{v <- r}`.
pub fn type_substitute(t: &Type, v: &TyVar, r: &Type) -> Result<Type, DataSubstitutionViolation> {
    if v.is_data() && !r.is_data_type() {
        return Err(DataSubstitutionViolation {
            var: v.clone(),
            replacement: r.clone(),
        });
    }
    Ok(subst(t, v, r, &r.free_vars()))
}

fn subst(t: &Type, v: &TyVar, r: &Type, fv_r: &BTreeSet<TyVar>) -> Type {
    let go = |t: &Type| Box::new(subst(t, v, r, fv_r));
    match t {
        Type::OrdVar(n) if *v == TyVar::Ord(n.clone()) => r.clone(),
        Type::DataVar(n) if *v == TyVar::Data(n.clone()) => r.clone(),
        Type::OrdVar(_) | Type::DataVar(_) | Type::Const(_) => t.clone(),
        Type::App(a, b) => Type::App(go(a), go(b)),
        Type::Arrow(a, b) => Type::Arrow(go(a), go(b)),
        Type::Union(a, b) => Type::Union(go(a), go(b)),
        Type::Inter(a, b) => Type::Inter(go(a), go(b)),
        Type::Forall(w, body) | Type::Exists(w, body) => {
            if w == v || !body.has_free(v) {
                return t.clone();
            }
            let (w, body) = if fv_r.contains(w) {
                let mut avoid = fv_r.clone();
                avoid.extend(body.free_vars());
                let w2 = fresh_tyvar(w, &avoid);
                let body = subst(body, w, &w2.to_type(), &BTreeSet::from([w2.clone()]));
                (w2, body)
            } else {
                (w.clone(), (**body).clone())
            };
            let body = Box::new(subst(&body, v, r, fv_r));
            match t {
                Type::Forall(..) => Type::Forall(w, body),
                _ => Type::Exists(w, body),
            }
        }
    }
}

/// Equality up to renaming of quantified variables.
pub fn type_alpha_eq(a: &Type, b: &Type) -> bool {
    eq(a, b, &mut Vec::new())
}

fn eq<'a>(a: &'a Type, b: &'a Type, env: &mut Vec<(&'a TyVar, &'a TyVar)>) -> bool {
    let var = |v: TyVar, w: TyVar, env: &Vec<(&TyVar, &TyVar)>| {
        for (x, y) in env.iter().rev() {
            if **x == v || **y == w {
                return **x == v && **y == w;
            }
        }
        v == w
    };
    match (a, b) {
        (Type::OrdVar(x), Type::OrdVar(y)) => {
            var(TyVar::Ord(x.clone()), TyVar::Ord(y.clone()), env)
        }
        (Type::DataVar(x), Type::DataVar(y)) => {
            var(TyVar::Data(x.clone()), TyVar::Data(y.clone()), env)
        }
        (Type::Const(c), Type::Const(d)) => c == d,
        (Type::App(a1, a2), Type::App(b1, b2))
        | (Type::Arrow(a1, a2), Type::Arrow(b1, b2))
        | (Type::Union(a1, a2), Type::Union(b1, b2))
        | (Type::Inter(a1, a2), Type::Inter(b1, b2)) => eq(a1, b1, env) && eq(a2, b2, env),
        (Type::Forall(v, s), Type::Forall(w, t)) | (Type::Exists(v, s), Type::Exists(w, t)) => {
            if v.is_data() != w.is_data() {
                return false;
            }
            env.push((v, w));
            let r = eq(s, t, env);
            env.pop();
            r
        }
        _ => false,
    }
}
