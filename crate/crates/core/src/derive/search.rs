//! Bounded, incomplete search for sub-typing derivations.

use super::check::{check, check_subtyping};
use super::{Derivation, Judgment, Rule, SubtypingRule as S, Witnesses};
use crate::types::{type_alpha_eq, TyVar, Type};

/// Looks for a derivation of `lhs <= rhs` with at most `depth` nested rule
/// applications. Any result is accepted by the checker; `None` proves nothing.
pub fn search_subtyping(lhs: &Type, rhs: &Type, depth: usize) -> Option<Derivation> {
    let d = search(lhs, rhs, depth)?;
    check_subtyping(&d).ok().map(|_| d)
}

fn judgment(l: &Type, r: &Type) -> Judgment {
    Judgment::Subtype(l.clone(), r.clone())
}

fn search(l: &Type, r: &Type, depth: usize) -> Option<Derivation> {
    if depth == 0 {
        return None;
    }
    if let Some(d) = axioms(l, r).into_iter().find(|d| check(d).is_ok()) {
        return Some(d);
    }
    if depth == 1 {
        return None;
    }
    let sub = |a: &Type, b: &Type| search(a, b, depth - 1);
    let node = |rule, premises| Derivation::node(Rule::Subtyping(rule), judgment(l, r), premises);
    match (l, r) {
        (Type::Arrow(t, u), Type::Arrow(t2, u2)) => {
            if let (Some(p), Some(q)) = (sub(t2, t), sub(u, u2)) {
                return Some(node(S::Arrow, vec![p, q]));
            }
        }
        (Type::App(d, t), Type::App(d2, t2)) => {
            if let (Some(p), Some(q)) = (sub(d, d2), sub(t, t2)) {
                return Some(node(S::App, vec![p, q]));
            }
        }
        _ => {}
    }
    if let Type::Union(a, b) = l {
        if let (Some(p), Some(q)) = (sub(a, r), sub(b, r)) {
            return Some(node(S::UnionElim, vec![p, q]));
        }
    }
    if let Type::Inter(a, b) = r {
        if let (Some(p), Some(q)) = (sub(l, a), sub(l, b)) {
            return Some(node(S::InterIntro, vec![p, q]));
        }
    }
    if let Type::Forall(v, u) = r {
        if !l.has_free(v) {
            if let Some(p) = sub(l, u) {
                return Some(node(S::ForallIntro, vec![p]));
            }
        }
    }
    if let Type::Exists(v, u) = l {
        if !r.has_free(v) {
            if let Some(p) = sub(u, r) {
                return Some(node(S::ExistsElim, vec![p]));
            }
        }
    }
    for mid in middles(l, r) {
        if type_alpha_eq(&mid, l) || type_alpha_eq(&mid, r) {
            continue;
        }
        if let Some(p) = sub(l, &mid) {
            if let Some(q) = sub(&mid, r) {
                return Some(node(S::Trans, vec![p, q]));
            }
        }
    }
    None
}

/// Candidate intermediate types for `trans`.
fn middles(l: &Type, r: &Type) -> Vec<Type> {
    let mut out = Vec::new();
    if let Type::Inter(a, b) = l {
        out.push((**a).clone());
        out.push((**b).clone());
    }
    if let Type::Union(a, b) = r {
        out.push((**a).clone());
        out.push((**b).clone());
    }
    if let Type::Forall(v, body) = l {
        if let Some(inst) = match_var(body, v, r) {
            if let Ok(t) = crate::types::type_substitute(body, v, &inst) {
                out.push(t);
            }
        }
    }
    out
}

fn axioms(l: &Type, r: &Type) -> Vec<Derivation> {
    let leaf = |rule: S| Derivation::leaf(Rule::Subtyping(rule), judgment(l, r));
    let mut out: Vec<Derivation> = [
        S::Refl,
        S::UnionIntroL,
        S::UnionIntroR,
        S::InterElimL,
        S::InterElimR,
        S::Data,
        S::Constr,
        S::AppInter,
        S::AppForall,
        S::ArrowInter,
        S::ArrowForall,
        S::ArrowUnion,
        S::ArrowExists,
        S::UnionAppR,
        S::UnionAppL,
        S::ExistsAppR,
        S::ExistsAppL,
        S::UnionForall,
        S::ExistsInter,
    ]
    .into_iter()
    .map(leaf)
    .collect();
    let with_inst = |rule: S, inst: Type| {
        leaf(rule).with_witnesses(Witnesses {
            inst: Some(inst),
            ..Witnesses::default()
        })
    };
    if let Type::Forall(v, body) = l {
        let rule = if v.is_data() {
            S::ForallElimD
        } else {
            S::ForallElim
        };
        out.push(with_inst(rule, instance(body, v, r)));
    }
    if let Type::Exists(v, body) = r {
        let rule = if v.is_data() {
            S::ExistsIntroD
        } else {
            S::ExistsIntro
        };
        out.push(with_inst(rule, instance(body, v, l)));
    }
    out
}

/// Instantiation of `v` making `pattern` equal to `target`, or `v` itself
/// when it does not occur.
fn instance(pattern: &Type, v: &TyVar, target: &Type) -> Type {
    match_var(pattern, v, target).unwrap_or_else(|| v.to_type())
}

fn match_var(pattern: &Type, v: &TyVar, target: &Type) -> Option<Type> {
    let mut found = None;
    if go(pattern, v, target, &mut found) {
        found
    } else {
        None
    }
}

fn go(p: &Type, v: &TyVar, t: &Type, found: &mut Option<Type>) -> bool {
    if v.to_type() == *p {
        return match found {
            Some(prev) => type_alpha_eq(prev, t),
            None => {
                *found = Some(t.clone());
                true
            }
        };
    }
    match (p, t) {
        (Type::App(a, b), Type::App(c, d))
        | (Type::Arrow(a, b), Type::Arrow(c, d))
        | (Type::Union(a, b), Type::Union(c, d))
        | (Type::Inter(a, b), Type::Inter(c, d)) => go(a, v, c, found) && go(b, v, d, found),
        (Type::Forall(w, a), Type::Forall(w2, b)) | (Type::Exists(w, a), Type::Exists(w2, b)) => {
            if w == v {
                type_alpha_eq(p, t)
            } else {
                w == w2 && go(a, v, b, found)
            }
        }
        _ => p == t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_type;

    fn ty(s: &str) -> Type {
        parse_type(s).unwrap()
    }

    #[test]
    fn refl() {
        let d = search_subtyping(&ty("$T"), &ty("$T"), 1).unwrap();
        assert_eq!(d.rule, Rule::Subtyping(S::Refl));
    }

    #[test]
    fn data_axiom() {
        let d = search_subtyping(&ty("C"), &ty("$U -> C $U"), 2).unwrap();
        assert_eq!(d.rule, Rule::Subtyping(S::Data));
    }

    #[test]
    fn forall_elimination() {
        let d = search_subtyping(&ty("forall $X. $X"), &ty("C"), 3).unwrap();
        assert!(check_subtyping(&d).is_ok());
        assert_eq!(d.conclusion, judgment(&ty("forall $X. $X"), &ty("C")));
    }

    #[test]
    fn structural() {
        let d = search_subtyping(&ty("C | D -> E"), &ty("C -> E | F"), 3).unwrap();
        assert_eq!(d.rule, Rule::Subtyping(S::Arrow));
        let d = search_subtyping(&ty("C | D"), &ty("D | C"), 2).unwrap();
        assert_eq!(d.rule, Rule::Subtyping(S::UnionElim));
    }

    #[test]
    fn not_found_is_none() {
        assert!(search_subtyping(&ty("C"), &ty("D"), 4).is_none());
    }
}
