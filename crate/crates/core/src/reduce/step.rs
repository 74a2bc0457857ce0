//! One-step contraction under a rule set.

use std::fmt;

use serde::Serialize;

use super::rules::{RuleName, RuleSet};
use crate::syntax::subst::freshen_binder;
use crate::syntax::{substitute, Binding, Path, Term};

/// A redex occurrence: where it sits and which rule contracts it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Redex {
    pub position: Path,
    pub rule: RuleName,
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.rule, self.position)
    }
}

impl Serialize for Redex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no {} redex at position {}", .0.rule, .0.position)]
pub struct InvalidRedex(pub Redex);

/// The rule whose left-hand side matches `t` at its root, if any. At most
/// one rule can match a given node.
pub fn root_rule(t: &Term) -> Option<RuleName> {
    match t {
        Term::App(f, _) => match f.as_ref() {
            Term::Lam(..) => Some(RuleName::AppLam),
            Term::Daimon => Some(RuleName::AppDai),
            _ => None,
        },
        Term::Lam(x, body) => match body.as_ref() {
            Term::Daimon => Some(RuleName::LamDai),
            Term::App(g, a) if matches!(a.as_ref(), Term::Var(y) if y == x) && !g.has_free(x) => {
                Some(RuleName::LamApp)
            }
            _ => None,
        },
        Term::Case(theta, s) => match s.as_ref() {
            Term::Constr(c) if theta.contains(c) => Some(RuleName::CaseCons),
            Term::Daimon => Some(RuleName::CaseDai),
            Term::App(..) => Some(RuleName::CaseApp),
            Term::Lam(..) => Some(RuleName::CaseLam),
            Term::Case(..) => Some(RuleName::CaseCase),
            _ => None,
        },
        Term::Var(_) | Term::Constr(_) | Term::Daimon => None,
    }
}

/// `θ∘φ`: every branch of `inner` wrapped in a case on `outer`.
pub fn compose_bindings(outer: &Binding, inner: &Binding) -> Binding {
    inner.map_bodies(|u| Term::case(outer.clone(), u.clone()))
}

/// Contracts `t` at its root with `rule`, or `None` if the rule does not apply.
pub fn contract_root(t: &Term, rule: RuleName) -> Option<Term> {
    if root_rule(t) != Some(rule) {
        return None;
    }
    let out = match (rule, t) {
        (RuleName::AppLam, Term::App(f, u)) => match f.as_ref() {
            Term::Lam(x, body) => substitute(body, x, u),
            _ => unreachable!(),
        },
        (RuleName::AppDai, _) | (RuleName::LamDai, _) | (RuleName::CaseDai, _) => Term::Daimon,
        (RuleName::LamApp, Term::Lam(_, body)) => match body.as_ref() {
            Term::App(g, _) => (**g).clone(),
            _ => unreachable!(),
        },
        (RuleName::CaseCons, Term::Case(theta, s)) => match s.as_ref() {
            Term::Constr(c) => theta.get(c)?.clone(),
            _ => unreachable!(),
        },
        (RuleName::CaseApp, Term::Case(theta, s)) => match s.as_ref() {
            Term::App(f, a) => Term::app(Term::case(theta.clone(), (**f).clone()), (**a).clone()),
            _ => unreachable!(),
        },
        (RuleName::CaseLam, Term::Case(theta, s)) => match s.as_ref() {
            Term::Lam(x, body) => {
                let (x, body) = freshen_binder(x, body, &theta.free_vars());
                Term::lam(x, Term::case(theta.clone(), body))
            }
            _ => unreachable!(),
        },
        (RuleName::CaseCase, Term::Case(theta, s)) => match s.as_ref() {
            Term::Case(phi, inner) => Term::case(compose_bindings(theta, phi), (**inner).clone()),
            _ => unreachable!(),
        },
        _ => unreachable!(),
    };
    Some(out)
}

/// Every redex of `t` whose rule is enabled, in leftmost-outermost order:
/// pre-order on positions, smaller child index first.
pub fn redexes(t: &Term, rules: RuleSet) -> Vec<Redex> {
    let mut out = Vec::new();
    t.walk(&mut |path, sub| {
        if let Some(rule) = root_rule(sub) {
            if rules.contains(rule) {
                out.push(Redex {
                    position: path.clone(),
                    rule,
                });
            }
        }
    });
    out
}

/// All one-step contractions of `t`, paired with the redex contracted.
pub fn one_step_reducts(t: &Term, rules: RuleSet) -> Vec<(Redex, Term)> {
    redexes(t, rules)
        .into_iter()
        .map(|r| {
            let reduct = contract(t, &r).expect("enumerated redex must contract");
            (r, reduct)
        })
        .collect()
}

pub fn contract(t: &Term, redex: &Redex) -> Result<Term, InvalidRedex> {
    let invalid = || InvalidRedex(redex.clone());
    let sub = t.at(&redex.position).ok_or_else(invalid)?;
    let reduct = contract_root(sub, redex.rule).ok_or_else(invalid)?;
    let mut out = t.clone();
    *out.at_mut(&redex.position).ok_or_else(invalid)? = reduct;
    Ok(out)
}

pub fn is_normal(t: &Term, rules: RuleSet) -> bool {
    let mut found = false;
    t.walk(&mut |_, sub| {
        if !found {
            found = root_rule(sub).is_some_and(|r| rules.contains(r));
        }
    });
    !found
}
