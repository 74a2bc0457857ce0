//! Exhaustive, smallest-first term enumeration.

use std::collections::HashMap;

use serde::Serialize;

use crate::reduce::is_defined;
use crate::syntax::{Binding, Term};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumConfig {
    /// Largest node count (see [`crate::syntax::node_count`]).
    pub max_size: usize,
    pub constructors: Vec<String>,
    /// Free variables available when `closed_only` is off.
    pub variables: Vec<String>,
    pub allow_daimon: bool,
    pub closed_only: bool,
    pub defined_only: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_size: 6,
            constructors: vec!["C".into()],
            variables: vec!["f".into()],
            allow_daimon: true,
            closed_only: true,
            defined_only: false,
        }
    }
}

const BINDERS: [&str; 6] = ["x", "y", "z", "w", "v", "u"];

struct Generator<'a> {
    cfg: &'a EnumConfig,
    binders: Vec<String>,
    memo: HashMap<(usize, usize), Vec<Term>>,
}

impl Generator<'_> {
    /// Name of the binder introduced at lambda depth `depth`; one name per
    /// depth makes alpha-equivalent terms coincide.
    fn binder(&mut self, depth: usize) -> String {
        let mut k = self.binders.len();
        while self.binders.len() <= depth {
            let name = match BINDERS.get(k) {
                Some(n) => n.to_string(),
                None => format!("x{k}"),
            };
            k += 1;
            if !self.cfg.variables.contains(&name) {
                self.binders.push(name);
            }
        }
        self.binders[depth].clone()
    }

    fn terms(&mut self, size: usize, depth: usize) -> Vec<Term> {
        if let Some(v) = self.memo.get(&(size, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.extend(
                self.cfg
                    .constructors
                    .iter()
                    .map(|c| Term::Constr(c.clone())),
            );
            if self.cfg.allow_daimon {
                out.push(Term::Daimon);
            }
            for d in 0..depth {
                let x = self.binder(d);
                out.push(Term::Var(x));
            }
            if !self.cfg.closed_only {
                out.extend(self.cfg.variables.iter().map(|x| Term::Var(x.clone())));
            }
        } else {
            let x = self.binder(depth);
            for body in self.terms(size - 1, depth + 1) {
                out.push(Term::lam(x.clone(), body));
            }
            for k in 1..size - 1 {
                let args = self.terms(size - 1 - k, depth);
                for f in self.terms(k, depth) {
                    for a in &args {
                        out.push(Term::app(f.clone(), a.clone()));
                    }
                }
            }
            for s in 1..size {
                let scrutinees = self.terms(s, depth);
                for theta in self.bindings(size - 1 - s, depth) {
                    for t in &scrutinees {
                        out.push(Term::case(theta.clone(), t.clone()));
                    }
                }
            }
        }
        self.memo.insert((size, depth), out.clone());
        out
    }

    /// Bindings whose branch bodies have total size `budget`.
    fn bindings(&mut self, budget: usize, depth: usize) -> Vec<Binding> {
        let constructors = self.cfg.constructors.clone();
        let mut out = Vec::new();
        for mask in 0u32..(1 << constructors.len()) {
            let domain: Vec<&String> = constructors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, c)| c)
                .collect();
            for bodies in self.body_tuples(domain.len(), budget, depth) {
                let branches = domain.iter().map(|c| (*c).clone()).zip(bodies).collect();
                out.push(Binding::new(branches).expect("distinct constructors"));
            }
        }
        out
    }

    fn body_tuples(&mut self, n: usize, budget: usize, depth: usize) -> Vec<Vec<Term>> {
        if n == 0 {
            return if budget == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in 1..=budget.saturating_sub(n - 1) {
            let rests = self.body_tuples(n - 1, budget - first, depth);
            for t in self.terms(first, depth) {
                for rest in &rests {
                    let mut v = vec![t.clone()];
                    v.extend(rest.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }
}

/// Terms of node count exactly `size`.
pub fn terms_of_size(cfg: &EnumConfig, size: usize) -> Vec<Term> {
    let mut g = Generator {
        cfg,
        binders: Vec::new(),
        memo: HashMap::new(),
    };
    let mut out = g.terms(size, 0);
    if cfg.defined_only {
        out.retain(is_defined);
    }
    out
}

/// Every term up to `cfg.max_size` nodes, smallest first, one per alpha class.
pub fn enumerate_terms(cfg: &EnumConfig) -> Vec<Term> {
    (1..=cfg.max_size)
        .flat_map(|n| terms_of_size(cfg, n))
        .collect()
}

/// [`enumerate_terms`] with `closed_only` forced on.
pub fn enumerate_closed_terms(cfg: &EnumConfig) -> Vec<Term> {
    enumerate_terms(&EnumConfig {
        closed_only: true,
        ..cfg.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{node_count, AlphaKey};
    use std::collections::HashSet;

    #[test]
    fn size_one() {
        let cfg = EnumConfig {
            max_size: 1,
            ..EnumConfig::default()
        };
        assert_eq!(
            enumerate_closed_terms(&cfg),
            vec![Term::constr("C"), Term::Daimon]
        );
        let no_daimon = EnumConfig {
            allow_daimon: false,
            ..cfg
        };
        assert_eq!(enumerate_closed_terms(&no_daimon), vec![Term::constr("C")]);
    }

    #[test]
    fn sizes_closedness_and_uniqueness() {
        let cfg = EnumConfig {
            max_size: 5,
            constructors: vec!["C".into(), "D".into()],
            ..EnumConfig::default()
        };
        let terms = enumerate_closed_terms(&cfg);
        let mut seen = HashSet::new();
        let mut last = 0;
        for t in &terms {
            let n = node_count(t);
            assert!(n >= last && n <= 5);
            last = n;
            assert!(t.is_closed(), "{t}");
            assert!(seen.insert(AlphaKey::of(t)), "duplicate {t}");
        }
    }

    #[test]
    fn open_terms_use_the_variable_alphabet() {
        let cfg = EnumConfig {
            max_size: 2,
            closed_only: false,
            variables: vec!["x".into()],
            ..EnumConfig::default()
        };
        let terms = enumerate_terms(&cfg);
        assert!(terms.contains(&Term::var("x")));
        // binders avoid the free alphabet
        assert!(terms.contains(&Term::lam("y", Term::var("x"))));
        assert!(terms.contains(&Term::lam("y", Term::var("y"))));
    }

    #[test]
    fn defined_only_filters_match_failures() {
        let cfg = EnumConfig {
            max_size: 3,
            defined_only: true,
            ..EnumConfig::default()
        };
        assert!(enumerate_closed_terms(&cfg).iter().all(is_defined));
    }
}
