//! Term counts, checked against a closed-form recurrence that never builds a term.

use std::collections::HashMap;

use lcc_core::lab::{enumerate_closed_terms, terms_of_size, EnumConfig};
use lcc_core::syntax::{node_count, AlphaKey};

struct Counter {
    constructors: u64,
    daimon: bool,
    terms: HashMap<(usize, usize), u64>,
}

impl Counter {
    fn new(constructors: u64, daimon: bool) -> Self {
        Counter {
            constructors,
            daimon,
            terms: HashMap::new(),
        }
    }

    fn terms(&mut self, n: usize, depth: usize) -> u64 {
        if let Some(&c) = self.terms.get(&(n, depth)) {
            return c;
        }
        let c = if n == 1 {
            self.constructors + self.daimon as u64 + depth as u64
        } else {
            let lam = self.terms(n - 1, depth + 1);
            let app: u64 = (1..n - 1)
                .map(|k| self.terms(k, depth) * self.terms(n - 1 - k, depth))
                .sum();
            let case: u64 = (1..n)
                .map(|s| self.terms(s, depth) * self.bindings(n - 1 - s, depth))
                .sum();
            lam + app + case
        };
        self.terms.insert((n, depth), c);
        c
    }

    fn bindings(&mut self, budget: usize, depth: usize) -> u64 {
        (0..=self.constructors)
            .map(|m| binomial(self.constructors, m) * self.tuples(m, budget, depth))
            .sum()
    }

    fn tuples(&mut self, m: u64, budget: usize, depth: usize) -> u64 {
        if m == 0 {
            return (budget == 0) as u64;
        }
        (1..=budget)
            .map(|f| self.terms(f, depth) * self.tuples(m - 1, budget - f, depth))
            .sum()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn config(max_size: usize, constructors: &[&str], daimon: bool) -> EnumConfig {
    EnumConfig {
        max_size,
        constructors: constructors.iter().map(|c| c.to_string()).collect(),
        allow_daimon: daimon,
        ..EnumConfig::default()
    }
}

fn counts(cfg: &EnumConfig) -> Vec<usize> {
    (1..=cfg.max_size)
        .map(|n| terms_of_size(cfg, n).len())
        .collect()
}

#[test]
fn one_constructor_with_daimon() {
    let cfg = config(7, &["C"], true);
    assert_eq!(counts(&cfg), [2, 5, 20, 94, 474, 2572, 14640]);
    let mut oracle = Counter::new(1, true);
    for n in 1..=8 {
        let expected = [2, 5, 20, 94, 474, 2572, 14640, 86744][n - 1];
        assert_eq!(oracle.terms(n, 0), expected, "size {n}");
    }
}

#[test]
fn lab_set_sizes() {
    assert_eq!(enumerate_closed_terms(&config(6, &["C"], true)).len(), 3167);
    assert_eq!(enumerate_closed_terms(&config(3, &["C"], true)).len(), 27);
}

#[test]
fn two_constructors() {
    let cfg = config(6, &["C", "D"], true);
    assert_eq!(counts(&cfg), [3, 7, 43, 264, 1821, 13425]);
    let mut oracle = Counter::new(2, true);
    assert_eq!(
        (1..=6).map(|n| oracle.terms(n, 0)).collect::<Vec<_>>(),
        [3, 7, 43, 264, 1821, 13425]
    );
}

#[test]
fn without_daimon() {
    let cfg = config(6, &["C"], false);
    assert_eq!(counts(&cfg), [1, 3, 10, 42, 194, 956]);
    let mut oracle = Counter::new(1, false);
    assert_eq!(
        (1..=6).map(|n| oracle.terms(n, 0)).collect::<Vec<_>>(),
        [1, 3, 10, 42, 194, 956]
    );
}

#[test]
fn oracle_agrees_on_three_constructors() {
    let cfg = config(5, &["A", "B", "C"], true);
    let mut oracle = Counter::new(3, true);
    for n in 1..=5 {
        assert_eq!(
            terms_of_size(&cfg, n).len() as u64,
            oracle.terms(n, 0),
            "size {n}"
        );
    }
}

#[test]
fn enumeration_is_alpha_unique_and_sized() {
    let cfg = config(6, &["C"], true);
    let terms = enumerate_closed_terms(&cfg);
    let keys: std::collections::HashSet<_> = terms.iter().map(AlphaKey::of).collect();
    assert_eq!(keys.len(), terms.len());
    assert!(terms
        .windows(2)
        .all(|w| node_count(&w[0]) <= node_count(&w[1])));
    assert!(terms.iter().all(|t| t.is_closed()));
}
