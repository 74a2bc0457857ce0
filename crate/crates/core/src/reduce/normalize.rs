//! Step-bounded reduction driver.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rules::{RuleName, RuleSet};
use super::step::{one_step_reducts, Redex};
use crate::syntax::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostOutermost,
    /// Picks uniformly among the available redexes with a seeded generator.
    Random(u64),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::LeftmostOutermost => f.write_str("lo"),
            Strategy::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown strategy `{0}` (expected `lo` or `random:SEED`)")]
pub struct UnknownStrategy(pub String);

impl FromStr for Strategy {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "lo" {
            return Ok(Strategy::LeftmostOutermost);
        }
        s.strip_prefix("random:")
            .and_then(|seed| seed.parse().ok())
            .map(Strategy::Random)
            .ok_or_else(|| UnknownStrategy(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub redex: Redex,
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    NormalForm { term: Term, trace: Vec<Step> },
    FuelExhausted { last: Term, trace: Vec<Step> },
}

impl Outcome {
    pub fn trace(&self) -> &[Step] {
        match self {
            Outcome::NormalForm { trace, .. } | Outcome::FuelExhausted { trace, .. } => trace,
        }
    }

    pub fn term(&self) -> &Term {
        match self {
            Outcome::NormalForm { term, .. } => term,
            Outcome::FuelExhausted { last, .. } => last,
        }
    }

    pub fn normal_form(&self) -> Option<&Term> {
        match self {
            Outcome::NormalForm { term, .. } => Some(term),
            Outcome::FuelExhausted { .. } => None,
        }
    }

    pub fn rules_used(&self) -> Vec<RuleName> {
        self.trace().iter().map(|s| s.redex.rule).collect()
    }
}

/// Reduces `t` until no enabled redex remains or `fuel` steps were taken.
pub fn normalize(t: &Term, rules: RuleSet, strategy: Strategy, fuel: usize) -> Outcome {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Strategy::LeftmostOutermost => None,
    };
    let mut current = t.clone();
    let mut trace = Vec::new();
    loop {
        let mut reducts = one_step_reducts(&current, rules);
        if reducts.is_empty() {
            return Outcome::NormalForm {
                term: current,
                trace,
            };
        }
        if trace.len() >= fuel {
            return Outcome::FuelExhausted {
                last: current,
                trace,
            };
        }
        let pick = match rng.as_mut() {
            Some(rng) => rng.gen_range(0..reducts.len()),
            None => 0,
        };
        let (redex, next) = reducts.swap_remove(pick);
        trace.push(Step {
            redex,
            term: next.clone(),
        });
        current = next;
    }
}
