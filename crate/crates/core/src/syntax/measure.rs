//! Structural measure, strictly decreased by every case-commutation step.

use std::fmt;

use serde::Serialize;

use super::{Binding, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Measure(pub u64);

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `s(x) = s(c) = s(!) = 1`, `s(\x.t) = s(t) + 1`, `s(t u) = s(t) + s(u)`,
/// `s({|θ|}. t) = s(t) * (s(θ) + 2)`.
pub fn structural_measure(t: &Term) -> Measure {
    Measure(measure(t))
}

/// Sum of the branch measures; the empty binding measures 0.
pub fn structural_measure_binding(theta: &Binding) -> Measure {
    Measure(binding_measure(theta))
}

fn measure(t: &Term) -> u64 {
    match t {
        Term::Var(_) | Term::Constr(_) | Term::Daimon => 1,
        Term::Lam(_, b) => measure(b) + 1,
        Term::App(f, a) => measure(f) + measure(a),
        Term::Case(theta, s) => measure(s) * (binding_measure(theta) + 2),
    }
}

fn binding_measure(theta: &Binding) -> u64 {
    theta.branches().iter().map(|(_, u)| measure(u)).sum()
}

/// Number of syntax nodes; a case counts one node plus its scrutinee and
/// branch bodies. This is the size used by term enumeration.
pub fn node_count(t: &Term) -> usize {
    match t {
        Term::Var(_) | Term::Constr(_) | Term::Daimon => 1,
        Term::Lam(_, b) => 1 + node_count(b),
        Term::App(f, a) => 1 + node_count(f) + node_count(a),
        Term::Case(theta, s) => {
            1 + node_count(s)
                + theta
                    .branches()
                    .iter()
                    .map(|(_, u)| node_count(u))
                    .sum::<usize>()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_measures_two() {
        assert_eq!(
            structural_measure(&Term::lam("x", Term::var("x"))),
            Measure(2)
        );
    }

    #[test]
    fn case_with_one_branch() {
        let theta = Binding::new(vec![("C".into(), Term::constr("C"))]).unwrap();
        // 1 * (1 + 2)
        assert_eq!(
            structural_measure(&Term::case(theta, Term::var("x"))),
            Measure(3)
        );
    }

    #[test]
    fn empty_binding_measures_zero() {
        assert_eq!(structural_measure_binding(&Binding::empty()), Measure(0));
        // 1 * (0 + 2)
        let t = Term::case(Binding::empty(), Term::constr("C"));
        assert_eq!(structural_measure(&t), Measure(2));
    }
}
