//! Values, definedness and term classification.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{Path, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Open(BTreeSet<String>),
    /// Position of the leftmost case applied to a constructor outside its domain.
    Undefined(Path),
    ValueData,
    ValueAbstraction,
    Neutral,
}

impl Classification {
    pub fn is_value(&self) -> bool {
        matches!(
            self,
            Classification::ValueData | Classification::ValueAbstraction
        )
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Open(vars) => {
                let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
                write!(f, "open (free: {})", vars.join(", "))
            }
            Classification::Undefined(p) => write!(f, "undefined (match failure at {p})"),
            Classification::ValueData => f.write_str("value (data structure)"),
            Classification::ValueAbstraction => f.write_str("value (abstraction)"),
            Classification::Neutral => f.write_str("neutral"),
        }
    }
}

/// A data structure `c t1 ... tk` (k >= 0).
pub fn is_data_structure(t: &Term) -> bool {
    matches!(t.spine().0, Term::Constr(_))
}

/// An abstraction or a data structure.
pub fn is_value(t: &Term) -> bool {
    matches!(t, Term::Lam(..)) || is_data_structure(t)
}

/// A data structure all of whose arguments are themselves pure values.
pub fn is_pure_value(t: &Term) -> bool {
    let (head, args) = t.spine();
    matches!(head, Term::Constr(_)) && args.into_iter().all(is_pure_value)
}

/// Leftmost (pre-order) subterm `{|θ|}. c` with `c` outside the domain of `θ`.
pub fn undefined_witness(t: &Term) -> Option<Path> {
    let mut found = None;
    t.walk(&mut |path, sub| {
        if found.is_none() {
            if let Term::Case(theta, s) = sub {
                if let Term::Constr(c) = s.as_ref() {
                    if !theta.contains(c) {
                        found = Some(path.clone());
                    }
                }
            }
        }
    });
    found
}

pub fn is_defined(t: &Term) -> bool {
    undefined_witness(t).is_none()
}

/// Match failure takes priority over openness; a closed defined term is a
/// value or neutral.
pub fn classify(t: &Term) -> Classification {
    if let Some(p) = undefined_witness(t) {
        return Classification::Undefined(p);
    }
    let fv = t.free_vars();
    if !fv.is_empty() {
        return Classification::Open(fv);
    }
    match t {
        Term::Lam(..) => Classification::ValueAbstraction,
        _ if is_data_structure(t) => Classification::ValueData,
        _ => Classification::Neutral,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Binding;

    #[test]
    fn applied_constructor_is_data() {
        let t = Term::apps(Term::constr("C"), [Term::constr("D"), Term::Daimon]);
        assert_eq!(classify(&t), Classification::ValueData);
    }

    #[test]
    fn daimon_is_neutral() {
        assert_eq!(classify(&Term::Daimon), Classification::Neutral);
    }

    #[test]
    fn match_failure_reported_at_case() {
        let theta = Binding::new(vec![("C".into(), Term::var("u"))]).unwrap();
        let t = Term::case(theta, Term::constr("D"));
        assert_eq!(classify(&t), Classification::Undefined(Path::root()));
    }

    #[test]
    fn undefined_beats_open() {
        let bad = Term::case(Binding::empty(), Term::constr("C"));
        let t = Term::app(Term::var("y"), bad);
        assert_eq!(
            classify(&t),
            Classification::Undefined(Path::from_steps(vec![1]))
        );
        assert!(matches!(classify(&Term::var("y")), Classification::Open(_)));
    }

    #[test]
    fn pure_values() {
        assert!(is_pure_value(&Term::apps(
            Term::constr("S"),
            [Term::constr("Z")]
        )));
        assert!(!is_pure_value(&Term::apps(
            Term::constr("S"),
            [Term::lam("x", Term::var("x"))]
        )));
    }
}
