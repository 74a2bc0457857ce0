//! The lambda-calculus with constructors.
//!
//! * [`syntax`]: terms, case bindings, substitution, alpha-equivalence and
//!   the structural measure.
//! * [`reduce`]: the nine reduction rules, rule-set presets, normalisation,
//!   case-commutation normal forms, classification, principal reducts and
//!   bounded reduction graphs.
//! * [`types`]: types with the data-type discipline.
//! * [`derive`]: checking of explicit typing and sub-typing derivations,
//!   plus a bounded sub-typing search.
//! * [`text`]: concrete syntax for terms, types, judgments and derivation
//!   scripts.
//! * [`lab`]: exhaustive term enumeration and property suites.

pub mod derive;
pub mod lab;
pub mod reduce;
pub mod syntax;
pub mod text;
pub mod types;

pub use reduce::{RuleName, RuleSet};
pub use syntax::{Binding, Path, Term};
pub use types::{TyVar, Type};
