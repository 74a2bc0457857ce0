//! Small-step reduction under configurable rule sets.

pub mod classify;
pub mod commute;
pub mod graph;
pub mod normalize;
pub mod principal;
pub mod rules;
pub mod step;

pub use classify::{
    classify, is_data_structure, is_defined, is_pure_value, is_value, undefined_witness,
    Classification,
};
pub use commute::{case_normal_form, case_normal_form_binding};
pub use graph::{
    perfectly_normalising, reduction_graph, values_in, values_of, verdict_of, Edge, GraphBudget,
    GraphStatus, ReductionGraph, Truncation, ValueSet, Verdict,
};
pub use normalize::{normalize, Outcome, Step, Strategy};
pub use principal::principal_reduct;
pub use rules::{RuleName, RuleSet};
pub use step::{
    compose_bindings, contract, contract_root, is_normal, one_step_reducts, redexes, root_rule,
    InvalidRedex, Redex,
};
