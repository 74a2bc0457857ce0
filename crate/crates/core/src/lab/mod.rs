//! Term enumeration and property suites.

mod enumerate;
mod suites;

pub use enumerate::{enumerate_closed_terms, enumerate_terms, terms_of_size, EnumConfig};
pub use suites::{
    check_instance, mirrors, replay, run_suite, run_typed_soundness, typed_instance, Failure,
    Instance, LabConfig, Suite, SuiteReport, UnknownSuite,
};
