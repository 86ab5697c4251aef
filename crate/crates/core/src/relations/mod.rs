//! Printed relations among moments, cumulants and invariants, with exact
//! vanishing checks.

pub mod catalog;
pub mod fuzz;

pub use catalog::{
    builtin_catalog, check_relation, embedded_sources, find_relation, load_catalog, Ambient, Family,
    RelationData, RelationEntry,
};
pub use fuzz::{
    data_for_entry, family_instance, fuzz_relation, fuzz_relation_with, negative_control, random_instance, trial_rng, FuzzReport,
    GeneratorSpec, TrialFailure,
};
