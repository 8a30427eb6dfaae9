//! Parametric families of solutions and braces, with their analyses.

mod family;
mod grid;
mod jfamily;
mod model;
mod newsol;
mod probe;

pub use jfamily::{make_jfamily, parse_assignments, FamilySpace, JFamily, JFamilyError};
pub use newsol::{
    analyze_newsol, analyze_newsol_with, construct_newsol, construct_newsol_trusted, construct_newsol_with,
    coset_partitions, newsol_rows, orbit_coordinate_set, pair_index, pair_labels, v_chain, w_subgroup,
    AnalyzeOptions, NewsolError, NewsolReport,
};
pub use family::{
    construct_simple_family, construct_simple_family_with_cap, find_twist, parse_prime_powers, FamilyError,
    SimpleFamily,
};
pub use grid::{construct_grid, unit_order, GridError, GridShape};
pub use model::{build_asym_model, build_asym_model_with_cap, model_perm_brace, AsymModel, ModelBrace, ModelError};
pub use probe::{
    conjugacy_classes, example_family, probe_all, probe_converse, probe_converse_with, Contingency, ProbeEntry,
    ProbeError, ProbeOptions, ProbeReport, ProbeSummary, DEFAULT_PROBE_CAP,
};
