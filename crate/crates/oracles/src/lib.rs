//! Independent brute-force oracles for the exact-geometry and dichotomy
//! machinery, plus the exhaustive sweep driver.
//!
//! Oracle code is written against the raw definitions, not against the main
//! implementation paths it checks, and stays frozen: optimizations belong
//! in the main crate.

pub mod geometric;
pub mod quadrature;
pub mod sweep;

pub use geometric::{
    common_point, disjointness_oracle, geometric_arc_oracle, oracle_partition,
    parallel_arcs_oracle, OracleArc,
};
pub use quadrature::quadrature_lobachevsky;
pub use sweep::{
    all_types, compatible_type_multisets, exhaustive_dichotomy_sweep, realization_levels,
    realize_multiset, SweepOptions, SweepSummary,
};

/// One oracle-versus-main comparison, for machine-readable reports.
#[derive(Clone, Debug, serde::Serialize)]
pub struct OracleReport {
    pub instance: String,
    pub main_result: String,
    pub oracle_result: String,
    pub agree: bool,
}

impl OracleReport {
    pub fn new(
        instance: impl Into<String>,
        main_result: impl Into<String>,
        oracle_result: impl Into<String>,
        agree: bool,
    ) -> Self {
        OracleReport {
            instance: instance.into(),
            main_result: main_result.into(),
            oracle_result: oracle_result.into(),
            agree,
        }
    }
}
