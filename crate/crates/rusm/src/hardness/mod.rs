//! Approximability frontier curves and symmetry-gap evaluations for the
//! hard instance families.

pub mod curves;
pub mod gap;
pub mod golden;

pub use curves::{
    alpha_algo_negative, alpha_general, alpha_monotone, alpha_negative, emit_curves, phi_negative,
    CurveId, CurvePoint, NegativeCurveConfig, NegativeCurvePoint,
};
pub use gap::{
    default_gap_slack, gap_lhs_monotone, gap_lhs_monotone_numeric, gap_lhs_negative,
    gap_lhs_positive, verify_gap, verify_gap_with_slack, GapEvaluation, GapWitness, NegativeGapLhs,
    PositiveGapLhs,
};
pub use golden::{golden_section_max, golden_section_min, scan_then_golden};
