//! Exhaustive search over all subsets, used as the reference optimum in
//! guarantee checks and in the test suite.

use crate::core::mask::SubsetMask;
use crate::core::oracle::RusmInstance;
use crate::error::{Result, RusmError};
use crate::solvers::{Algorithm, SolverReport};

/// Largest ground set the exhaustive scan accepts.
pub const BRUTE_LIMIT: usize = 24;

/// Maximizes `alpha·g(S) + beta·ell(S)` by scanning all `2^n` subsets.
/// Ties go to the set found first, i.e. the smallest bitmask.
pub fn brute_force_opt(
    instance: &RusmInstance,
    alpha: f64,
    beta: f64,
) -> Result<(SubsetMask, f64)> {
    let n = instance.n();
    if n > BRUTE_LIMIT {
        return Err(RusmError::CheckInfeasible { n, max: BRUTE_LIMIT });
    }
    for (name, c) in [("alpha", alpha), ("beta", beta)] {
        if !c.is_finite() {
            return Err(RusmError::param(name, "must be finite"));
        }
    }
    let mut best = SubsetMask::EMPTY;
    let mut best_value = f64::NEG_INFINITY;
    for s in instance.ground.full_mask().subsets() {
        let value = alpha * instance.g.evaluate(s) + beta * instance.ell.value(s);
        if value > best_value {
            best = s;
            best_value = value;
        }
    }
    Ok((best, best_value))
}

/// Exhaustive maximization of `g + ℓ` packaged as a solver report.
pub fn brute_force_report(instance: &RusmInstance) -> Result<SolverReport> {
    let inst = instance.fork();
    let (best, _) = brute_force_opt(&inst, 1.0, 1.0)?;
    let g_value = inst.g.evaluate(best);
    let ell_value = inst.ell.value(best);
    Ok(SolverReport {
        algorithm: Algorithm::Brute,
        n: inst.n(),
        output_set: best,
        g_value,
        ell_value,
        objective: g_value + ell_value,
        oracle_queries: inst.g.query_count(),
        seed: None,
        move_trace: Vec::new(),
        ls: None,
        dg_trace: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::mask::GroundSet;
    use crate::core::oracle::{InstanceFlags, LinearWeights, SetFunctionOracle};
    use crate::instances::HardInstanceDescriptor;

    #[test]
    fn zero_coefficients_tie_break_to_empty() {
        let bundle = HardInstanceDescriptor::capped_cardinality(4, 0.5).unwrap().build().unwrap();
        let (best, value) = brute_force_opt(&bundle.instance, 0.0, 0.0).unwrap();
        assert_eq!(best, SubsetMask::EMPTY);
        assert_eq!(value, 0.0);
    }

    #[test]
    fn capped_family_optimum_is_first_singleton() {
        let bundle = HardInstanceDescriptor::capped_cardinality(3, 0.25).unwrap().build().unwrap();
        let (best, value) = brute_force_opt(&bundle.instance, 1.0, 1.0).unwrap();
        assert_eq!(best, SubsetMask::singleton(0));
        assert_eq!(value, 0.75);
    }

    #[test]
    fn paired_family_optimum() {
        let bundle = HardInstanceDescriptor::paired_parity(1, 2.0, 0.5).unwrap().build().unwrap();
        let (best, value) = brute_force_opt(&bundle.instance, 1.0, 1.0).unwrap();
        assert_eq!(value, 2.5);
        // {b, a1} and {a, b1} tie at 2.5; the scan keeps the smaller mask.
        assert_eq!(best, SubsetMask::from_elements([1, 2]));
        let other = SubsetMask::from_elements([0, 3]);
        assert_eq!(bundle.instance.objective(other), value);
    }

    #[test]
    fn report_matches_direct_scan() {
        let bundle = HardInstanceDescriptor::parity_bonus(3).unwrap().build().unwrap();
        let report = brute_force_report(&bundle.instance).unwrap();
        let (best, value) = brute_force_opt(&bundle.instance, 1.0, 1.0).unwrap();
        assert_eq!(report.output_set, best);
        assert_eq!(report.objective, value);
        assert_eq!(report.oracle_queries, (1 << bundle.instance.n()) + 1);
    }

    #[test]
    fn rejects_large_ground_sets() {
        let inst = RusmInstance::new(
            GroundSet::new(25).unwrap(),
            SetFunctionOracle::new(|_| 0.0),
            LinearWeights::zeros(25),
            InstanceFlags { g_nonnegative: true, g_submodular: true, g_monotone: true },
        )
        .unwrap();
        assert!(matches!(
            brute_force_opt(&inst, 1.0, 1.0),
            Err(RusmError::CheckInfeasible { n: 25, max: BRUTE_LIMIT })
        ));
    }
}
