//! Non-oblivious local search at several β on an instance whose ℓ has both
//! signs, showing the (α(β), β) trade-off it navigates.
//!
//! Run with `cargo run --example local_search`.

use rusm::core::oracle::LinearWeights;
use rusm::core::rng::Seed;
use rusm::instances::make_cut_instance;
use rusm::solvers::{alpha_of_beta, brute_force_opt, local_search, LsConfig};

fn main() -> rusm::Result<()> {
    // A path graph with a reward for one endpoint and penalties elsewhere.
    let instance = make_cut_instance(
        vec![(0, 1, 1.0), (1, 2, 0.6), (2, 3, 0.8), (3, 4, 0.5), (4, 5, 0.9)],
        LinearWeights::new(vec![0.4, -0.3, 0.2, -0.5, 0.1, -0.2])?,
    )?;

    for beta in [0.3, 0.5, 0.7] {
        let alpha = alpha_of_beta(beta);
        let epsilon = 0.05 * alpha;
        let config = LsConfig::exact(beta, epsilon, Seed::new(42, 0));
        let report = local_search(&instance, &config)?;
        let details = report.ls.as_ref().expect("local search reports its internals");

        // The guarantee lower-bounds the expected output against every set,
        // in particular the (α−ε, β−ε)-weighted optimum.
        let (_, target) = brute_force_opt(&instance, alpha - epsilon, beta - epsilon)?;
        let expected = details.expected_output_value.expect("exact mode");
        let guaranteed = expected.max(report.objective);

        println!(
            "β = {beta}: pool {:?} after {} moves, sampled output {:?} worth {:.4}",
            details.final_pool, details.iterations, report.output_set, report.objective
        );
        println!(
            "  E[output] = {expected:.4} vs (α−ε, β−ε) target {target:.4}  (α(β) = {alpha:.4})"
        );
        assert!(guaranteed >= target - 1e-9);
    }
    Ok(())
}
