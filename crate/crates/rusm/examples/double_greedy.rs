//! Both double-greedy variants on a random cut instance, measured against
//! the exhaustive optimum.
//!
//! Run with `cargo run --example double_greedy`.

use rusm::core::rng::Seed;
use rusm::instances::{make_random_instance, EllSignRequest, RandomFamily, RandomInstanceConfig};
use rusm::solvers::{ascending_order, brute_force_opt, double_greedy_det, double_greedy_rand};

fn main() -> rusm::Result<()> {
    let config = RandomInstanceConfig {
        n: 10,
        family: RandomFamily::Cut,
        ell_sign: EllSignRequest::NonNegative,
    };
    let instance = make_random_instance(&config, &mut Seed::new(7, 0).rng())?;
    let order = ascending_order(config.n);

    let det = double_greedy_det(&instance, &order)?;
    println!(
        "deterministic: f = {:.4} on {:?} using {} oracle queries",
        det.objective, det.output_set, det.oracle_queries
    );

    // Proven floor for the deterministic variant with ℓ ≥ 0: a third of the
    // best g plus two thirds of the best ℓ, jointly optimized.
    let (opt_set, floor) = brute_force_opt(&instance, 1.0 / 3.0, 2.0 / 3.0)?;
    println!("  (1/3, 2/3) floor = {:.4}, witness optimum {:?}", floor, opt_set);
    assert!(det.objective >= floor);

    // The randomized variant trades a coin flip per element for a better
    // floor, (1/2, 3/4) here. The guarantee is on the mean.
    let trials = 4000;
    let mut mean = 0.0;
    for i in 0..trials {
        mean += double_greedy_rand(&instance, &order, Seed::new(7, i))?.objective;
    }
    mean /= trials as f64;
    let (_, rand_floor) = brute_force_opt(&instance, 0.5, 0.75)?;
    println!(
        "randomized: mean over {trials} trials = {mean:.4}, (1/2, 3/4) floor = {rand_floor:.4}"
    );
    assert!(mean >= rand_floor - 0.05);
    Ok(())
}
