//! The four approximability curves over a β grid: what any algorithm can
//! hope for, and what the algorithms here achieve.
//!
//! Run with `cargo run --example hardness_curves`.

use rusm::hardness::{
    alpha_algo_negative, alpha_general, alpha_monotone, alpha_negative, emit_curves,
    NegativeCurveConfig,
};

fn main() -> rusm::Result<()> {
    println!(
        "{:>5}  {:>14} {:>14} {:>14} {:>14}",
        "β", "monotone cap", "general cap", "ℓ≤0 cap", "ℓ≤0 achieved"
    );
    for i in 0..=10 {
        let beta = i as f64 / 10.0;
        let negative = alpha_negative(beta, NegativeCurveConfig::CoarseGridRefine)?;
        let general = if beta > 0.0 { alpha_general(beta)? } else { 0.0 };
        println!(
            "{beta:>5.1}  {:>14.6} {:>14.6} {:>14.6} {:>14.6}",
            alpha_monotone(beta)?,
            general,
            negative.alpha,
            alpha_algo_negative(beta)?
        );
    }

    // The ℓ ≤ 0 cap comes from a two-parameter instance family; its worst
    // case at β = 1 sits away from the unit corner.
    let at_one = alpha_negative(1.0, NegativeCurveConfig::DenseScanRefine)?;
    println!(
        "\nworst case at β = 1: α = {:.8} attained at t = {:.4}, r = {:.6}",
        at_one.alpha, at_one.t, at_one.r
    );

    // Machine-readable form, exactly what `rusm curve` writes.
    let points = emit_curves(&[0.0, 0.5, 1.0])?;
    println!("\nbeta,curve_id,alpha");
    for p in &points {
        println!("{},{},{}", p.beta, p.curve_id, p.alpha);
    }
    Ok(())
}
