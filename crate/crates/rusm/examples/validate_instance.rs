//! Exhaustive property validation: passing families, and witnesses pulled
//! from functions that break a property.
//!
//! Run with `cargo run --example validate_instance`.

use rusm::core::mask::{GroundSet, SubsetMask};
use rusm::core::oracle::{EllSign, InstanceFlags, LinearWeights, RusmInstance, SetFunctionOracle};
use rusm::instances::validate::{validate, Property};
use rusm::instances::HardInstanceDescriptor;

fn show(report: &rusm::instances::validate::ValidationReport) {
    print!(
        "{} on n = {}: {}",
        report.property,
        report.n,
        if report.passed { "pass" } else { "fail" }
    );
    match &report.witness {
        Some(w) => println!(", witness {}", serde_json::to_string(w).unwrap()),
        None => println!(" after {} checks", report.checks),
    }
}

fn main() -> rusm::Result<()> {
    // The paired-parity family is submodular and non-negative but not
    // monotone: removing an anchor can raise g.
    let paired = HardInstanceDescriptor::paired_parity(3, 2.0, 0.4)?.build()?.instance;
    show(&validate(&paired, Property::GNonNegative)?);
    show(&validate(&paired, Property::GSubmodular)?);
    show(&validate(&paired, Property::GMonotone)?);
    show(&validate(&paired, Property::EllSign(EllSign::NonPositive))?);

    // g(S) = |S|² is the textbook supermodular function; the validator
    // finds the smallest violating triple.
    let square = RusmInstance::new(
        GroundSet::new(4)?,
        SetFunctionOracle::new(|s: SubsetMask| (s.card() as f64).powi(2)),
        LinearWeights::zeros(4),
        InstanceFlags { g_nonnegative: true, g_submodular: false, g_monotone: true },
    )?;
    show(&validate(&square, Property::GSubmodular)?);

    // The lattice form g(S) + g(T) ≥ g(S∪T) + g(S∩T) is the slower
    // cross-check; it agrees.
    show(&validate(&square, Property::GSubmodularLattice)?);
    Ok(())
}
