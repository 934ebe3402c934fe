//! Ground sets, oracles, subsampling, the multilinear extension, and
//! symmetrization. Everything downstream (solvers, hard instances, gap
//! tooling) is built from these operations.

pub mod group;
pub mod mask;
pub mod oracle;
pub mod rng;

use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Result, RusmError};
use group::{DistributionVector, PermutationGroup};
use mask::{SubsetMask, MAX_GROUND};
use oracle::SetFunctionOracle;

/// Largest set size for which exact expectations are computed by enumerating
/// all subsets (2^20 oracle calls, about a second).
pub const EXACT_LIMIT: usize = 20;

/// `f(S ∪ {u}) − f(S)`. Always spends exactly two oracle queries, also when
/// `u ∈ S` (the difference is then exactly zero because the oracle is
/// deterministic).
pub fn marginal(f: &SetFunctionOracle, u: usize, s: SubsetMask) -> Result<f64> {
    if u >= MAX_GROUND {
        return Err(RusmError::IndexOutOfRange { index: u, n: MAX_GROUND });
    }
    Ok(f.evaluate(s.with(u)) - f.evaluate(s))
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(RusmError::param(name, format!("{p} outside [0, 1]")));
    }
    Ok(())
}

/// Independent p-subsample of `S`: keeps each element with probability `p`.
pub fn subsample(s: SubsetMask, p: f64, rng: &mut ChaCha12Rng) -> Result<SubsetMask> {
    check_probability("p", p)?;
    let mut kept = SubsetMask::EMPTY;
    for u in s.iter() {
        if rng.gen_bool(p) {
            kept = kept.with(u);
        }
    }
    Ok(kept)
}

/// `F(x) = Σ_S f(S)·Π_{u∈S} x_u·Π_{u∉S} (1−x_u)` by full enumeration; spends
/// exactly `2^n` queries. At a 0/1 vertex every weight is exactly 0 or 1, so
/// `F(χ_S) = f(S)` bit-exactly.
pub fn multilinear_exact(f: &SetFunctionOracle, x: &DistributionVector) -> Result<f64> {
    let n = x.n();
    if n > EXACT_LIMIT {
        return Err(RusmError::ExactLimitExceeded { n, limit: EXACT_LIMIT });
    }
    let mut total = 0.0;
    for s in SubsetMask::full(n).subsets() {
        let mut weight = 1.0;
        for u in 0..n {
            weight *= if s.contains(u) { x.coord(u) } else { 1.0 - x.coord(u) };
        }
        total += weight * f.evaluate(s);
    }
    Ok(total)
}

/// Monte-Carlo estimate of `F(x)`: mean of `num_samples` independent draws of
/// `f(RSet(x))`, with the standard error of that mean (zero when fewer than
/// two samples).
pub fn multilinear_mc(
    f: &SetFunctionOracle,
    x: &DistributionVector,
    num_samples: u64,
    rng: &mut ChaCha12Rng,
) -> Result<(f64, f64)> {
    if num_samples == 0 {
        return Err(RusmError::param("num_samples", "at least one sample required"));
    }
    let n = x.n();
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for k in 1..=num_samples {
        let mut s = SubsetMask::EMPTY;
        for u in 0..n {
            if rng.gen_bool(x.coord(u)) {
                s = s.with(u);
            }
        }
        let v = f.evaluate(s);
        let d = v - mean;
        mean += d / k as f64;
        m2 += d * (v - mean);
    }
    let stderr = if num_samples >= 2 {
        (m2 / (num_samples - 1) as f64 / num_samples as f64).sqrt()
    } else {
        0.0
    };
    Ok((mean, stderr))
}

/// Orbit-mean symmetrization `x̄`: the expected indicator vector of `σ(S)`
/// under a uniformly random group element.
pub fn symmetrize(x: &DistributionVector, group: &PermutationGroup) -> Result<DistributionVector> {
    group.symmetrize(x)
}

/// Exact `E[f(S(p))]` over the independent p-subsample of `S`, by enumerating
/// the `2^|S|` subsets.
pub fn expected_value_under_subsample(f: &SetFunctionOracle, s: SubsetMask, p: f64) -> Result<f64> {
    check_probability("p", p)?;
    let card = s.card() as usize;
    if card > EXACT_LIMIT {
        return Err(RusmError::ExactLimitExceeded { n: card, limit: EXACT_LIMIT });
    }
    let mut total = 0.0;
    for r in s.subsets() {
        let k = r.card() as i32;
        total += p.powi(k) * (1.0 - p).powi(card as i32 - k) * f.evaluate(r);
    }
    Ok(total)
}

/// Exact `E[f(u | S(p) − u)]`: the expected marginal of `u` onto the
/// p-subsample of `S ∖ {u}`.
pub fn expected_marginal_under_subsample(
    f: &SetFunctionOracle,
    u: usize,
    s: SubsetMask,
    p: f64,
) -> Result<f64> {
    check_probability("p", p)?;
    if u >= MAX_GROUND {
        return Err(RusmError::IndexOutOfRange { index: u, n: MAX_GROUND });
    }
    let base = s.without(u);
    let card = base.card() as usize;
    if card > EXACT_LIMIT {
        return Err(RusmError::ExactLimitExceeded { n: card, limit: EXACT_LIMIT });
    }
    let mut total = 0.0;
    for r in base.subsets() {
        let k = r.card() as i32;
        let weight = p.powi(k) * (1.0 - p).powi(card as i32 - k);
        total += weight * (f.evaluate(r.with(u)) - f.evaluate(r));
    }
    Ok(total)
}

/// Empirical check of the subsampling bound `E[f(A_p)] ≥ (1−p)·f(∅) + p·f(A)`
/// for non-negative submodular `f`: true iff the sample mean over `trials`
/// draws is at least the right side minus four standard errors.
pub fn sampling_lemma_check(
    f: &SetFunctionOracle,
    a: SubsetMask,
    p: f64,
    trials: u64,
    rng: &mut ChaCha12Rng,
) -> Result<bool> {
    check_probability("p", p)?;
    if trials == 0 {
        return Err(RusmError::param("trials", "at least one trial required"));
    }
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for k in 1..=trials {
        let v = f.evaluate(subsample(a, p, rng)?);
        let d = v - mean;
        mean += d / k as f64;
        m2 += d * (v - mean);
    }
    let stderr = if trials >= 2 { (m2 / (trials - 1) as f64 / trials as f64).sqrt() } else { 0.0 };
    let rhs = (1.0 - p) * f.evaluate(SubsetMask::EMPTY) + p * f.evaluate(a);
    Ok(mean >= rhs - 4.0 * stderr)
}

/// Zero-tolerance variant of [`sampling_lemma_check`]: compares the exact
/// enumerated expectation against the bound with no statistical slack.
pub fn sampling_lemma_check_exact(f: &SetFunctionOracle, a: SubsetMask, p: f64) -> Result<bool> {
    let lhs = expected_value_under_subsample(f, a, p)?;
    let rhs = (1.0 - p) * f.evaluate(SubsetMask::EMPTY) + p * f.evaluate(a);
    Ok(lhs >= rhs)
}
