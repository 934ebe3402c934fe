//! The two greedy algorithms and the non-oblivious local search, plus brute
//! force. Every solver returns a [`SolverReport`] whose values re-evaluate
//! exactly on the reported output set.

pub mod brute;
pub mod double_greedy;
pub mod local_search;

pub use brute::{brute_force_opt, brute_force_report, BRUTE_LIMIT};
pub use double_greedy::{ascending_order, double_greedy_det, double_greedy_rand};
pub use local_search::{local_search, paper_sample_count, LsConfig, LsDetails, LsWinner};

use serde::{Deserialize, Serialize};

use crate::core::mask::SubsetMask;
use crate::core::oracle::RusmInstance;
use crate::core::rng::Seed;
use crate::core::{expected_value_under_subsample, subsample};
use crate::error::{Result, RusmError};

/// `α(β) = β(1−β)/(1+β)`: the guarantee coefficient of the local search and
/// the filtering coefficient of its element-removal preprocessing.
pub fn alpha_of_beta(beta: f64) -> f64 {
    beta * (1.0 - beta) / (1.0 + beta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Ls,
    DgDet,
    DgRand,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarginalMode {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Add,
    Remove,
}

/// One executed change of the working set. For the local search `gain` is
/// the increase of the auxiliary potential h implied by the tested quantity
/// (exact in exact-marginal mode); for double greedy it is the accepted
/// marginal (`a_i` on add, `b_i` on remove).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub iteration: u64,
    pub kind: MoveKind,
    pub element: usize,
    pub gain: f64,
}

/// Per-element record of a double-greedy pass.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DgStep {
    pub element: usize,
    pub a: f64,
    pub b: f64,
    pub decision: MoveKind,
    pub x_card: u32,
    pub y_card: u32,
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct DgTrace {
    pub steps: Vec<DgStep>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub output_set: SubsetMask,
    pub g_value: f64,
    pub ell_value: f64,
    /// `g_value + ell_value`.
    pub objective: f64,
    /// Oracle queries spent by this invocation (each solver call counts on a
    /// fresh counter).
    pub oracle_queries: u64,
    /// Present for randomized algorithms only.
    pub seed: Option<Seed>,
    pub move_trace: Vec<MoveRecord>,
    pub ls: Option<LsDetails>,
    pub dg_trace: Option<DgTrace>,
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(RusmError::param("beta", format!("{beta} outside (0, 1]")));
    }
    Ok(())
}

/// The local search's auxiliary potential `h(S) = E[g(S(β))] + β(1+β)·ℓ(S)`,
/// with the expectation enumerated exactly over the `2^|S|` subsets.
pub fn aux_value_h(instance: &RusmInstance, s: SubsetMask, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let expected_g = expected_value_under_subsample(&instance.g, s, beta)?;
    Ok(expected_g + beta * (1.0 + beta) * instance.ell.value(s))
}

/// Monte-Carlo variant of [`aux_value_h`] for sets too large to enumerate.
pub fn aux_value_h_sampled(
    instance: &RusmInstance,
    s: SubsetMask,
    beta: f64,
    samples: u64,
    rng: &mut rand_chacha::ChaCha12Rng,
) -> Result<f64> {
    check_beta(beta)?;
    if samples == 0 {
        return Err(RusmError::param("samples", "at least one sample required"));
    }
    let mut total = 0.0;
    for _ in 0..samples {
        total += instance.g.evaluate(subsample(s, beta, rng)?);
    }
    Ok(total / samples as f64 + beta * (1.0 + beta) * instance.ell.value(s))
}
