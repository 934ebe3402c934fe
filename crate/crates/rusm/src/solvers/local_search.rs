//! Non-oblivious local search: hill-climbs the auxiliary potential
//! `h(T) = E[g(T(β))] + β(1+β)·ℓ(T)` over a filtered ground set, then
//! outputs an independent β-subsample of the local maximum, guarded by an
//! empty-set/singleton sweep.

use serde::{Deserialize, Serialize};

use crate::core::mask::SubsetMask;
use crate::core::oracle::RusmInstance;
use crate::core::rng::Seed;
use crate::core::{
    expected_marginal_under_subsample, expected_value_under_subsample, marginal, subsample,
    EXACT_LIMIT,
};
use crate::error::{Result, RusmError};
use crate::solvers::{
    alpha_of_beta, check_beta, Algorithm, MarginalMode, MoveKind, MoveRecord, SolverReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LsConfig {
    pub beta: f64,
    pub epsilon: f64,
    pub marginal_mode: MarginalMode,
    /// Replaces the theory-faithful sample count, which is astronomically
    /// large even at toy sizes (see [`paper_sample_count`]).
    #[serde(default)]
    pub sample_count_override: Option<u64>,
    /// Replaces the default move cap of `⌈4n²/ε⌉ + 1`.
    #[serde(default)]
    pub iteration_cap_override: Option<u64>,
    pub seed: Seed,
    /// When set, requires ε ∈ (0, α(β)), the range in which the output
    /// guarantee applies. Note the range is empty at β = 1.
    #[serde(default)]
    pub guarantee_mode: bool,
}

impl LsConfig {
    /// Exact-marginal configuration with the guarantee range enforced.
    pub fn exact(beta: f64, epsilon: f64, seed: Seed) -> Self {
        LsConfig {
            beta,
            epsilon,
            marginal_mode: MarginalMode::Exact,
            sample_count_override: None,
            iteration_cap_override: None,
            seed,
            guarantee_mode: true,
        }
    }

    /// Sampled-marginal configuration with an explicit per-estimate sample
    /// count; parameter validation is relaxed to the basic domains.
    pub fn sampled(beta: f64, epsilon: f64, samples: u64, seed: Seed) -> Self {
        LsConfig {
            beta,
            epsilon,
            marginal_mode: MarginalMode::Sampled,
            sample_count_override: Some(samples),
            iteration_cap_override: None,
            seed,
            guarantee_mode: false,
        }
    }
}

/// The theory-faithful per-estimate sample count
/// `⌈128·n⁴·ε⁻²·β²·ln(10n⁴/ε)⌉`, saturating at `u64::MAX`. Kept for
/// faithfulness; practical runs override it.
pub fn paper_sample_count(n: usize, epsilon: f64, beta: f64) -> u64 {
    let n4 = (n as f64).powi(4);
    let k = (128.0 * n4 * epsilon.powi(-2) * beta * beta * (10.0 * n4 / epsilon).ln()).ceil();
    if k.is_finite() {
        k.max(1.0) as u64
    } else {
        u64::MAX
    }
}

/// Which candidate won the final comparison of
/// `{algorithm output} ∪ {∅} ∪ {singletons}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LsWinner {
    Pool,
    Empty,
    Singleton { element: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LsDetails {
    /// Elements surviving the removal filter `α(β)·g(u) + β·ℓ(u) ≥ 0`.
    pub active_ground: SubsetMask,
    /// True when `max{g(∅), max_u g(u)} = 0` on the active ground, in which
    /// case `g` vanishes there and the search is skipped.
    pub zero_function_shortcut: bool,
    pub initial_set: SubsetMask,
    /// The local-search set T at loop exit (the pool the output is sampled
    /// from).
    pub final_pool: SubsetMask,
    /// Move threshold `Δ = (ε/2n)·max{g(∅), max_u g(u)}` with n the active
    /// ground size.
    pub delta: f64,
    pub iterations: u64,
    pub iteration_cap: u64,
    /// True when the loop exhausted its cap instead of reaching a state
    /// with no qualifying move.
    pub hit_cap: bool,
    /// Per-estimate sample count (sampled mode only).
    pub sample_count: Option<u64>,
    /// `g(T̂) + ℓ(T̂)` of the drawn sample before the non-negativity
    /// fallback and the final sweep (None on the shortcut path).
    pub pool_sample_value: Option<f64>,
    /// Exact-mode `E[g(T(β)) + ℓ(T(β))]` of the final pool: the quantity the
    /// in-expectation guarantee speaks about.
    pub expected_output_value: Option<f64>,
    pub winner: LsWinner,
}

fn omega_estimate(
    instance: &RusmInstance,
    u: usize,
    t: SubsetMask,
    beta: f64,
    mode: MarginalMode,
    samples: u64,
    rng: &mut rand_chacha::ChaCha12Rng,
) -> Result<f64> {
    match mode {
        MarginalMode::Exact => {
            Ok(beta * expected_marginal_under_subsample(&instance.g, u, t, beta)?)
        }
        MarginalMode::Sampled => {
            let mut total = 0.0;
            for _ in 0..samples {
                let draw = subsample(t, beta, rng)?;
                total += marginal(&instance.g, u, draw.without(u))?;
            }
            Ok(beta * total / samples as f64)
        }
    }
}

pub fn local_search(instance: &RusmInstance, config: &LsConfig) -> Result<SolverReport> {
    let beta = config.beta;
    let epsilon = config.epsilon;
    check_beta(beta)?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(RusmError::param("epsilon", format!("{epsilon} not a positive real")));
    }
    let alpha = alpha_of_beta(beta);
    if config.guarantee_mode && epsilon >= alpha {
        return Err(RusmError::param(
            "epsilon",
            format!("{epsilon} outside the guarantee range (0, {alpha}) for beta = {beta}"),
        ));
    }
    let samples = match config.marginal_mode {
        MarginalMode::Exact => 0,
        MarginalMode::Sampled => {
            let k = config.sample_count_override.unwrap_or(0);
            if config.sample_count_override.is_some() && k == 0 {
                return Err(RusmError::param("sample_count_override", "must be >= 1"));
            }
            k
        }
    };

    let inst = instance.fork();
    let n = inst.n();
    let mut rng = config.seed.rng();
    let weight = |u: usize| inst.ell.weight(u);

    let g_empty = inst.g.evaluate(SubsetMask::EMPTY);
    let g_single: Vec<f64> = (0..n).map(|u| inst.g.evaluate(SubsetMask::singleton(u))).collect();

    let active = SubsetMask::from_elements(
        (0..n).filter(|&u| alpha * g_single[u] + beta * weight(u) >= 0.0),
    );
    let initial = SubsetMask::from_elements(active.iter().filter(|&u| weight(u) > 0.0));
    let max_g = active.iter().map(|u| g_single[u]).fold(g_empty, f64::max);

    // Default per-estimate count, using the active ground size as n.
    let samples = match config.marginal_mode {
        MarginalMode::Sampled if samples == 0 => {
            paper_sample_count(active.card() as usize, epsilon, beta)
        }
        _ => samples,
    };

    let mut trace = Vec::new();
    let mut details = LsDetails {
        active_ground: active,
        zero_function_shortcut: false,
        initial_set: initial,
        final_pool: initial,
        delta: 0.0,
        iterations: 0,
        iteration_cap: 0,
        hit_cap: false,
        sample_count: match config.marginal_mode {
            MarginalMode::Sampled => Some(samples),
            MarginalMode::Exact => None,
        },
        pool_sample_value: None,
        expected_output_value: None,
        winner: LsWinner::Pool,
    };

    // Candidate produced by the search itself (before the final sweep), with
    // its g+ℓ value.
    let (pool_out, pool_value) = if max_g == 0.0 {
        // g vanishes on the active ground (submodularity bounds g(S) by the
        // singleton sum), so the positive-weight elements are already the
        // best subset of it.
        details.zero_function_shortcut = true;
        details.final_pool = initial;
        if config.marginal_mode == MarginalMode::Exact {
            // g vanishes on every subset of the pool, so the sampled-pool
            // expectation reduces to the β-scaled weight sum.
            details.expected_output_value = Some(beta * inst.ell.value(initial));
        }
        (initial, inst.objective(initial))
    } else {
        let n_active = active.card() as usize;
        if config.marginal_mode == MarginalMode::Exact && n_active > EXACT_LIMIT {
            return Err(RusmError::ExactLimitExceeded { n: n_active, limit: EXACT_LIMIT });
        }
        let delta = epsilon / (2.0 * n_active as f64) * max_g;
        assert!(delta > 0.0, "move threshold must be positive past the zero-function shortcut");
        let cap = config
            .iteration_cap_override
            .unwrap_or((4.0 * (n_active as f64).powi(2) / epsilon).ceil() as u64 + 1);
        details.delta = delta;
        details.iteration_cap = cap;

        let mut t = initial;
        let coef = beta * (1.0 + beta);
        let mut exited = false;
        for iteration in 1..=cap {
            let mut chosen: Option<(usize, MoveKind, f64)> = None;
            for u in active.minus(t).iter() {
                let q = omega_estimate(&inst, u, t, beta, config.marginal_mode, samples, &mut rng)?
                    + coef * weight(u);
                if q >= delta {
                    chosen = Some((u, MoveKind::Add, q));
                    break;
                }
            }
            if chosen.is_none() {
                for u in t.iter() {
                    let q =
                        omega_estimate(&inst, u, t, beta, config.marginal_mode, samples, &mut rng)?
                            + coef * weight(u);
                    if q <= -delta {
                        chosen = Some((u, MoveKind::Remove, -q));
                        break;
                    }
                }
            }
            match chosen {
                Some((u, kind, gain)) => {
                    t = match kind {
                        MoveKind::Add => t.with(u),
                        MoveKind::Remove => t.without(u),
                    };
                    trace.push(MoveRecord { iteration, kind, element: u, gain });
                    details.iterations = iteration;
                }
                None => {
                    exited = true;
                    break;
                }
            }
        }
        details.hit_cap = !exited;
        details.final_pool = t;

        if config.marginal_mode == MarginalMode::Exact {
            let expected_g = expected_value_under_subsample(&inst.g, t, beta)?;
            details.expected_output_value = Some(expected_g + beta * inst.ell.value(t));
        }

        let t_hat = subsample(t, beta, &mut rng)?;
        let sample_value = inst.objective(t_hat);
        details.pool_sample_value = Some(sample_value);
        if sample_value >= 0.0 {
            (t_hat, sample_value)
        } else {
            (SubsetMask::EMPTY, g_empty)
        }
    };

    // Final sweep: the returned set is the best of the algorithm's own
    // candidate, the empty set, and every singleton of the full ground set.
    let mut out = pool_out;
    let mut out_value = pool_value;
    if g_empty > out_value {
        out = SubsetMask::EMPTY;
        out_value = g_empty;
        details.winner = LsWinner::Empty;
    }
    for (u, &g_u) in g_single.iter().enumerate() {
        let v = g_u + weight(u);
        if v > out_value {
            out = SubsetMask::singleton(u);
            out_value = v;
            details.winner = LsWinner::Singleton { element: u };
        }
    }

    let g_value = inst.g.evaluate(out);
    let ell_value = inst.ell.value(out);
    Ok(SolverReport {
        algorithm: Algorithm::Ls,
        n,
        output_set: out,
        g_value,
        ell_value,
        objective: g_value + ell_value,
        oracle_queries: inst.g.query_count(),
        seed: Some(config.seed),
        move_trace: trace,
        ls: Some(details),
        dg_trace: None,
    })
}
