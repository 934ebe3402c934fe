//! Repeatable multi-trial runs with guarantee checks against exhaustive
//! optima.
//!
//! An experiment runs one algorithm on one instance for `trials`
//! independent trials (trial `i` uses random stream `(master_seed, i)`),
//! then tests the mean objective against `max_S α·g(S) + β·ℓ(S)` for each
//! requested `(α, β)`. Checks inside the algorithm's proven region are
//! labeled `guaranteed`; anything else is `exploratory`.

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::core::mask::SubsetMask;
use crate::core::oracle::{EllSign, RusmInstance};
use crate::core::rng::Seed;
use crate::error::{Result, RusmError};
use crate::harness::io::{load_instance, write_trials_csv};
use crate::instances::{make_random_instance, HardInstanceDescriptor, RandomInstanceConfig};
use crate::solvers::{
    alpha_of_beta, ascending_order, brute_force_opt, brute_force_report, double_greedy_det,
    double_greedy_rand, local_search, Algorithm, LsConfig, MarginalMode, SolverReport, BRUTE_LIMIT,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum InstanceSource {
    File {
        path: PathBuf,
    },
    Hard {
        descriptor: HardInstanceDescriptor,
    },
    /// Generated instance; `gen_seed` feeds the generator only, trial
    /// randomness stays with the experiment's master seed.
    Random {
        config: RandomInstanceConfig,
        gen_seed: u64,
    },
}

impl InstanceSource {
    pub fn build(&self) -> Result<RusmInstance> {
        match self {
            InstanceSource::File { path } => load_instance(path),
            InstanceSource::Hard { descriptor } => Ok(descriptor.build()?.instance),
            InstanceSource::Random { config, gen_seed } => {
                make_random_instance(config, &mut Seed::new(*gen_seed, 0).rng())
            }
        }
    }
}

/// Algorithm knobs; anything an algorithm does not use is ignored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverParams {
    /// Local search only; required there.
    pub beta: Option<f64>,
    /// Local search slack parameter, default `0.05·α(β)`.
    pub epsilon: Option<f64>,
    /// Local search only, default exact.
    pub marginal_mode: Option<MarginalMode>,
    /// Sample count per marginal estimate; required in sampled mode.
    pub samples: Option<u64>,
}

/// One requested `(α, β)` guarantee check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub instance: InstanceSource,
    pub algorithm: Algorithm,
    #[serde(default)]
    pub params: SolverParams,
    pub trials: u64,
    pub master_seed: u64,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
    /// Result JSON destination; omit to skip writing.
    #[serde(default)]
    pub result_path: Option<PathBuf>,
    /// Per-trial CSV destination; omit to skip writing.
    #[serde(default)]
    pub trials_csv_path: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckLabel {
    /// The requested `(α, β)` is implied by the algorithm's proven
    /// approximation region on this instance class.
    Guaranteed,
    Exploratory,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GuaranteeCheckResult {
    pub alpha: f64,
    pub beta: f64,
    pub label: CheckLabel,
    /// `max_S α·g(S) + β·ℓ(S)` by exhaustive scan.
    pub rhs: f64,
    pub witness_set: SubsetMask,
    /// Allowance subtracted from `rhs`: `4·stderr` for randomized
    /// algorithms, `0` for deterministic ones.
    pub slack: f64,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial: u64,
    pub seed: Seed,
    pub g_value: f64,
    pub ell_value: f64,
    pub total: f64,
    pub queries: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub spec: ExperimentSpec,
    pub n: usize,
    pub ell_sign: EllSign,
    pub mean: f64,
    /// Sample standard deviation (k−1 denominator) over `√k`; `0` for a
    /// single trial.
    pub stderr: f64,
    pub total_queries: u64,
    pub checks: Vec<GuaranteeCheckResult>,
    pub rows: Vec<TrialRow>,
    pub wall_time_ms: u64,
}

impl ExperimentResult {
    /// Serialization with the wall time zeroed, so identical specs produce
    /// byte-identical files.
    pub fn canonical_json(&self) -> Result<String> {
        let mut canonical = self.clone();
        canonical.wall_time_ms = 0;
        let mut text = serde_json::to_string_pretty(&canonical)?;
        text.push('\n');
        Ok(text)
    }
}

fn ls_config(params: &SolverParams, seed: Seed) -> Result<LsConfig> {
    let beta = params.beta.ok_or_else(|| RusmError::param("beta", "local search needs beta"))?;
    let epsilon = params.epsilon.unwrap_or_else(|| 0.05 * alpha_of_beta(beta));
    match params.marginal_mode.unwrap_or(MarginalMode::Exact) {
        MarginalMode::Exact => Ok(LsConfig::exact(beta, epsilon, seed)),
        MarginalMode::Sampled => {
            let samples = params.samples.ok_or_else(|| {
                RusmError::param("samples", "sampled marginal mode needs a sample count")
            })?;
            Ok(LsConfig::sampled(beta, epsilon, samples, seed))
        }
    }
}

/// One algorithm invocation on a fresh query counter.
pub fn run_one(
    instance: &RusmInstance,
    algorithm: Algorithm,
    params: &SolverParams,
    seed: Seed,
) -> Result<SolverReport> {
    match algorithm {
        Algorithm::Ls => local_search(instance, &ls_config(params, seed)?),
        Algorithm::DgDet => double_greedy_det(instance, &ascending_order(instance.ground.n())),
        Algorithm::DgRand => {
            double_greedy_rand(instance, &ascending_order(instance.ground.n()), seed)
        }
        Algorithm::Brute => brute_force_report(instance),
    }
}

const LABEL_TOL: f64 = 1e-9;

/// Whether a proven pair `(alpha_max, beta_have)` implies the requested
/// `(alpha, beta)` for every feasible `S`, given `g ≥ 0` and the sign of
/// `ℓ`. The `β` component matters only in the direction `ℓ` can point.
fn pair_implied(alpha: f64, beta: f64, alpha_max: f64, beta_have: f64, sign: EllSign) -> bool {
    if alpha < -LABEL_TOL || beta < -LABEL_TOL || alpha > alpha_max + LABEL_TOL {
        return false;
    }
    match sign {
        EllSign::Zero => true,
        EllSign::NonNegative => beta <= beta_have + LABEL_TOL,
        EllSign::NonPositive => beta >= beta_have - LABEL_TOL,
        EllSign::Mixed => (beta - beta_have).abs() <= LABEL_TOL,
    }
}

fn guarantee_label(
    instance: &RusmInstance,
    algorithm: Algorithm,
    params: &SolverParams,
    check: CheckSpec,
) -> Result<CheckLabel> {
    let sign = instance.ell.sign();
    let flags_ok = instance.flags.g_nonnegative && instance.flags.g_submodular;
    let nonneg_ell = matches!(sign, EllSign::Zero | EllSign::NonNegative);
    let implied = match algorithm {
        Algorithm::Brute => pair_implied(check.alpha, check.beta, 1.0, 1.0, sign),
        // The double-greedy guarantees form the family (α', 1−α') for
        // α' ∈ [0, α_cap] (halve the trade for the randomized variant);
        // with ℓ ≥ 0 the weakest useful member has α' = max(alpha, 0).
        Algorithm::DgDet => {
            flags_ok
                && nonneg_ell
                && pair_implied(
                    check.alpha,
                    check.beta,
                    1.0 / 3.0,
                    1.0 - check.alpha.max(0.0),
                    sign,
                )
        }
        Algorithm::DgRand => {
            flags_ok
                && nonneg_ell
                && pair_implied(
                    check.alpha,
                    check.beta,
                    0.5,
                    1.0 - check.alpha.max(0.0) / 2.0,
                    sign,
                )
        }
        Algorithm::Ls => {
            let config = ls_config(params, Seed::new(0, 0))?;
            flags_ok
                && config.marginal_mode == MarginalMode::Exact
                && pair_implied(
                    check.alpha,
                    check.beta,
                    alpha_of_beta(config.beta) - config.epsilon,
                    config.beta - config.epsilon,
                    sign,
                )
        }
    };
    Ok(if implied { CheckLabel::Guaranteed } else { CheckLabel::Exploratory })
}

fn is_randomized(algorithm: Algorithm) -> bool {
    matches!(algorithm, Algorithm::Ls | Algorithm::DgRand)
}

fn thread_count_from_env() -> Option<usize> {
    std::env::var("RUSM_THREADS").ok()?.parse().ok().filter(|&k| k > 0)
}

pub(crate) fn run_experiment_with_threads(
    spec: &ExperimentSpec,
    threads: Option<usize>,
) -> Result<ExperimentResult> {
    let started = Instant::now();
    if spec.trials == 0 {
        return Err(RusmError::param("trials", "need at least one trial"));
    }
    let instance = spec.instance.build()?;
    let n = instance.ground.n();
    if !spec.checks.is_empty() && n > BRUTE_LIMIT {
        return Err(RusmError::CheckInfeasible { n, max: BRUTE_LIMIT });
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| RusmError::param("RUSM_THREADS", e.to_string()))?;
    let mut rows: Vec<TrialRow> = pool.install(|| {
        (0..spec.trials)
            .into_par_iter()
            .map(|trial| {
                let seed = Seed::new(spec.master_seed, trial);
                let report = run_one(&instance, spec.algorithm, &spec.params, seed)?;
                Ok(TrialRow {
                    trial,
                    seed,
                    g_value: report.g_value,
                    ell_value: report.ell_value,
                    total: report.objective,
                    queries: report.oracle_queries,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    // Trials are independent, so any schedule yields the same rows; sorting
    // makes the aggregation order fixed as well.
    rows.sort_by_key(|r| r.trial);

    let k = rows.len() as f64;
    let mean = rows.iter().map(|r| r.total).sum::<f64>() / k;
    let stderr = if rows.len() < 2 {
        0.0
    } else {
        let var = rows.iter().map(|r| (r.total - mean).powi(2)).sum::<f64>() / (k - 1.0);
        (var / k).sqrt()
    };
    let total_queries = rows.iter().map(|r| r.queries).sum();

    let slack = if is_randomized(spec.algorithm) { 4.0 * stderr } else { 0.0 };
    let mut checks = Vec::with_capacity(spec.checks.len());
    for &check in &spec.checks {
        let (witness_set, rhs) = brute_force_opt(&instance, check.alpha, check.beta)?;
        checks.push(GuaranteeCheckResult {
            alpha: check.alpha,
            beta: check.beta,
            label: guarantee_label(&instance, spec.algorithm, &spec.params, check)?,
            rhs,
            witness_set,
            slack,
            passed: mean >= rhs - slack,
        });
    }

    let result = ExperimentResult {
        spec: spec.clone(),
        n,
        ell_sign: instance.ell.sign(),
        mean,
        stderr,
        total_queries,
        checks,
        rows,
        wall_time_ms: started.elapsed().as_millis() as u64,
    };
    if let Some(path) = &spec.result_path {
        std::fs::write(path, result.canonical_json()?)?;
    }
    if let Some(path) = &spec.trials_csv_path {
        let mut buf = Vec::new();
        write_trials_csv(&result.rows, &mut buf)?;
        std::fs::write(path, buf)?;
    }
    Ok(result)
}

/// Runs the experiment, parallelizing trials across `RUSM_THREADS` threads
/// (all cores when unset). Spec-identical runs produce identical rows and
/// identical output files regardless of thread count.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    run_experiment_with_threads(spec, thread_count_from_env())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{EllSignRequest, RandomFamily};

    fn random_source(n: usize, sign: EllSignRequest, gen_seed: u64) -> InstanceSource {
        InstanceSource::Random {
            config: RandomInstanceConfig { n, family: RandomFamily::Cut, ell_sign: sign },
            gen_seed,
        }
    }

    fn base_spec(algorithm: Algorithm, source: InstanceSource) -> ExperimentSpec {
        ExperimentSpec {
            name: "test".into(),
            instance: source,
            algorithm,
            params: SolverParams::default(),
            trials: 5,
            master_seed: 11,
            checks: vec![],
            result_path: None,
            trials_csv_path: None,
        }
    }

    #[test]
    fn deterministic_algorithm_has_zero_spread() {
        let mut spec =
            base_spec(Algorithm::DgDet, random_source(8, EllSignRequest::NonNegative, 3));
        spec.checks = vec![
            CheckSpec { alpha: 1.0 / 3.0, beta: 2.0 / 3.0 },
            CheckSpec { alpha: 0.4, beta: 0.6 },
        ];
        let result = run_experiment(&spec).unwrap();
        assert_eq!(result.rows.len(), 5);
        assert!(result.rows.iter().all(|r| r.total == result.rows[0].total));
        assert_eq!(result.stderr, 0.0);
        assert_eq!(result.checks[0].label, CheckLabel::Guaranteed);
        assert_eq!(result.checks[0].slack, 0.0);
        assert!(result.checks[0].passed);
        // α = 0.4 exceeds the deterministic variant's region.
        assert_eq!(result.checks[1].label, CheckLabel::Exploratory);
        assert_eq!(result.total_queries, result.rows.iter().map(|r| r.queries).sum::<u64>());
    }

    #[test]
    fn thread_count_does_not_change_rows_or_bytes() {
        let mut spec =
            base_spec(Algorithm::DgRand, random_source(9, EllSignRequest::NonNegative, 5));
        spec.trials = 40;
        spec.checks = vec![CheckSpec { alpha: 0.5, beta: 0.75 }];
        let serial = run_experiment_with_threads(&spec, Some(1)).unwrap();
        let parallel = run_experiment_with_threads(&spec, Some(4)).unwrap();
        assert_eq!(serial.rows, parallel.rows);
        assert_eq!(serial.canonical_json().unwrap(), parallel.canonical_json().unwrap());
        // Distinct streams actually randomize: not every trial is equal.
        assert!(serial.rows.iter().any(|r| r.total != serial.rows[0].total));
    }

    #[test]
    fn result_files_are_written_and_reproducible() {
        let dir = tempfile::tempdir().unwrap();
        let mut spec = base_spec(Algorithm::DgRand, random_source(7, EllSignRequest::Mixed, 9));
        spec.result_path = Some(dir.path().join("result.json"));
        spec.trials_csv_path = Some(dir.path().join("trials.csv"));
        run_experiment(&spec).unwrap();
        let first = std::fs::read(dir.path().join("result.json")).unwrap();
        run_experiment(&spec).unwrap();
        let second = std::fs::read(dir.path().join("result.json")).unwrap();
        assert_eq!(first, second);

        let csv = std::fs::read_to_string(dir.path().join("trials.csv")).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "trial,seed,g_value,ell_value,total,queries");
        assert!(lines[1].starts_with("0,11:0,"));

        let parsed: serde_json::Value = serde_json::from_slice(&first).unwrap();
        assert_eq!(parsed["wall_time_ms"], 0);
        assert_eq!(parsed["spec"]["name"], "test");
    }

    #[test]
    fn local_search_checks_label_by_its_own_beta() {
        let mut spec = base_spec(Algorithm::Ls, random_source(6, EllSignRequest::Mixed, 21));
        spec.params.beta = Some(0.5);
        spec.trials = 64;
        let alpha = alpha_of_beta(0.5);
        let eps = 0.05 * alpha;
        spec.checks = vec![
            CheckSpec { alpha: alpha - eps, beta: 0.5 - eps },
            CheckSpec { alpha: alpha - eps, beta: 0.5 },
            CheckSpec { alpha: 0.05, beta: 0.5 - eps },
        ];
        let result = run_experiment(&spec).unwrap();
        assert_eq!(result.checks[0].label, CheckLabel::Guaranteed);
        // With mixed-sign ℓ the β component must match exactly.
        assert_eq!(result.checks[1].label, CheckLabel::Exploratory);
        assert_eq!(result.checks[2].label, CheckLabel::Guaranteed);
        assert!(result.checks[0].slack > 0.0);
        assert!(result.checks[0].passed);
    }

    #[test]
    fn infeasible_checks_and_bad_params_are_rejected() {
        let spec = ExperimentSpec {
            checks: vec![CheckSpec { alpha: 1.0, beta: 1.0 }],
            ..base_spec(
                Algorithm::DgDet,
                InstanceSource::Hard {
                    descriptor: HardInstanceDescriptor::capped_cardinality(30, 0.5).unwrap(),
                },
            )
        };
        assert!(matches!(
            run_experiment(&spec).unwrap_err(),
            RusmError::CheckInfeasible { n: 30, max } if max == BRUTE_LIMIT
        ));

        let mut spec = base_spec(Algorithm::Ls, random_source(6, EllSignRequest::Mixed, 2));
        assert!(matches!(
            run_experiment(&spec).unwrap_err(),
            RusmError::InvalidParameter { name, .. } if name == "beta"
        ));
        spec.params.beta = Some(0.5);
        spec.params.marginal_mode = Some(MarginalMode::Sampled);
        assert!(matches!(
            run_experiment(&spec).unwrap_err(),
            RusmError::InvalidParameter { name, .. } if name == "samples"
        ));
        spec.params.marginal_mode = None;
        spec.trials = 0;
        assert!(matches!(
            run_experiment(&spec).unwrap_err(),
            RusmError::InvalidParameter { name, .. } if name == "trials"
        ));
    }

    #[test]
    fn spec_round_trips_through_json() {
        let mut spec =
            base_spec(Algorithm::DgRand, random_source(6, EllSignRequest::NonPositive, 1));
        spec.params.beta = Some(0.25);
        spec.checks = vec![CheckSpec { alpha: 0.1, beta: 0.9 }];
        let text = serde_json::to_string(&spec).unwrap();
        let back: ExperimentSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        assert!(text.contains("\"source\":\"random\""));
        assert!(text.contains("\"algorithm\":\"dg-rand\""));
    }
}
