//! Command-line front end.
//!
//! Exit codes: `0` success, `1` a required check failed (a guaranteed
//! experiment check, a gap inequality, or a validated property), `2` usage
//! or input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::core::oracle::EllSign;
use crate::core::rng::Seed;
use crate::error::{Result, RusmError};
use crate::hardness::{emit_curves, verify_gap, verify_gap_with_slack};
use crate::harness::experiment::{
    run_experiment, run_one, CheckLabel, CheckSpec, ExperimentSpec, InstanceSource, SolverParams,
};
use crate::harness::io::write_curves_csv;
use crate::instances::validate::{validate, Property};
use crate::instances::{
    EllSignRequest, HardInstanceDescriptor, RandomFamily, RandomInstanceConfig,
};
use crate::solvers::{Algorithm, MarginalMode};

#[derive(Parser)]
#[command(
    name = "rusm",
    version,
    about = "Maximize g(S) + ℓ(S) for non-negative submodular g and linear ℓ"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Ls,
    DgDet,
    DgRand,
    Brute,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Algorithm {
        match a {
            AlgorithmArg::Ls => Algorithm::Ls,
            AlgorithmArg::DgDet => Algorithm::DgDet,
            AlgorithmArg::DgRand => Algorithm::DgRand,
            AlgorithmArg::Brute => Algorithm::Brute,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MarginalModeArg {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RandomArg {
    Cut,
    Coverage,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Mixed,
    NonNegative,
    NonPositive,
    Zero,
}

impl From<SignArg> for EllSignRequest {
    fn from(s: SignArg) -> EllSignRequest {
        match s {
            SignArg::Mixed => EllSignRequest::Mixed,
            SignArg::NonNegative => EllSignRequest::NonNegative,
            SignArg::NonPositive => EllSignRequest::NonPositive,
            SignArg::Zero => EllSignRequest::Zero,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    Nonnegative,
    Submodular,
    Lattice,
    Monotone,
    Sign,
}

/// Instance selection, shared by `solve`, `verify`, and `validate`. Exactly
/// one of `--file`, `--family`, `--random`.
#[derive(Args, Clone, Debug)]
struct InstanceArgs {
    /// Instance JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Hard-family kind: monotone_sec3, negative_sec5, or positive_sec61.
    #[arg(long)]
    family: Option<String>,
    /// Seed-generated random instance.
    #[arg(long, value_enum)]
    random: Option<RandomArg>,
    /// Family size parameter (--family) or ground-set size (--random).
    #[arg(long)]
    n: Option<usize>,
    /// Per-element cost for monotone_sec3 and negative_sec5.
    #[arg(long)]
    r: Option<f64>,
    /// Parity bonus height for negative_sec5.
    #[arg(long)]
    t: Option<f64>,
    /// Sign of the generated ℓ (--random).
    #[arg(long, value_enum, default_value_t = SignArg::Mixed)]
    ell_sign: SignArg,
    /// Generator seed (--random).
    #[arg(long, default_value_t = 0)]
    gen_seed: u64,
}

fn need<T: Copy>(value: Option<T>, name: &'static str, context: &str) -> Result<T> {
    value.ok_or_else(|| RusmError::param(name, format!("required with {context}")))
}

/// Builds a descriptor from `--family`-style flags. `n` is the family's own
/// size parameter: ground size for monotone_sec3, pair count for
/// negative_sec5, satellite count for positive_sec61.
fn descriptor_from_flags(
    family: &str,
    n: Option<usize>,
    r: Option<f64>,
    t: Option<f64>,
) -> Result<HardInstanceDescriptor> {
    let n = need(n, "n", "--family")?;
    match family {
        "monotone_sec3" => {
            HardInstanceDescriptor::capped_cardinality(n, need(r, "r", "monotone_sec3")?)
        }
        "negative_sec5" => HardInstanceDescriptor::paired_parity(
            n,
            need(t, "t", "negative_sec5")?,
            need(r, "r", "negative_sec5")?,
        ),
        "positive_sec61" => HardInstanceDescriptor::parity_bonus(n),
        other => Err(RusmError::param("family", format!("unknown family {other:?}"))),
    }
}

impl InstanceArgs {
    fn source(&self) -> Result<InstanceSource> {
        let picks =
            self.file.is_some() as u8 + self.family.is_some() as u8 + self.random.is_some() as u8;
        if picks != 1 {
            return Err(RusmError::param(
                "instance",
                "pick exactly one of --file, --family, --random",
            ));
        }
        if let Some(path) = &self.file {
            return Ok(InstanceSource::File { path: path.clone() });
        }
        if let Some(family) = &self.family {
            let descriptor = descriptor_from_flags(family, self.n, self.r, self.t)?;
            return Ok(InstanceSource::Hard { descriptor });
        }
        let family = match self.random.unwrap() {
            RandomArg::Cut => RandomFamily::Cut,
            RandomArg::Coverage => RandomFamily::Coverage,
        };
        Ok(InstanceSource::Random {
            config: RandomInstanceConfig {
                n: need(self.n, "n", "--random")?,
                family,
                ell_sign: self.ell_sign.into(),
            },
            gen_seed: self.gen_seed,
        })
    }
}

#[derive(Args, Clone, Copy, Debug)]
struct ParamArgs {
    /// Local search trade-off parameter.
    #[arg(long)]
    beta: Option<f64>,
    /// Local search slack, default 0.05·α(β).
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, value_enum)]
    marginal_mode: Option<MarginalModeArg>,
    /// Samples per marginal estimate (sampled mode).
    #[arg(long)]
    samples: Option<u64>,
}

impl From<ParamArgs> for SolverParams {
    fn from(p: ParamArgs) -> SolverParams {
        SolverParams {
            beta: p.beta,
            epsilon: p.epsilon,
            marginal_mode: p.marginal_mode.map(|m| match m {
                MarginalModeArg::Exact => MarginalMode::Exact,
                MarginalModeArg::Sampled => MarginalMode::Sampled,
            }),
            samples: p.samples,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm once and print its report as JSON.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum)]
        algorithm: AlgorithmArg,
        #[command(flatten)]
        params: ParamArgs,
        /// Random seed (randomized algorithms).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run repeated trials and check the mean against exhaustive optima.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum)]
        algorithm: AlgorithmArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// Master seed; trial i uses stream (seed, i).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check "alpha:beta"; repeatable.
        #[arg(long = "check", value_name = "ALPHA:BETA")]
        checks: Vec<String>,
        /// Experiment name recorded in the result.
        #[arg(long, default_value = "experiment")]
        name: String,
        /// Write the result JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write one CSV row per trial.
        #[arg(long)]
        trials_csv: Option<PathBuf>,
    },
    /// Emit the four approximation curves over a β grid as CSV.
    Curve {
        /// β grid as "lo:hi:step".
        #[arg(long, default_value = "0:1:0.01")]
        grid: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check α·(hard-instance optimum) against the best symmetrized set.
    Gap {
        /// Hard-family kind.
        #[arg(long)]
        family: String,
        /// Family size parameter.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        /// Override the default tolerance of 10/size.
        #[arg(long)]
        slack: Option<f64>,
        /// Write the evaluation JSON here as well as stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively test a structural property and report a witness on
    /// failure.
    Validate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum)]
        property: PropertyArg,
        /// Claimed sign of ℓ (--property sign).
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_check(text: &str) -> Result<CheckSpec> {
    let parts: Vec<&str> = text.split(':').collect();
    let parsed = if parts.len() == 2 {
        match (parts[0].parse::<f64>(), parts[1].parse::<f64>()) {
            (Ok(alpha), Ok(beta)) => Some(CheckSpec { alpha, beta }),
            _ => None,
        }
    } else {
        None
    };
    parsed.ok_or_else(|| RusmError::param("check", format!("expected ALPHA:BETA, got {text:?}")))
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = |reason: &str| RusmError::param("grid", format!("{reason}, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected LO:HI:STEP"));
    }
    let nums: Vec<f64> = parts.iter().filter_map(|p| p.parse().ok()).collect();
    if nums.len() != 3 {
        return Err(bad("expected three numbers"));
    }
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !lo.is_finite() || !hi.is_finite() || step <= 0.0 || step.is_nan() || hi < lo {
        return Err(bad("need finite lo <= hi and step > 0"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut betas: Vec<f64> = (0..=count).map(|i| lo + i as f64 * step).collect();
    // Land exactly on hi when it sits on the grid, so the endpoint survives
    // float accumulation.
    if let Some(last) = betas.last_mut() {
        if (*last - hi).abs() <= 1e-9 * step.max(1.0) {
            *last = hi;
        }
    }
    Ok(betas)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let stdout = std::io::stdout();
            stdout.lock().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn pretty(value: &impl serde::Serialize) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Solve { instance, algorithm, params, seed, out } => {
            let built = instance.source()?.build()?;
            let report = run_one(&built, algorithm.into(), &params.into(), Seed::new(seed, 0))?;
            emit(&pretty(&report)?, &out)?;
            Ok(0)
        }
        Command::Verify {
            instance,
            algorithm,
            params,
            trials,
            seed,
            checks,
            name,
            out,
            trials_csv,
        } => {
            let spec = ExperimentSpec {
                name,
                instance: instance.source()?,
                algorithm: algorithm.into(),
                params: params.into(),
                trials,
                master_seed: seed,
                checks: checks.iter().map(|c| parse_check(c)).collect::<Result<_>>()?,
                result_path: out.clone(),
                trials_csv_path: trials_csv,
            };
            let result = run_experiment(&spec)?;
            if out.is_none() {
                emit(&result.canonical_json()?, &None)?;
            }
            let mut failed = false;
            for check in &result.checks {
                if check.passed {
                    continue;
                }
                if check.label == CheckLabel::Guaranteed {
                    failed = true;
                    eprintln!(
                        "guaranteed check failed: mean {} < {} - {} at ({}, {})",
                        result.mean, check.rhs, check.slack, check.alpha, check.beta
                    );
                } else {
                    eprintln!(
                        "exploratory check missed: mean {} < {} - {} at ({}, {})",
                        result.mean, check.rhs, check.slack, check.alpha, check.beta
                    );
                }
            }
            Ok(if failed { 1 } else { 0 })
        }
        Command::Curve { grid, out } => {
            let points = emit_curves(&parse_grid(&grid)?)?;
            let mut buf = Vec::new();
            write_curves_csv(&points, &mut buf)?;
            emit(std::str::from_utf8(&buf).expect("csv is utf8"), &out)?;
            Ok(0)
        }
        Command::Gap { family, n, r, t, alpha, beta, slack, out } => {
            let descriptor = descriptor_from_flags(&family, Some(n), r, t)?;
            let evaluation = match slack {
                Some(s) => verify_gap_with_slack(descriptor, alpha, beta, s)?,
                None => verify_gap(descriptor, alpha, beta)?,
            };
            let text = pretty(&evaluation)?;
            if out.is_some() {
                emit(&text, &out)?;
            }
            emit(&text, &None)?;
            Ok(if evaluation.passed { 0 } else { 1 })
        }
        Command::Validate { instance, property, sign, out } => {
            let built = instance.source()?.build()?;
            let property = match property {
                PropertyArg::Nonnegative => Property::GNonNegative,
                PropertyArg::Submodular => Property::GSubmodular,
                PropertyArg::Lattice => Property::GSubmodularLattice,
                PropertyArg::Monotone => Property::GMonotone,
                PropertyArg::Sign => {
                    Property::EllSign(match need(sign, "sign", "--property sign")? {
                        SignArg::Mixed => EllSign::Mixed,
                        SignArg::NonNegative => EllSign::NonNegative,
                        SignArg::NonPositive => EllSign::NonPositive,
                        SignArg::Zero => EllSign::Zero,
                    })
                }
            };
            let report = validate(&built, property)?;
            emit(&pretty(&report)?, &out)?;
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

/// Full argument list in, process exit code out. Parse failures exit 2,
/// help and version exit 0, failed checks exit 1.
pub fn cli_main(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing_hits_endpoints() {
        let grid = parse_grid("0:1:0.01").unwrap();
        assert_eq!(grid.len(), 101);
        assert_eq!(grid[0], 0.0);
        assert_eq!(*grid.last().unwrap(), 1.0);

        let coarse = parse_grid("0:2:0.5").unwrap();
        assert_eq!(coarse, vec![0.0, 0.5, 1.0, 1.5, 2.0]);

        // Off-grid upper end: stop at the last point under it.
        assert_eq!(parse_grid("0:1:0.3").unwrap().len(), 4);
        assert_eq!(parse_grid("1:1:0.1").unwrap(), vec![1.0]);

        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("a:b:c").is_err());
    }

    #[test]
    fn check_parsing() {
        let c = parse_check("0.25:0.75").unwrap();
        assert_eq!((c.alpha, c.beta), (0.25, 0.75));
        assert!(parse_check("0.25").is_err());
        assert!(parse_check("x:y").is_err());
    }

    #[test]
    fn family_flags_build_descriptors() {
        let d = descriptor_from_flags("negative_sec5", Some(3), Some(0.4), Some(2.0)).unwrap();
        assert_eq!(d, HardInstanceDescriptor::paired_parity(3, 2.0, 0.4).unwrap());
        assert!(descriptor_from_flags("monotone_sec3", Some(5), None, None).is_err());
        assert!(descriptor_from_flags("nope", Some(5), Some(0.1), None).is_err());
    }
}
