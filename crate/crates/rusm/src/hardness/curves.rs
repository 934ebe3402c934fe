//! The four approximability frontier curves over β, including the 2-D
//! numerical minimization behind the negative-weight frontier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RusmError};
use crate::hardness::golden::golden_section_min;

/// Identifier tokens used in curve CSV output; fixed file-format strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveId {
    #[serde(rename = "monotone_thm1")]
    MonotoneThm1,
    #[serde(rename = "general_thm2")]
    GeneralThm2,
    #[serde(rename = "negative_thm3")]
    NegativeThm3,
    #[serde(rename = "algo_negative_beta_e")]
    AlgoNegativeBetaE,
}

impl CurveId {
    pub const ALL: [CurveId; 4] = [
        CurveId::MonotoneThm1,
        CurveId::GeneralThm2,
        CurveId::NegativeThm3,
        CurveId::AlgoNegativeBetaE,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CurveId::MonotoneThm1 => "monotone_thm1",
            CurveId::GeneralThm2 => "general_thm2",
            CurveId::NegativeThm3 => "negative_thm3",
            CurveId::AlgoNegativeBetaE => "algo_negative_beta_e",
        }
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One sample of one frontier curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub beta: f64,
    pub alpha: f64,
    pub curve_id: CurveId,
}

fn check_beta_nonnegative(beta: f64) -> Result<()> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(RusmError::param("beta", format!("{beta} outside [0, ∞)")));
    }
    Ok(())
}

/// Frontier for monotone `g` with non-positive `ℓ`: `1 − e^{−β}`.
pub fn alpha_monotone(beta: f64) -> Result<f64> {
    check_beta_nonnegative(beta)?;
    Ok(1.0 - (-beta).exp())
}

/// Guarantee curve of the local-search solver: `β(1 − β)/(1 + β)` on
/// `(0, 1]`, peaking at `β = √2 − 1`.
pub fn alpha_general(beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(RusmError::param("beta", format!("{beta} outside (0, 1]")));
    }
    Ok(beta * (1.0 - beta) / (1.0 + beta))
}

/// Guarantee curve `β·e^{−β}` of the sampling-based baseline for
/// non-positive `ℓ`.
pub fn alpha_algo_negative(beta: f64) -> Result<f64> {
    check_beta_nonnegative(beta)?;
    Ok(beta * (-beta).exp())
}

/// Minimand of the negative-weight frontier at anchor weight `t ≥ 1` and
/// per-satellite cost `r ∈ (0, 1/2]`. The discriminant satisfies
/// `(t+1)² − 8tr ≥ (t−1)² ≥ 0` on that box; the `max(0)` only absorbs a
/// float-negative at the `r = 1/2, t = 1` corner.
pub fn phi_negative(t: f64, r: f64, beta: f64) -> f64 {
    let s = ((t + 1.0) * (t + 1.0) - 8.0 * t * r).max(0.0).sqrt();
    (t + 1.0 + s) / (4.0 * t) - (r / (t + 1.0)) * (1.0 - beta - 2.0 * ((t + 1.0 - s) / 2.0).ln())
}

/// Search effort for [`alpha_negative`]. Both settings run the same
/// grid-then-alternating-golden scheme and exist to cross-check each other;
/// they differ only in initial grid density.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NegativeCurveConfig {
    CoarseGridRefine,
    DenseScanRefine,
}

/// Value and argmin of the negative-weight frontier minimization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NegativeCurvePoint {
    pub alpha: f64,
    pub t: f64,
    pub r: f64,
}

const T_MAX: f64 = 1e4;
const T_FLAT: f64 = 1e3;
const R_MIN: f64 = 1e-6;
const R_MAX: f64 = 0.5;

/// Minimizes `phi_negative(·, ·, β)` over `t ∈ [1, 10⁴] × r ∈ (0, 1/2]`.
///
/// Coarse log-grid on `t` times a linear grid on `r`, then alternating 1-D
/// golden-section refinement inside the winning cell's neighborhood. The `t`
/// range is truncated; flatness of the tail beyond `t = 10³` is asserted at
/// runtime, as is the argmin staying clear of the artificial `r` floor.
pub fn alpha_negative(beta: f64, config: NegativeCurveConfig) -> Result<NegativeCurvePoint> {
    check_beta_nonnegative(beta)?;
    let grid = match config {
        NegativeCurveConfig::CoarseGridRefine => 80usize,
        NegativeCurveConfig::DenseScanRefine => 320usize,
    };

    let t_at = |i: usize| T_MAX.powf(i as f64 / grid as f64);
    let r_at = |j: usize| R_MIN + (R_MAX - R_MIN) * j as f64 / grid as f64;

    let mut best = (f64::INFINITY, 0usize, 0usize);
    let mut best_tail = f64::INFINITY;
    let mut best_last_row = f64::INFINITY;
    for i in 0..=grid {
        let t = t_at(i);
        for j in 0..=grid {
            let v = phi_negative(t, r_at(j), beta);
            if v < best.0 {
                best = (v, i, j);
            }
            if t >= T_FLAT {
                best_tail = best_tail.min(v);
                if i == grid {
                    best_last_row = best_last_row.min(v);
                }
            }
        }
    }
    assert!(
        (best_tail - best_last_row).abs() < 0.01,
        "tail of the t range is not flat at beta = {beta}: {best_tail} vs {best_last_row}"
    );

    let (_, bi, bj) = best;
    let t_lo = t_at(bi.saturating_sub(1));
    let t_hi = t_at((bi + 1).min(grid));
    let r_lo = r_at(bj.saturating_sub(1));
    let r_hi = r_at((bj + 1).min(grid));

    let mut t = t_at(bi);
    let mut r = r_at(bj);
    let mut value = best.0;
    for _ in 0..60 {
        let (tt, _) = golden_section_min(|x| phi_negative(x, r, beta), t_lo, t_hi, 1e-9);
        let (rr, v) = golden_section_min(|x| phi_negative(tt, x, beta), r_lo, r_hi, 1e-10);
        t = tt;
        r = rr;
        if value - v < 1e-13 {
            value = value.min(v);
            break;
        }
        value = v;
    }
    assert!(r > 1e-5, "argmin pinned to the artificial r floor at beta = {beta}");
    Ok(NegativeCurvePoint { alpha: value, t, r })
}

/// Evaluates all four curves on a β grid inside `[0, 2]`, four points per β
/// in [`CurveId::ALL`] order. `general_thm2` is extended by zero outside its
/// `(0, 1]` domain so every point carries an `alpha ∈ [0, 1]`.
pub fn emit_curves(beta_grid: &[f64]) -> Result<Vec<CurvePoint>> {
    for &beta in beta_grid {
        if !(beta.is_finite() && (0.0..=2.0).contains(&beta)) {
            return Err(RusmError::param("beta_grid", format!("{beta} outside [0, 2]")));
        }
    }
    let mut points = Vec::with_capacity(beta_grid.len() * 4);
    for &beta in beta_grid {
        let general = if beta > 0.0 && beta <= 1.0 { alpha_general(beta)? } else { 0.0 };
        let negative = alpha_negative(beta, NegativeCurveConfig::CoarseGridRefine)?.alpha;
        for (curve_id, alpha) in [
            (CurveId::MonotoneThm1, alpha_monotone(beta)?),
            (CurveId::GeneralThm2, general),
            (CurveId::NegativeThm3, negative),
            (CurveId::AlgoNegativeBetaE, alpha_algo_negative(beta)?),
        ] {
            debug_assert!((0.0..=1.0).contains(&alpha), "{curve_id}: alpha {alpha} at beta {beta}");
            points.push(CurvePoint { beta, alpha, curve_id });
        }
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardness::golden::golden_section_max;

    #[test]
    fn closed_form_curve_values() {
        assert_eq!(alpha_monotone(0.0).unwrap(), 0.0);
        assert!((alpha_monotone(1.0).unwrap() - (1.0 - 1.0 / std::f64::consts::E)).abs() < 1e-15);
        assert!((alpha_monotone(std::f64::consts::LN_2).unwrap() - 0.5).abs() < 1e-15);
        assert!((alpha_general(0.5).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(alpha_general(1.0).unwrap(), 0.0);
        assert!(alpha_general(0.0).is_err());
        assert!(alpha_general(1.0 + 1e-12).is_err());
        assert_eq!(alpha_algo_negative(0.0).unwrap(), 0.0);
        assert!((alpha_algo_negative(1.0).unwrap() - 1.0 / std::f64::consts::E).abs() < 1e-15);
        assert!((alpha_algo_negative(0.5).unwrap() - 0.5 * (-0.5f64).exp()).abs() < 1e-15);
        assert!(alpha_monotone(-0.1).is_err());
        assert!(alpha_monotone(f64::NAN).is_err());
    }

    #[test]
    fn general_curve_peaks_at_sqrt2_minus_1() {
        let (x, v) = golden_section_max(|b| alpha_general(b).unwrap(), 1e-9, 1.0, 1e-10);
        assert!((x - (2f64.sqrt() - 1.0)).abs() < 1e-6);
        assert!((v - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn minimand_at_unit_anchor_half_cost() {
        // At (t, r) = (1, 1/2) the square root vanishes and the minimand
        // collapses to 1/4 + β/4.
        for beta in [0.0, 0.5, 1.0] {
            assert!((phi_negative(1.0, 0.5, beta) - (0.25 + beta / 4.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn negative_curve_frozen_values() {
        let expected = [
            (0.0, 0.25),
            (0.25, 0.3122032932),
            (0.5, 0.3728318819),
            (0.75, 0.4308023594),
            (1.0, 0.4773024371),
        ];
        for (beta, alpha) in expected {
            let a = alpha_negative(beta, NegativeCurveConfig::CoarseGridRefine).unwrap();
            let b = alpha_negative(beta, NegativeCurveConfig::DenseScanRefine).unwrap();
            assert!((a.alpha - alpha).abs() < 1e-6, "beta {beta}: {} vs {alpha}", a.alpha);
            assert!((a.alpha - b.alpha).abs() < 1e-7, "configs disagree at beta {beta}");
        }
        let p = alpha_negative(1.0, NegativeCurveConfig::DenseScanRefine).unwrap();
        assert!((p.t - 1.846742).abs() < 1e-3, "t = {}", p.t);
        assert!((p.r - 0.367879).abs() < 1e-3, "r = {}", p.r);
        // At β = 0 the argmin sits at the closed corner (1, 1/2).
        let p0 = alpha_negative(0.0, NegativeCurveConfig::DenseScanRefine).unwrap();
        assert!((p0.t - 1.0).abs() < 1e-3 && (p0.r - 0.5).abs() < 1e-3);
    }

    #[test]
    fn negative_curve_witness_stays_in_log_range() {
        for beta in [0.0, 0.5, 1.0, 1.5, 2.0] {
            let p = alpha_negative(beta, NegativeCurveConfig::CoarseGridRefine).unwrap();
            let disc = (p.t + 1.0) * (p.t + 1.0) - 8.0 * p.t * p.r;
            assert!(disc >= -1e-12);
            let log_arg = (p.t + 1.0 - disc.max(0.0).sqrt()) / 2.0;
            assert!(log_arg > 0.0 && log_arg <= 1.0 + 1e-12, "log arg {log_arg} at beta {beta}");
        }
    }

    #[test]
    fn negative_curve_continuous_and_nondecreasing() {
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=100 {
            let beta = k as f64 / 100.0;
            let alpha = alpha_negative(beta, NegativeCurveConfig::CoarseGridRefine).unwrap().alpha;
            assert!(alpha >= prev - 1e-9, "dip at beta {beta}: {alpha} < {prev}");
            if prev.is_finite() {
                assert!(alpha - prev < 0.01, "jump at beta {beta}: {prev} -> {alpha}");
            }
            prev = alpha;
        }
    }

    #[test]
    fn curve_grid_emission() {
        let points = emit_curves(&[0.0, 0.5, 1.0, 2.0]).unwrap();
        assert_eq!(points.len(), 16);
        for chunk in points.chunks(4) {
            for (point, id) in chunk.iter().zip(CurveId::ALL) {
                assert_eq!(point.curve_id, id);
                assert!((0.0..=1.0).contains(&point.alpha));
            }
        }
        let at = |beta: f64, id: CurveId| {
            points.iter().find(|p| p.beta == beta && p.curve_id == id).unwrap().alpha
        };
        assert!((at(1.0, CurveId::MonotoneThm1) - 0.6321).abs() < 1e-4);
        assert!((at(1.0, CurveId::NegativeThm3) - 0.4773).abs() < 1e-4);
        assert!((at(1.0, CurveId::AlgoNegativeBetaE) - 0.3679).abs() < 1e-4);
        // Ordering algo ≤ negative ≤ monotone holds at these β; the
        // negative curve exceeds the monotone one near β = 0 (it starts at
        // 1/4, the monotone curve at 0), so no grid-wide claim is made.
        for beta in [0.5, 1.0, 2.0] {
            assert!(at(beta, CurveId::AlgoNegativeBetaE) <= at(beta, CurveId::NegativeThm3));
            assert!(at(beta, CurveId::NegativeThm3) <= at(beta, CurveId::MonotoneThm1));
        }
        assert!(at(0.0, CurveId::NegativeThm3) > at(0.0, CurveId::MonotoneThm1));
        assert_eq!(at(2.0, CurveId::GeneralThm2), 0.0);
        assert!(emit_curves(&[2.5]).is_err());
        assert!(emit_curves(&[-0.1]).is_err());
    }

    #[test]
    fn curve_id_tokens_round_trip() {
        for id in CurveId::ALL {
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
            assert_eq!(serde_json::from_str::<CurveId>(&json).unwrap(), id);
        }
        assert_eq!(CurveId::NegativeThm3.to_string(), "negative_thm3");
    }
}
