//! Instance constructors: the three closed-form hard families behind the
//! approximability curves, plus cut, coverage, and seeded random generators
//! for testing.

pub mod validate;

use rand::Rng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::core::group::{Permutation, PermutationGroup};
use crate::core::mask::{GroundSet, SubsetMask};
use crate::core::oracle::{InstanceFlags, LinearWeights, RusmInstance, SetFunctionOracle};
use crate::error::{Result, RusmError};

/// Which of the three hard families an instance belongs to, with its
/// parameters. The serialized `family` tags double as the instance-file
/// `kind` strings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum HardInstanceDescriptor {
    /// `g(S) = min{|S|, 1}` with `ℓ(S) = −r·|S|` on `n` interchangeable
    /// elements; monotone `g`, non-positive `ℓ`.
    #[serde(rename = "monotone_sec3")]
    CappedCardinality { n: usize, r: f64 },
    /// Two parity anchors `a, b` plus `n` satellites each; `ℓ` charges `−r`
    /// per satellite. Non-monotone `g`, non-positive `ℓ`.
    #[serde(rename = "negative_sec5")]
    PairedParity { n: usize, t: f64, r: f64 },
    /// Two parity anchors plus `n` bonus elements `c_i` worth `+1/3` each in
    /// `ℓ`; the bonus indicator dies once every `c_i` is taken.
    #[serde(rename = "positive_sec61")]
    ParityBonus { n: usize },
}

/// A hard instance together with the symmetry group its analysis relies on.
#[derive(Debug)]
pub struct InstanceBundle {
    pub descriptor: HardInstanceDescriptor,
    pub instance: RusmInstance,
    pub group: PermutationGroup,
}

impl HardInstanceDescriptor {
    pub fn capped_cardinality(n: usize, r: f64) -> Result<Self> {
        let d = HardInstanceDescriptor::CappedCardinality { n, r };
        d.check_params()?;
        Ok(d)
    }

    pub fn paired_parity(n: usize, t: f64, r: f64) -> Result<Self> {
        let d = HardInstanceDescriptor::PairedParity { n, t, r };
        d.check_params()?;
        Ok(d)
    }

    pub fn parity_bonus(n: usize) -> Result<Self> {
        let d = HardInstanceDescriptor::ParityBonus { n };
        d.check_params()?;
        Ok(d)
    }

    pub fn check_params(&self) -> Result<()> {
        match *self {
            HardInstanceDescriptor::CappedCardinality { n, r } => {
                if n < 2 {
                    return Err(RusmError::param("n", "need n >= 2"));
                }
                if !(r > 0.0 && r <= 1.0) {
                    return Err(RusmError::param("r", format!("{r} outside (0, 1]")));
                }
            }
            HardInstanceDescriptor::PairedParity { n, t, r } => {
                if n < 1 {
                    return Err(RusmError::param("n", "need n >= 1"));
                }
                if !(t >= 1.0 && t.is_finite()) {
                    return Err(RusmError::param("t", format!("{t} below 1")));
                }
                if !(r > 0.0 && r <= 0.5) {
                    return Err(RusmError::param("r", format!("{r} outside (0, 1/2]")));
                }
            }
            HardInstanceDescriptor::ParityBonus { n } => {
                if n < 2 {
                    return Err(RusmError::param("n", "need n >= 2"));
                }
            }
        }
        Ok(())
    }

    /// The instance-file `kind` string.
    pub fn kind(&self) -> &'static str {
        match self {
            HardInstanceDescriptor::CappedCardinality { .. } => "monotone_sec3",
            HardInstanceDescriptor::PairedParity { .. } => "negative_sec5",
            HardInstanceDescriptor::ParityBonus { .. } => "positive_sec61",
        }
    }

    /// Size of the satellite block (the `n` parameter, not the ground size).
    pub fn block_size(&self) -> usize {
        match *self {
            HardInstanceDescriptor::CappedCardinality { n, .. }
            | HardInstanceDescriptor::PairedParity { n, .. }
            | HardInstanceDescriptor::ParityBonus { n } => n,
        }
    }

    pub fn ground_size(&self) -> usize {
        match *self {
            HardInstanceDescriptor::CappedCardinality { n, .. } => n,
            HardInstanceDescriptor::PairedParity { n, .. } => 2 * n + 2,
            HardInstanceDescriptor::ParityBonus { n } => n + 2,
        }
    }

    pub fn build(&self) -> Result<InstanceBundle> {
        self.check_params()?;
        match *self {
            HardInstanceDescriptor::CappedCardinality { n, r } => build_capped(*self, n, r),
            HardInstanceDescriptor::PairedParity { n, t, r } => build_paired(*self, n, t, r),
            HardInstanceDescriptor::ParityBonus { n } => build_bonus(*self, n),
        }
    }
}

pub fn make_monotone_hard(n: usize, r: f64) -> Result<InstanceBundle> {
    HardInstanceDescriptor::capped_cardinality(n, r)?.build()
}

pub fn make_negative_hard(n: usize, t: f64, r: f64) -> Result<InstanceBundle> {
    HardInstanceDescriptor::paired_parity(n, t, r)?.build()
}

pub fn make_positive_hard(n: usize) -> Result<InstanceBundle> {
    HardInstanceDescriptor::parity_bonus(n)?.build()
}

fn build_capped(d: HardInstanceDescriptor, n: usize, r: f64) -> Result<InstanceBundle> {
    let labels = (1..=n).map(|i| format!("e{i}")).collect();
    let ground = GroundSet::with_labels(n, labels)?;
    let g = SetFunctionOracle::new(move |s: SubsetMask| s.card().min(1) as f64);
    let ell = LinearWeights::constant(n, -r);
    let flags = InstanceFlags { g_nonnegative: true, g_submodular: true, g_monotone: true };
    let instance = RusmInstance::new(ground, g, ell, flags)?;

    // Adjacent swap plus full rotation generate every permutation.
    let mut rotate: Vec<usize> = (0..n).map(|u| (u + 1) % n).collect();
    if n == 2 {
        rotate = vec![1, 0];
    }
    let group =
        PermutationGroup::new(n, vec![Permutation::swap(n, 0, 1)?, Permutation::new(rotate)?])?;
    Ok(InstanceBundle { descriptor: d, instance, group })
}

fn build_paired(d: HardInstanceDescriptor, n: usize, t: f64, r: f64) -> Result<InstanceBundle> {
    let size = 2 * n + 2;
    let mut labels = vec!["a".to_string(), "b".to_string()];
    labels.extend((1..=n).map(|i| format!("a{i}")));
    labels.extend((1..=n).map(|i| format!("b{i}")));
    let ground = GroundSet::with_labels(size, labels)?;

    let anchors = SubsetMask::from_elements([0, 1]);
    let a_block = SubsetMask::from_elements(2..2 + n);
    let b_block = SubsetMask::from_elements(2 + n..2 + 2 * n);
    let g = SetFunctionOracle::new(move |s: SubsetMask| {
        let parity = (s.intersect(anchors).card() % 2) as f64;
        let a_bonus = !s.contains(0) && !s.intersect(a_block).is_empty();
        let b_bonus = !s.contains(1) && !s.intersect(b_block).is_empty();
        t * parity + a_bonus as u32 as f64 + b_bonus as u32 as f64
    });

    let mut weights = vec![0.0; size];
    for w in weights.iter_mut().skip(2) {
        *w = -r;
    }
    let ell = LinearWeights::new(weights)?;
    let flags = InstanceFlags { g_nonnegative: true, g_submodular: true, g_monotone: false };
    let instance = RusmInstance::new(ground, g, ell, flags)?;

    // Satellites may be permuted only in matched pairs (the same permutation
    // on both blocks); additionally the whole a-side may be swapped with the
    // whole b-side.
    let mut mirror_swap: Vec<usize> = (0..size).collect();
    mirror_swap.swap(0, 1);
    for i in 0..n {
        mirror_swap.swap(2 + i, 2 + n + i);
    }
    let mut generators = vec![Permutation::new(mirror_swap)?];
    if n >= 2 {
        let mut paired_transpose: Vec<usize> = (0..size).collect();
        paired_transpose.swap(2, 3);
        paired_transpose.swap(2 + n, 3 + n);
        let mut paired_rotate: Vec<usize> = (0..size).collect();
        for i in 0..n {
            paired_rotate[2 + i] = 2 + (i + 1) % n;
            paired_rotate[2 + n + i] = 2 + n + (i + 1) % n;
        }
        generators.push(Permutation::new(paired_transpose)?);
        generators.push(Permutation::new(paired_rotate)?);
    }
    let group = PermutationGroup::new(size, generators)?;
    Ok(InstanceBundle { descriptor: d, instance, group })
}

fn build_bonus(d: HardInstanceDescriptor, n: usize) -> Result<InstanceBundle> {
    let size = n + 2;
    let mut labels = vec!["a".to_string(), "b".to_string()];
    labels.extend((1..=n).map(|i| format!("c{i}")));
    let ground = GroundSet::with_labels(size, labels)?;

    let anchors = SubsetMask::from_elements([0, 1]);
    let c_block = SubsetMask::from_elements(2..2 + n);
    let g = SetFunctionOracle::new(move |s: SubsetMask| {
        let parity = (s.intersect(anchors).card() % 2) as f64;
        let bonus = !s.intersect(anchors).is_empty() && !c_block.is_subset_of(s);
        2.0 * parity + bonus as u32 as f64
    });

    let mut weights = vec![0.0; size];
    for w in weights.iter_mut().skip(2) {
        *w = 1.0 / 3.0;
    }
    let ell = LinearWeights::new(weights)?;
    let flags = InstanceFlags { g_nonnegative: true, g_submodular: true, g_monotone: false };
    let instance = RusmInstance::new(ground, g, ell, flags)?;

    let mut generators = vec![Permutation::swap(size, 0, 1)?];
    if n >= 2 {
        let mut rotate: Vec<usize> = (0..size).collect();
        for i in 0..n {
            rotate[2 + i] = 2 + (i + 1) % n;
        }
        generators.push(Permutation::swap(size, 2, 3)?);
        generators.push(Permutation::new(rotate)?);
    }
    let group = PermutationGroup::new(size, generators)?;
    Ok(InstanceBundle { descriptor: d, instance, group })
}

/// Weighted cut function `g(S) = Σ w_e` over edges crossing `(S, 𝒩∖S)`,
/// paired with the given `ℓ`. Non-monotone, symmetric under complement.
///
/// Negative edge weights are accepted but make `g` neither non-negative nor
/// submodular; the instance flags record that, so such instances exercise
/// the validators rather than the solver guarantees.
pub fn make_cut_instance(
    edges: Vec<(usize, usize, f64)>,
    ell: LinearWeights,
) -> Result<RusmInstance> {
    let n = ell.n();
    let ground = GroundSet::new(n)?;
    for &(u, v, w) in &edges {
        if u >= n {
            return Err(RusmError::IndexOutOfRange { index: u, n });
        }
        if v >= n {
            return Err(RusmError::IndexOutOfRange { index: v, n });
        }
        if !w.is_finite() {
            return Err(RusmError::param("edges", format!("non-finite edge weight {w}")));
        }
    }
    let well_signed = edges.iter().all(|&(_, _, w)| w >= 0.0);
    let g = SetFunctionOracle::new(move |s: SubsetMask| {
        edges.iter().filter(|&&(u, v, _)| s.contains(u) != s.contains(v)).map(|&(_, _, w)| w).sum()
    });
    let flags =
        InstanceFlags { g_nonnegative: well_signed, g_submodular: well_signed, g_monotone: false };
    RusmInstance::new(ground, g, ell, flags)
}

/// Weighted coverage function: element `i` of the ground set covers
/// `sets[i]` inside a universe with the given per-point values, and
/// `g(S)` is the total value covered by `⋃_{i∈S} sets[i]`.
pub fn make_coverage_instance(
    sets: Vec<SubsetMask>,
    element_values: Vec<f64>,
    ell: LinearWeights,
) -> Result<RusmInstance> {
    let n = ell.n();
    if sets.len() != n {
        return Err(RusmError::param(
            "sets",
            format!("{} covering sets for a ground set of size {n}", sets.len()),
        ));
    }
    let m = element_values.len();
    if m == 0 || m > crate::core::mask::MAX_GROUND {
        return Err(RusmError::param("element_values", format!("universe size {m} unsupported")));
    }
    if let Some(bad) = element_values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(RusmError::param("element_values", format!("negative point value {bad}")));
    }
    let universe = SubsetMask::full(m);
    for set in &sets {
        if !set.is_subset_of(universe) {
            return Err(RusmError::param("sets", "covering set outside the universe"));
        }
    }
    let g = SetFunctionOracle::new(move |s: SubsetMask| {
        let mut covered = SubsetMask::EMPTY;
        for i in s.iter() {
            covered = covered.union(sets[i]);
        }
        covered.iter().map(|x| element_values[x]).sum()
    });
    let flags = InstanceFlags { g_nonnegative: true, g_submodular: true, g_monotone: true };
    RusmInstance::new(GroundSet::new(n)?, g, ell, flags)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomFamily {
    Cut,
    Coverage,
}

/// Requested sign pattern for randomly drawn `ℓ` weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EllSignRequest {
    Mixed,
    NonNegative,
    NonPositive,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomInstanceConfig {
    pub n: usize,
    pub family: RandomFamily,
    pub ell_sign: EllSignRequest,
}

/// Largest ground set for random instances; they exist to be cross-checked
/// by brute force.
pub const RANDOM_INSTANCE_LIMIT: usize = 14;

/// Seed-reproducible random cut or coverage instance with a random `ℓ` of
/// the requested sign. Submodular by construction.
pub fn make_random_instance(
    config: &RandomInstanceConfig,
    rng: &mut ChaCha12Rng,
) -> Result<RusmInstance> {
    let n = config.n;
    if n < 2 {
        return Err(RusmError::param("n", "need n >= 2"));
    }
    if n > RANDOM_INSTANCE_LIMIT {
        return Err(RusmError::param(
            "n",
            format!("random instances are capped at n = {RANDOM_INSTANCE_LIMIT}, got {n}"),
        ));
    }

    let mut weights = Vec::with_capacity(n);
    for _ in 0..n {
        let magnitude = rng.gen_range(0.1..=1.0);
        weights.push(match config.ell_sign {
            EllSignRequest::Mixed => {
                if rng.gen_bool(0.5) {
                    magnitude
                } else {
                    -magnitude
                }
            }
            EllSignRequest::NonNegative => magnitude,
            EllSignRequest::NonPositive => -magnitude,
            EllSignRequest::Zero => 0.0,
        });
    }
    let ell = LinearWeights::new(weights)?;

    match config.family {
        RandomFamily::Cut => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v, rng.gen_range(0.25..=1.0)));
                    }
                }
            }
            if edges.is_empty() {
                edges.push((0, 1, rng.gen_range(0.25..=1.0)));
            }
            make_cut_instance(edges, ell)
        }
        RandomFamily::Coverage => {
            let m = 2 * n;
            let values: Vec<f64> = (0..m).map(|_| rng.gen_range(0.25..=1.0)).collect();
            let sets: Vec<SubsetMask> = (0..n)
                .map(|_| SubsetMask::from_elements((0..m).filter(|_| rng.gen_bool(0.4))))
                .collect();
            make_coverage_instance(sets, values, ell)
        }
    }
}
