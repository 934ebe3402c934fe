//! Value-oracle access to set functions and the `g + ℓ` instance pair.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::core::mask::{GroundSet, SubsetMask};
use crate::error::{Result, RusmError};

/// A deterministic set function. Implementations must be cheap to query and
/// safe to share across trial workers.
pub trait SetFunction: Send + Sync {
    fn value(&self, s: SubsetMask) -> f64;
}

impl<F> SetFunction for F
where
    F: Fn(SubsetMask) -> f64 + Send + Sync,
{
    fn value(&self, s: SubsetMask) -> f64 {
        self(s)
    }
}

/// The only access path to `g`: every `evaluate` bumps the query counter by
/// exactly one. The counter is atomic so a shared oracle can be queried from
/// concurrent workers; use [`SetFunctionOracle::fork`] to give a worker its
/// own tally over the same function.
pub struct SetFunctionOracle {
    f: Arc<dyn SetFunction>,
    queries: AtomicU64,
}

impl SetFunctionOracle {
    pub fn new<F: SetFunction + 'static>(f: F) -> Self {
        SetFunctionOracle { f: Arc::new(f), queries: AtomicU64::new(0) }
    }

    pub fn evaluate(&self, s: SubsetMask) -> f64 {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.f.value(s)
    }

    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// Same underlying function, fresh zero counter.
    pub fn fork(&self) -> Self {
        SetFunctionOracle { f: Arc::clone(&self.f), queries: AtomicU64::new(0) }
    }
}

impl fmt::Debug for SetFunctionOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetFunctionOracle").field("queries", &self.query_count()).finish()
    }
}

/// Sign pattern of a linear function's weight vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EllSign {
    Zero,
    NonNegative,
    NonPositive,
    Mixed,
}

/// A linear set function `ℓ(S) = Σ_{u∈S} w_u`, stored as per-element weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearWeights(Vec<f64>);

impl LinearWeights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(RusmError::param("weights", "empty weight vector"));
        }
        if let Some(bad) = w.iter().find(|x| !x.is_finite()) {
            return Err(RusmError::param("weights", format!("non-finite weight {bad}")));
        }
        Ok(LinearWeights(w))
    }

    pub fn zeros(n: usize) -> Self {
        LinearWeights(vec![0.0; n])
    }

    pub fn constant(n: usize, w: f64) -> Self {
        LinearWeights(vec![w; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self, u: usize) -> f64 {
        self.0[u]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn value(&self, s: SubsetMask) -> f64 {
        s.iter().map(|u| self.0[u]).sum()
    }

    pub fn sign(&self) -> EllSign {
        let any_pos = self.0.iter().any(|&w| w > 0.0);
        let any_neg = self.0.iter().any(|&w| w < 0.0);
        match (any_pos, any_neg) {
            (false, false) => EllSign::Zero,
            (true, false) => EllSign::NonNegative,
            (false, true) => EllSign::NonPositive,
            (true, true) => EllSign::Mixed,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        matches!(self.sign(), EllSign::Zero | EllSign::NonNegative)
    }

    pub fn is_nonpositive(&self) -> bool {
        matches!(self.sign(), EllSign::Zero | EllSign::NonPositive)
    }

    /// `{u : w_u > 0}`.
    pub fn positive_support(&self) -> SubsetMask {
        SubsetMask::from_elements(
            self.0.iter().enumerate().filter(|(_, &w)| w > 0.0).map(|(u, _)| u),
        )
    }
}

/// Declared structural properties of `g`. Declarations are promises checked
/// by the validators on brute-forceable sizes, never assumed silently there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFlags {
    pub g_nonnegative: bool,
    pub g_submodular: bool,
    pub g_monotone: bool,
}

/// One problem instance: maximize `g(S) + ℓ(S)` over all subsets of the
/// ground set, with `g` non-negative submodular and `ℓ` linear.
#[derive(Debug)]
pub struct RusmInstance {
    pub ground: GroundSet,
    pub g: SetFunctionOracle,
    pub ell: LinearWeights,
    pub flags: InstanceFlags,
}

impl RusmInstance {
    pub fn new(
        ground: GroundSet,
        g: SetFunctionOracle,
        ell: LinearWeights,
        flags: InstanceFlags,
    ) -> Result<Self> {
        if ell.n() != ground.n() {
            return Err(RusmError::param(
                "ell",
                format!("{} weights for a ground set of size {}", ell.n(), ground.n()),
            ));
        }
        Ok(RusmInstance { ground, g, ell, flags })
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn ell_sign(&self) -> EllSign {
        self.ell.sign()
    }

    /// `g(S) + ℓ(S)`; one oracle query.
    pub fn objective(&self, s: SubsetMask) -> f64 {
        self.g.evaluate(s) + self.ell.value(s)
    }

    /// Shares the set function but not the query counter; used to give each
    /// trial its own tally.
    pub fn fork(&self) -> Self {
        RusmInstance {
            ground: self.ground.clone(),
            g: self.g.fork(),
            ell: self.ell.clone(),
            flags: self.flags,
        }
    }
}
