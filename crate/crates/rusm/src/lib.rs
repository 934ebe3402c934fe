//! Regularized unconstrained submodular maximization: maximize g(S) + ℓ(S)
//! over all subsets of a ground set, where g is non-negative submodular and
//! ℓ is an arbitrary linear function.
//!
//! The crate has four layers:
//!
//! * [`core`]: bit-mask ground sets, counted value oracles, independent
//!   subsampling, the multilinear extension, permutation symmetries.
//! * `instances`: the three closed-form hard families plus cut, coverage,
//!   and random generators, and property validators.
//! * `solvers`: non-oblivious local search, deterministic and randomized
//!   double greedy, and brute force.
//! * `hardness` / `harness`: approximability curves, symmetry-gap
//!   verification, and a reproducible experiment runner with a CLI.
//!
//! Each capability has a runnable walkthrough under `examples/`:
//! `double_greedy`, `local_search`, `multilinear`, `validate_instance`,
//! `hardness_curves`, `symmetry_gap`, `experiment`, and `instance_files`.
//! The same machinery is scriptable through the `rusm` binary
//! (`solve`, `verify`, `curve`, `gap`, `validate`).

pub mod core;
pub mod error;
pub mod hardness;
pub mod harness;
pub mod instances;
pub mod solvers;

pub use crate::core::mask::{GroundSet, SubsetMask};
pub use crate::core::oracle::{
    EllSign, InstanceFlags, LinearWeights, RusmInstance, SetFunction, SetFunctionOracle,
};
pub use crate::error::{Result, RusmError};
