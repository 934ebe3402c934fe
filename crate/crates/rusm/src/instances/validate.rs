//! Brute-force property validation for small instances: non-negativity,
//! submodularity (two equivalent characterizations), monotonicity, the sign
//! of ℓ, and invariance under a symmetry group. Validators report, they do
//! not repair.

use serde::Serialize;

use crate::core::group::PermutationGroup;
use crate::core::mask::SubsetMask;
use crate::core::oracle::{EllSign, RusmInstance, SetFunctionOracle};
use crate::error::{Result, RusmError};
use crate::instances::InstanceBundle;

/// Absolute comparison tolerance. The families shipped here take exact small
/// rational values, so this absorbs float noise without hiding violations.
pub const VALIDATOR_TOL: f64 = 1e-9;

/// Cap for properties that scan subset-superset chains (O(3^n·n) or worse).
pub const SUBMODULAR_LIMIT: usize = 14;

/// Cap for properties that scan single subsets (O(2^n·n)).
pub const VALUE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    GNonNegative,
    /// Marginal characterization: `g(u|S) ≥ g(u|T)` for all `S ⊆ T`, `u ∉ T`.
    GSubmodular,
    /// Lattice characterization: `g(S) + g(T) ≥ g(S∪T) + g(S∩T)`; slower
    /// cross-check of [`Property::GSubmodular`].
    GSubmodularLattice,
    GMonotone,
    EllSign(EllSign),
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::GNonNegative => "non-negativity",
            Property::GSubmodular => "submodularity",
            Property::GSubmodularLattice => "submodularity (lattice form)",
            Property::GMonotone => "monotonicity",
            Property::EllSign(_) => "ell sign",
        }
    }
}

/// First counterexample found by a failing validator.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NegativeValue {
        s: SubsetMask,
        value: f64,
    },
    /// `g(u|s) < g(u|t)` although `s ⊆ t`.
    MarginalViolation {
        s: SubsetMask,
        t: SubsetMask,
        u: usize,
        inner: f64,
        outer: f64,
    },
    /// `g(s) + g(t) < g(s∪t) + g(s∩t)`.
    LatticeViolation {
        s: SubsetMask,
        t: SubsetMask,
        lhs: f64,
        rhs: f64,
    },
    /// Adding `u` to `s` strictly decreases the value.
    MonotoneViolation {
        s: SubsetMask,
        u: usize,
        marginal: f64,
    },
    SignMismatch {
        expected: EllSign,
        actual: EllSign,
    },
    /// A generator image with a different value.
    AsymmetricImage {
        generator: usize,
        s: SubsetMask,
        image: SubsetMask,
        value: f64,
        image_value: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub property: String,
    pub n: usize,
    pub passed: bool,
    /// Number of comparisons performed (stops at the first violation).
    pub checks: u64,
    pub witness: Option<Witness>,
}

impl ValidationReport {
    fn pass(property: &str, n: usize, checks: u64) -> Self {
        ValidationReport { property: property.to_string(), n, passed: true, checks, witness: None }
    }

    fn fail(property: &str, n: usize, checks: u64, witness: Witness) -> Self {
        ValidationReport {
            property: property.to_string(),
            n,
            passed: false,
            checks,
            witness: Some(witness),
        }
    }
}

fn ensure_size(property: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(RusmError::ValidatorTooLarge { property, n, max });
    }
    Ok(())
}

fn tabulate(g: &SetFunctionOracle, n: usize) -> Vec<f64> {
    (0..1u64 << n).map(|bits| g.evaluate(SubsetMask::from_bits(bits))).collect()
}

/// Checks one declared property of an instance by full enumeration.
pub fn validate(instance: &RusmInstance, property: Property) -> Result<ValidationReport> {
    let n = instance.n();
    let name = property.name();
    match property {
        Property::GNonNegative => {
            ensure_size(name, n, VALUE_LIMIT)?;
            let tab = tabulate(&instance.g, n);
            let mut checks = 0;
            for (bits, &v) in tab.iter().enumerate() {
                checks += 1;
                if v < -VALIDATOR_TOL {
                    let s = SubsetMask::from_bits(bits as u64);
                    return Ok(ValidationReport::fail(
                        name,
                        n,
                        checks,
                        Witness::NegativeValue { s, value: v },
                    ));
                }
            }
            Ok(ValidationReport::pass(name, n, checks))
        }
        Property::GSubmodular => {
            ensure_size(name, n, SUBMODULAR_LIMIT)?;
            let tab = tabulate(&instance.g, n);
            let mut checks = 0;
            for t_bits in 0..1u64 << n {
                let t = SubsetMask::from_bits(t_bits);
                for u in 0..n {
                    if t.contains(u) {
                        continue;
                    }
                    let outer = tab[t.with(u).bits() as usize] - tab[t_bits as usize];
                    for s in t.subsets() {
                        checks += 1;
                        let inner = tab[s.with(u).bits() as usize] - tab[s.bits() as usize];
                        if inner < outer - VALIDATOR_TOL {
                            return Ok(ValidationReport::fail(
                                name,
                                n,
                                checks,
                                Witness::MarginalViolation { s, t, u, inner, outer },
                            ));
                        }
                    }
                }
            }
            Ok(ValidationReport::pass(name, n, checks))
        }
        Property::GSubmodularLattice => {
            ensure_size(name, n, SUBMODULAR_LIMIT)?;
            let tab = tabulate(&instance.g, n);
            let mut checks = 0;
            for s_bits in 0..1u64 << n {
                for t_bits in 0..1u64 << n {
                    checks += 1;
                    let lhs = tab[s_bits as usize] + tab[t_bits as usize];
                    let rhs = tab[(s_bits | t_bits) as usize] + tab[(s_bits & t_bits) as usize];
                    if lhs < rhs - VALIDATOR_TOL {
                        return Ok(ValidationReport::fail(
                            name,
                            n,
                            checks,
                            Witness::LatticeViolation {
                                s: SubsetMask::from_bits(s_bits),
                                t: SubsetMask::from_bits(t_bits),
                                lhs,
                                rhs,
                            },
                        ));
                    }
                }
            }
            Ok(ValidationReport::pass(name, n, checks))
        }
        Property::GMonotone => {
            ensure_size(name, n, VALUE_LIMIT)?;
            let tab = tabulate(&instance.g, n);
            let mut checks = 0;
            for s_bits in 0..1u64 << n {
                let s = SubsetMask::from_bits(s_bits);
                for u in 0..n {
                    if s.contains(u) {
                        continue;
                    }
                    checks += 1;
                    let marginal = tab[s.with(u).bits() as usize] - tab[s_bits as usize];
                    if marginal < -VALIDATOR_TOL {
                        return Ok(ValidationReport::fail(
                            name,
                            n,
                            checks,
                            Witness::MonotoneViolation { s, u, marginal },
                        ));
                    }
                }
            }
            Ok(ValidationReport::pass(name, n, checks))
        }
        Property::EllSign(expected) => {
            let actual = instance.ell.sign();
            let compatible = match expected {
                EllSign::Zero => actual == EllSign::Zero,
                EllSign::NonNegative => matches!(actual, EllSign::Zero | EllSign::NonNegative),
                EllSign::NonPositive => matches!(actual, EllSign::Zero | EllSign::NonPositive),
                EllSign::Mixed => true,
            };
            if compatible {
                Ok(ValidationReport::pass(name, n, n as u64))
            } else {
                Ok(ValidationReport::fail(
                    name,
                    n,
                    n as u64,
                    Witness::SignMismatch { expected, actual },
                ))
            }
        }
    }
}

/// Checks `g(σ(S)) = g(S)` and `ℓ(σ(S)) = ℓ(S)` for every group generator σ
/// and every subset S.
pub fn validate_invariance(
    instance: &RusmInstance,
    group: &PermutationGroup,
) -> Result<ValidationReport> {
    let name = "group invariance";
    let n = instance.n();
    if group.n() != n {
        return Err(RusmError::param(
            "group",
            format!("group on {} elements for a ground set of size {n}", group.n()),
        ));
    }
    ensure_size(name, n, VALUE_LIMIT)?;
    let tab = tabulate(&instance.g, n);
    let mut checks = 0;
    for (idx, sigma) in group.generators().iter().enumerate() {
        for s_bits in 0..1u64 << n {
            let s = SubsetMask::from_bits(s_bits);
            let image = sigma.apply_mask(s);
            checks += 2;
            let (v, iv) = (tab[s_bits as usize], tab[image.bits() as usize]);
            if (v - iv).abs() > VALIDATOR_TOL {
                return Ok(ValidationReport::fail(
                    name,
                    n,
                    checks,
                    Witness::AsymmetricImage {
                        generator: idx,
                        s,
                        image,
                        value: v,
                        image_value: iv,
                    },
                ));
            }
            let (lv, liv) = (instance.ell.value(s), instance.ell.value(image));
            if (lv - liv).abs() > VALIDATOR_TOL {
                return Ok(ValidationReport::fail(
                    name,
                    n,
                    checks,
                    Witness::AsymmetricImage {
                        generator: idx,
                        s,
                        image,
                        value: lv,
                        image_value: liv,
                    },
                ));
            }
        }
    }
    Ok(ValidationReport::pass(name, n, checks))
}

/// Runs every property a hard-family bundle promises, including invariance
/// under its own group.
pub fn validate_bundle(bundle: &InstanceBundle) -> Result<Vec<ValidationReport>> {
    let mut reports = vec![
        validate(&bundle.instance, Property::GNonNegative)?,
        validate(&bundle.instance, Property::GSubmodular)?,
        validate_invariance(&bundle.instance, &bundle.group)?,
    ];
    if bundle.instance.flags.g_monotone {
        reports.push(validate(&bundle.instance, Property::GMonotone)?);
    }
    Ok(reports)
}
