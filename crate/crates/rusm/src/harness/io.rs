//! Instance files and CSV emission.
//!
//! Instance schema: `{"n": int, "g": {"kind": str, "params": {...}}, "ell":
//! [float; n]}`. Hard-family files carry their weights explicitly but the
//! oracle is rebuilt from the descriptor; a weight vector that contradicts
//! the family parameters is rejected.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::core::mask::SubsetMask;
use crate::core::oracle::{LinearWeights, RusmInstance};
use crate::error::{Result, RusmError};
use crate::hardness::CurvePoint;
use crate::harness::experiment::TrialRow;
use crate::instances::{make_coverage_instance, make_cut_instance, HardInstanceDescriptor};

/// Parsed instance file: everything needed to rebuild the oracle or write
/// the file back out.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceDescription {
    Hard(HardInstanceDescriptor),
    Cut { n: usize, edges: Vec<(usize, usize, f64)>, ell: Vec<f64> },
    Coverage { n: usize, sets: Vec<Vec<usize>>, values: Vec<f64>, ell: Vec<f64> },
}

impl InstanceDescription {
    pub fn build(&self) -> Result<RusmInstance> {
        match self {
            InstanceDescription::Hard(descriptor) => Ok(descriptor.build()?.instance),
            InstanceDescription::Cut { edges, ell, .. } => {
                make_cut_instance(edges.clone(), LinearWeights::new(ell.clone())?)
            }
            InstanceDescription::Coverage { sets, values, ell, .. } => {
                let masks =
                    sets.iter().map(|s| SubsetMask::from_elements(s.iter().copied())).collect();
                make_coverage_instance(masks, values.clone(), LinearWeights::new(ell.clone())?)
            }
        }
    }

    /// Ground-set size, i.e. the file's top-level `n`.
    pub fn n(&self) -> usize {
        match self {
            InstanceDescription::Hard(d) => d.ground_size(),
            InstanceDescription::Cut { n, .. } | InstanceDescription::Coverage { n, .. } => *n,
        }
    }

    fn to_json(&self) -> Result<Value> {
        let (kind, params, ell) = match self {
            InstanceDescription::Hard(descriptor) => {
                let params = match *descriptor {
                    HardInstanceDescriptor::CappedCardinality { r, .. } => json!({ "r": r }),
                    HardInstanceDescriptor::PairedParity { t, r, .. } => json!({ "t": t, "r": r }),
                    HardInstanceDescriptor::ParityBonus { .. } => json!({}),
                };
                let ell = descriptor.build()?.instance.ell.as_slice().to_vec();
                (descriptor.kind(), params, ell)
            }
            InstanceDescription::Cut { edges, ell, .. } => {
                let edges: Vec<Value> = edges.iter().map(|&(u, v, w)| json!([u, v, w])).collect();
                ("cut", json!({ "edges": edges }), ell.clone())
            }
            InstanceDescription::Coverage { sets, values, ell, .. } => {
                ("coverage", json!({ "sets": sets, "values": values }), ell.clone())
            }
        };
        Ok(json!({ "n": self.n(), "g": { "kind": kind, "params": params }, "ell": ell }))
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> RusmError {
    RusmError::schema(path, message)
}

fn want_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn want_field<'a>(obj: &'a Map<String, Value>, key: &str, parent: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(join(parent, key), "missing field"))
}

fn want_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn want_finite(v: &Value, path: &str) -> Result<f64> {
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(schema(path, "expected a finite number")),
    }
}

fn want_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn join(parent: &str, key: &str) -> String {
    if parent.is_empty() {
        key.to_string()
    } else {
        format!("{parent}.{key}")
    }
}

/// Re-keys a descriptor-construction error to the file path of the
/// offending field.
fn at_params(err: RusmError) -> RusmError {
    match err {
        RusmError::InvalidParameter { name, reason } => schema(format!("g.params.{name}"), reason),
        other => other,
    }
}

fn parse_description(root: &Value) -> Result<InstanceDescription> {
    let obj = want_object(root, "")?;
    let n = want_usize(want_field(obj, "n", "")?, "n")?;
    if n == 0 || n > crate::core::mask::MAX_GROUND {
        return Err(schema("n", format!("{n} outside [1, {}]", crate::core::mask::MAX_GROUND)));
    }
    let g = want_object(want_field(obj, "g", "")?, "g")?;
    let kind = want_field(g, "kind", "g")?
        .as_str()
        .ok_or_else(|| schema("g.kind", "expected a string"))?;
    let params = want_object(want_field(g, "params", "g")?, "g.params")?;

    let ell_values = want_array(want_field(obj, "ell", "")?, "ell")?;
    if ell_values.len() != n {
        return Err(schema("ell", format!("{} weights for n = {n}", ell_values.len())));
    }
    let ell: Vec<f64> = ell_values
        .iter()
        .enumerate()
        .map(|(i, v)| want_finite(v, &format!("ell[{i}]")))
        .collect::<Result<_>>()?;

    let param_f64 =
        |key: &str| want_finite(want_field(params, key, "g.params")?, &join("g.params", key));

    // The oracle comes from the descriptor; the stored weights must agree
    // with it.
    let checked_hard = |d: HardInstanceDescriptor| -> Result<InstanceDescription> {
        let family_ell = d.build()?.instance.ell;
        let matches = family_ell.as_slice().len() == ell.len()
            && family_ell.as_slice().iter().zip(&ell).all(|(a, b)| (a - b).abs() <= 1e-12);
        if !matches {
            return Err(schema("ell", "weights do not match the family parameters"));
        }
        Ok(InstanceDescription::Hard(d))
    };

    let description = match kind {
        "monotone_sec3" => {
            let r = param_f64("r")?;
            checked_hard(HardInstanceDescriptor::capped_cardinality(n, r).map_err(at_params)?)?
        }
        "negative_sec5" => {
            if n < 4 || (n - 2) % 2 != 0 {
                return Err(schema("n", format!("{n} is not 2·block + 2 for this family")));
            }
            let t = param_f64("t")?;
            let r = param_f64("r")?;
            checked_hard(
                HardInstanceDescriptor::paired_parity((n - 2) / 2, t, r).map_err(at_params)?,
            )?
        }
        "positive_sec61" => {
            if n < 4 {
                return Err(schema("n", format!("{n} is not block + 2 for this family")));
            }
            checked_hard(HardInstanceDescriptor::parity_bonus(n - 2).map_err(at_params)?)?
        }
        "cut" => {
            let raw = want_array(want_field(params, "edges", "g.params")?, "g.params.edges")?;
            let mut edges = Vec::with_capacity(raw.len());
            for (i, e) in raw.iter().enumerate() {
                let path = format!("g.params.edges[{i}]");
                let triple = want_array(e, &path)?;
                if triple.len() != 3 {
                    return Err(schema(path, "expected [u, v, weight]"));
                }
                edges.push((
                    want_usize(&triple[0], &format!("{path}[0]"))?,
                    want_usize(&triple[1], &format!("{path}[1]"))?,
                    want_finite(&triple[2], &format!("{path}[2]"))?,
                ));
            }
            InstanceDescription::Cut { n, edges, ell }
        }
        "coverage" => {
            let raw_sets = want_array(want_field(params, "sets", "g.params")?, "g.params.sets")?;
            if raw_sets.len() != n {
                return Err(schema(
                    "g.params.sets",
                    format!("{} sets for n = {n}", raw_sets.len()),
                ));
            }
            let mut sets = Vec::with_capacity(n);
            for (i, s) in raw_sets.iter().enumerate() {
                let path = format!("g.params.sets[{i}]");
                let members = want_array(s, &path)?;
                sets.push(
                    members
                        .iter()
                        .enumerate()
                        .map(|(j, m)| want_usize(m, &format!("{path}[{j}]")))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            let raw_values =
                want_array(want_field(params, "values", "g.params")?, "g.params.values")?;
            let values = raw_values
                .iter()
                .enumerate()
                .map(|(i, v)| want_finite(v, &format!("g.params.values[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            InstanceDescription::Coverage { n, sets, values, ell }
        }
        other => return Err(schema("g.kind", format!("unknown kind {other:?}"))),
    };

    // Cut and coverage instances get their structural validation (endpoint
    // ranges, element bounds) from the constructors.
    description.build()?;
    Ok(description)
}

/// Parses and validates an instance file without building the oracle twice.
pub fn load_description(path: impl AsRef<Path>) -> Result<InstanceDescription> {
    let text = std::fs::read_to_string(path)?;
    let root: Value = serde_json::from_str(&text)?;
    parse_description(&root)
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<RusmInstance> {
    load_description(path)?.build()
}

pub fn save_instance(description: &InstanceDescription, path: impl AsRef<Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&description.to_json()?)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// CSV with header `beta,curve_id,alpha`, one row per curve point.
pub fn write_curves_csv(points: &[CurvePoint], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "beta,curve_id,alpha")?;
    for p in points {
        writeln!(out, "{},{},{}", p.beta, p.curve_id, p.alpha)?;
    }
    Ok(())
}

/// CSV with header `trial,seed,g_value,ell_value,total,queries`; the seed
/// column is `master:stream`.
pub fn write_trials_csv(rows: &[TrialRow], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "trial,seed,g_value,ell_value,total,queries")?;
    for r in rows {
        writeln!(
            out,
            "{},{}:{},{},{},{},{}",
            r.trial, r.seed.master, r.seed.stream, r.g_value, r.ell_value, r.total, r.queries
        )?;
    }
    Ok(())
}
