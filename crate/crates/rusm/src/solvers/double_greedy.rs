//! Double greedy over `f = g + ℓ`: one pass through the elements keeping
//! nested sets `X ⊆ Y` that meet at the output. The deterministic variant
//! compares the two marginals; the randomized one mixes them.

use rand::Rng;

use crate::core::marginal;
use crate::core::mask::SubsetMask;
use crate::core::oracle::RusmInstance;
use crate::core::rng::Seed;
use crate::error::{Result, RusmError};
use crate::solvers::{Algorithm, DgStep, DgTrace, MoveKind, MoveRecord, SolverReport};

fn check_order(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(RusmError::param(
            "element_order",
            format!("{} entries for a ground set of size {n}", order.len()),
        ));
    }
    let mut seen = vec![false; n];
    for &u in order {
        if u >= n {
            return Err(RusmError::IndexOutOfRange { index: u, n });
        }
        if seen[u] {
            return Err(RusmError::param("element_order", format!("element {u} repeated")));
        }
        seen[u] = true;
    }
    Ok(())
}

/// Ascending element order, the default for both variants.
pub fn ascending_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn run_double_greedy(
    instance: &RusmInstance,
    order: &[usize],
    algorithm: Algorithm,
    seed: Option<Seed>,
    mut decide: impl FnMut(f64, f64) -> MoveKind,
) -> Result<SolverReport> {
    let n = instance.n();
    check_order(order, n)?;
    let inst = instance.fork();

    let mut x = SubsetMask::EMPTY;
    let mut y = inst.ground.full_mask();
    let mut steps = Vec::with_capacity(n);
    let mut trace = Vec::with_capacity(n);
    for (i, &u) in order.iter().enumerate() {
        // a_i = f(u | X), b_i = −f(u | Y − u): two g-queries each, so the
        // pass spends exactly four queries per element.
        let a = marginal(&inst.g, u, x)? + inst.ell.weight(u);
        let b = -(marginal(&inst.g, u, y.without(u))? + inst.ell.weight(u));
        let decision = decide(a, b);
        match decision {
            MoveKind::Add => x = x.with(u),
            MoveKind::Remove => y = y.without(u),
        }
        steps.push(DgStep { element: u, a, b, decision, x_card: x.card(), y_card: y.card() });
        trace.push(MoveRecord {
            iteration: (i + 1) as u64,
            kind: decision,
            element: u,
            gain: match decision {
                MoveKind::Add => a,
                MoveKind::Remove => b,
            },
        });
    }
    debug_assert_eq!(x, y, "the nested sets must meet after the last element");

    let g_value = inst.g.evaluate(x);
    let ell_value = inst.ell.value(x);
    Ok(SolverReport {
        algorithm,
        n,
        output_set: x,
        g_value,
        ell_value,
        objective: g_value + ell_value,
        oracle_queries: inst.g.query_count(),
        seed,
        move_trace: trace,
        ls: None,
        dg_trace: Some(DgTrace { steps }),
    })
}

/// Deterministic double greedy: take `u` iff `a_i ≥ b_i`.
pub fn double_greedy_det(instance: &RusmInstance, order: &[usize]) -> Result<SolverReport> {
    run_double_greedy(instance, order, Algorithm::DgDet, None, |a, b| {
        if a >= b {
            MoveKind::Add
        } else {
            MoveKind::Remove
        }
    })
}

/// Randomized double greedy: certain decisions (`b_i ≤ 0` add, then
/// `a_i ≤ 0` remove) stay deterministic, otherwise add with probability
/// `a_i/(a_i + b_i)`.
pub fn double_greedy_rand(
    instance: &RusmInstance,
    order: &[usize],
    seed: Seed,
) -> Result<SolverReport> {
    let mut rng = seed.rng();
    run_double_greedy(instance, order, Algorithm::DgRand, Some(seed), move |a, b| {
        if b <= 0.0 {
            MoveKind::Add
        } else if a <= 0.0 {
            MoveKind::Remove
        } else if rng.gen_bool(a / (a + b)) {
            MoveKind::Add
        } else {
            MoveKind::Remove
        }
    })
}
