//! Bracketed golden-section search, the only optimizer the frontier and gap
//! computations need: every 2-D problem here reduces to nested or
//! alternating 1-D maximizations.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Maximizes `f` on `[lo, hi]` down to an argument bracket of width `tol`.
/// Returns `(argmax, value)`. Exact on unimodal functions; on multimodal
/// input it converges to one local maximum inside the bracket.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    assert!(lo <= hi && tol > 0.0, "bad bracket [{lo}, {hi}] or tol {tol}");
    let (mut lo, mut hi) = (lo, hi);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Minimizing counterpart of [`golden_section_max`].
pub fn golden_section_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (x, neg) = golden_section_max(|x| -f(x), lo, hi, tol);
    (x, -neg)
}

/// Coarse scan on `grid + 1` evenly spaced points, then golden-section
/// inside the bracket around the best point. The scan result is kept when
/// the refinement cannot beat it, so the returned value never regresses
/// below the best grid sample.
pub fn scan_then_golden(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    grid: usize,
    tol: f64,
) -> (f64, f64) {
    assert!(grid >= 2, "need at least two scan intervals");
    let step = (hi - lo) / grid as f64;
    let mut best_i = 0usize;
    let mut best_x = lo;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=grid {
        let x = if i == grid { hi } else { lo + step * i as f64 };
        let v = f(x);
        if v > best_v {
            best_i = i;
            best_x = x;
            best_v = v;
        }
    }
    let b_lo = lo + step * best_i.saturating_sub(1) as f64;
    let b_hi = (lo + step * (best_i + 1) as f64).min(hi);
    let (x, v) = golden_section_max(&f, b_lo, b_hi, tol);
    if v >= best_v {
        (x, v)
    } else {
        (best_x, best_v)
    }
}
