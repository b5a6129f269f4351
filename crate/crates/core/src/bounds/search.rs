//! One-dimensional maximisation: a log-spaced grid scan followed by
//! golden-section refinement inside the bracket around the best grid point.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximiser of a function that is unimodal on `[lo, hi]`.
///
/// Returns `(x, f(x))` for the best point evaluated once the bracket is
/// shorter than `tol · (1 + |x|)`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..200 {
        if hi - lo <= tol * (1.0 + best.0.abs()) {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        for cand in [(x1, f1), (x2, f2)] {
            if cand.1 > best.1 {
                best = cand;
            }
        }
    }
    best
}

/// `n` points spaced evenly in `ln x` over `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Grid scan restricted to grid points inside `window`, then golden-section
/// refinement between the neighbours of the best point.
pub fn grid_then_golden<F: Fn(f64) -> f64>(
    f: &F,
    grid: &[f64],
    window: (f64, f64),
) -> Option<(f64, f64)> {
    let (idx, _) = grid
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > window.0 && x < window.1)
        .map(|(i, &x)| (i, f(x)))
        .fold(None::<(usize, f64)>, |acc, (i, v)| match acc {
            Some((_, bv)) if bv >= v => acc,
            _ => Some((i, v)),
        })?;
    let lo = if idx == 0 { grid[0] } else { grid[idx - 1] }.max(window.0);
    let hi = if idx + 1 == grid.len() { grid[idx] } else { grid[idx + 1] }.min(window.1);
    let refined = golden_section_max(f, lo, hi, 1e-14);
    let at_grid = (grid[idx], f(grid[idx]));
    Some(if refined.1 >= at_grid.1 { refined } else { at_grid })
}
