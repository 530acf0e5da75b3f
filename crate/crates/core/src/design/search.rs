//! One-dimensional scan-and-refine minimization.

/// Inverse golden ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Relative bracket width at which refinements stop.
pub const REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub bracket: [f64; 2],
    pub iterations: usize,
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`, stopping once the
/// bracket is narrower than `width`.
///
/// The reported point is the best of the final interior point and the two
/// bracket ends, so it never exceeds the objective at the bracket.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, width: f64, max_iter: usize) -> Minimum {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while iterations < max_iter && (b - a) > width {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iterations += 1;
    }
    let (mut x, mut value) = if fc <= fd { (c, fc) } else { (d, fd) };
    for end in [a, b] {
        let fe = f(end);
        if fe < value {
            x = end;
            value = fe;
        }
    }
    Minimum {
        x,
        value,
        bracket: [a, b],
        iterations,
    }
}

/// Golden refinement of a positive variable in `ln x`, where an absolute
/// bracket width in `ln x` is a relative width in `x`.
pub fn golden_section_log<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, rel_tol: f64) -> Minimum {
    let m = golden_section(|u| f(u.exp()), lo.ln(), hi.ln(), rel_tol, 1000);
    Minimum {
        x: m.x.exp(),
        value: m.value,
        bracket: [m.bracket[0].exp(), m.bracket[1].exp()],
        iterations: m.iterations,
    }
}

/// `points` samples from `lo` to `hi`, evenly spaced in `ln x`; the ends are exact.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (l0, l1) = (lo.ln(), hi.ln());
    let last = (points.max(2) - 1) as f64;
    (0..points)
        .map(|i| match i {
            0 => lo,
            i if i + 1 == points => hi,
            i => (l0 + (l1 - l0) * i as f64 / last).exp(),
        })
        .collect()
}

/// `points` evenly spaced samples from `lo` to `hi`; the ends are exact.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let last = (points.max(2) - 1) as f64;
    (0..points)
        .map(|i| match i {
            0 => lo,
            i if i + 1 == points => hi,
            i => lo + (hi - lo) * i as f64 / last,
        })
        .collect()
}

/// Interior samples where the discrete slope turns from negative to non-negative.
pub fn local_minima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] < values[i - 1] && values[i] <= values[i + 1])
        .collect()
}

/// Index of the smallest sample (first one on ties).
pub fn argmin(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold(
            (0, f64::INFINITY),
            |best, (i, &v)| if v < best.1 { (i, v) } else { best },
        )
        .0
}

/// Neighbouring grid points around `index`, clamped to the grid.
pub fn cell(grid: &[f64], index: usize) -> (f64, f64) {
    (
        grid[index.saturating_sub(1)],
        grid[(index + 1).min(grid.len() - 1)],
    )
}
