//! Small least-squares and extrapolation helpers shared by the laboratory
//! modules.

use crate::{LabError, LabResult};

/// Straight line `y ≈ intercept + slope·x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual.
    pub rms_residual: f64,
}

/// Ordinary least squares.
pub fn linear_fit(x: &[f64], y: &[f64]) -> LabResult<LineFit> {
    weighted_linear_fit(x, y, &vec![1.0; x.len()])
}

/// Weighted least squares minimising `Σ w_i (y_i - a - b x_i)²`.
pub fn weighted_linear_fit(x: &[f64], y: &[f64], w: &[f64]) -> LabResult<LineFit> {
    if x.len() != y.len() || x.len() != w.len() {
        return Err(LabError::Fit("length mismatch".into()));
    }
    if x.len() < 2 {
        return Err(LabError::Fit("need at least two points".into()));
    }
    if x.iter().chain(y).chain(w).any(|v| !v.is_finite()) || w.iter().any(|&v| v < 0.0) {
        return Err(LabError::Fit("non-finite data or negative weight".into()));
    }
    let sw: f64 = w.iter().sum();
    let mx = x.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let my = y.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..x.len() {
        sxx += w[i] * (x[i] - mx) * (x[i] - mx);
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
    }
    if !(sxx > 0.0) {
        return Err(LabError::Fit("abscissae are degenerate".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = (0..x.len()).map(|i| w[i] * (y[i] - intercept - slope * x[i]).powi(2)).sum();
    Ok(LineFit { slope, intercept, rms_residual: (ss / sw).sqrt() })
}

/// Fit of `log y` against `log x`; all data must be positive.
pub fn log_log_fit(x: &[f64], y: &[f64]) -> LabResult<LineFit> {
    if x.iter().chain(y).any(|&v| !(v > 0.0)) {
        return Err(LabError::Fit("log-log fit needs positive data".into()));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    linear_fit(&lx, &ly)
}

/// Rate `b` of `v(y) ≈ C e^{b y}`.
pub fn exponential_rate_fit(y: &[f64], v: &[f64]) -> LabResult<LineFit> {
    if v.iter().any(|&t| !(t > 0.0)) {
        return Err(LabError::Fit("exponential fit needs positive values".into()));
    }
    let lv: Vec<f64> = v.iter().map(|t| t.ln()).collect();
    linear_fit(y, &lv)
}

/// Geometric grid of `per_octave` points per factor of two on `[lo, hi]`.
pub fn geometric_grid(lo: f64, hi: f64, per_octave: usize) -> Vec<f64> {
    let octaves = (hi / lo).log2();
    let count = (octaves * per_octave as f64).round() as usize;
    (0..=count).map(|k| lo * 2f64.powf(k as f64 / per_octave as f64)).collect()
}

/// Maximum of `|v|` over each complete octave `[lo·2^k, lo·2^{k+1})`,
/// reported at the octave's geometric centre.
pub fn octave_envelope(xs: &[f64], vs: &[f64]) -> Vec<(f64, f64)> {
    let Some(&lo) = xs.first() else { return Vec::new() };
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut current = 0usize;
    let mut best = 0.0f64;
    let mut seen = false;
    for (&x, &v) in xs.iter().zip(vs) {
        let k = ((x / lo).log2() + 1e-9).floor() as usize;
        if k != current && seen {
            out.push((lo * 2f64.powf(current as f64 + 0.5), best));
            best = 0.0;
        }
        current = k;
        seen = true;
        best = best.max(v.abs());
    }
    let last_complete = (xs[xs.len() - 1] / lo).log2() + 1e-9 >= (current + 1) as f64;
    if seen && last_complete {
        out.push((lo * 2f64.powf(current as f64 + 0.5), best));
    }
    out
}

/// Result of extrapolating `v(h) = L + Σ_j c_j h^{p_j}` to `h = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolation {
    pub value: f64,
    /// Same extrapolation using the preceding window of samples.
    pub previous: f64,
}

impl Extrapolation {
    pub fn spread(&self) -> f64 {
        (self.value - self.previous).abs()
    }
}

/// Richardson extrapolation with known error exponents, fitted exactly on
/// the last `exponents.len() + 1` samples (smallest `h`).
pub fn richardson(h: &[f64], v: &[f64], exponents: &[f64]) -> LabResult<Extrapolation> {
    let m = exponents.len() + 1;
    if h.len() != v.len() || h.len() < m + 1 {
        return Err(LabError::Fit(format!("Richardson needs at least {} samples", m + 1)));
    }
    let solve_window = |start: usize| -> LabResult<f64> {
        let mut a = vec![vec![0.0; m + 1]; m];
        for (row, i) in (start..start + m).enumerate() {
            a[row][0] = 1.0;
            for (j, &p) in exponents.iter().enumerate() {
                a[row][j + 1] = h[i].powf(p);
            }
            a[row][m] = v[i];
        }
        Ok(solve(a)?[0])
    };
    let n = h.len();
    Ok(Extrapolation { value: solve_window(n - m)?, previous: solve_window(n - m - 1)? })
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut a: Vec<Vec<f64>>) -> LabResult<Vec<f64>> {
    let m = a.len();
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty");
        if a[piv][col].abs() < 1e-300 {
            return Err(LabError::Fit("singular extrapolation system".into()));
        }
        a.swap(col, piv);
        for row in col + 1..m {
            let f = a[row][col] / a[col][col];
            #[allow(clippy::needless_range_loop)]
            for k in col..=m {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let tail: f64 = (row + 1..m).map(|k| a[row][k] * x[k]).sum();
        x[row] = (a[row][m] - tail) / a[row][row];
    }
    Ok(x)
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`; returns `(x, f(x))`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
