//! Reference values computed without the library routines under test.

use std::f64::consts::PI;

use rieszlab::Complex64;

/// `σ_{n-1}` by `σ_{n+1} = 2π σ_{n-1} / n` from `σ_1 = 2π`, `σ_2 = 4π`.
pub fn sigma(n: usize) -> f64 {
    match n {
        0 | 1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => 2.0 * PI * sigma(n - 2) / (n as f64 - 2.0),
    }
}

/// `Γ(k/2)` from `Γ(1/2) = √π`, `Γ(1) = 1`.
pub fn gamma_half(k: usize) -> f64 {
    match k {
        0 => f64::INFINITY,
        1 => PI.sqrt(),
        2 => 1.0,
        _ => (k as f64 / 2.0 - 1.0) * gamma_half(k - 2),
    }
}

/// Composite Simpson rule with `m` (rounded up to even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, m: usize) -> f64 {
    let m = m + m % 2;
    let h = (b - a) / m as f64;
    let inner: f64 = (1..m).map(|k| f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(a) + f(b) + inner) * h / 3.0
}

/// Eighth-order central difference.
pub fn derivative<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    let d = |k: f64| f(x + k * h) - f(x - k * h);
    (d(1.0) * 672.0 - d(2.0) * 168.0 + d(3.0) * 32.0 - d(4.0) * 3.0) / (840.0 * h)
}
