use super::gamma::{nonpositive_integer, rgamma_complex, sin_pi};
use super::SeriesConfig;
use crate::quadrule::gl16;
use crate::{Complex, LabError, LabResult, Real};

/// Largest argument at which the ascending series is used.
pub const SERIES_MAX_X: f64 = 14.0;

/// Radius `x* = max(14, 1.5 |ν|²)` from which the Hankel expansion is used.
pub fn switchover_radius<T: Real>(nu: Complex<T>) -> T {
    T::lit(SERIES_MAX_X).max(T::lit(1.5) * nu.norm_sqr())
}

fn check_argument<T: Real>(nu: Complex<T>, x: T) -> LabResult<()> {
    if !(nu.re.is_finite() && nu.im.is_finite()) {
        return Err(LabError::Domain(format!("order {nu} must be finite")));
    }
    if !(x > T::zero()) || !x.is_finite() {
        return Err(LabError::Domain(format!("Bessel argument x = {x} must be positive")));
    }
    Ok(())
}

/// `J_ν(x)` for complex order and positive real argument.
///
/// Regimes: ascending series for `x <= 14`, Hankel expansion for
/// `x >= x*(ν)`, and in between forward recurrence from the fractional order
/// (real `0 <= ν <= x`) or Schläfli's integral (all other orders).
pub fn bessel_j<T: Real>(nu: Complex<T>, x: T, cfg: &SeriesConfig<T>) -> LabResult<Complex<T>> {
    check_argument(nu, x)?;
    if let Some(m) = nonpositive_integer(nu).filter(|&m| m > 0) {
        let j = bessel_j(Complex::new(T::from_u64(m).unwrap(), T::zero()), x, cfg)?;
        return Ok(if m % 2 == 1 { -j } else { j });
    }
    if x >= switchover_radius(nu) {
        bessel_j_hankel(nu, x, cfg)
    } else if x <= T::lit(SERIES_MAX_X) {
        bessel_j_series(nu, x, cfg)
    } else if nu.im == T::zero() && nu.re >= T::zero() && nu.re <= x {
        forward_recurrence(nu.re, x, cfg)
    } else {
        bessel_j_schlafli(nu, x)
    }
}

/// Ascending series `(x/2)^ν Σ (-x²/4)^k / (k! Γ(ν+k+1))`, guarded against
/// cancellation.
pub fn bessel_j_series<T: Real>(
    nu: Complex<T>,
    x: T,
    cfg: &SeriesConfig<T>,
) -> LabResult<Complex<T>> {
    check_argument(nu, x)?;
    cfg.validate()?;
    if let Some(m) = nonpositive_integer(nu).filter(|&m| m > 0) {
        let j = bessel_j_series(Complex::new(T::from_u64(m).unwrap(), T::zero()), x, cfg)?;
        return Ok(if m % 2 == 1 { -j } else { j });
    }
    let one = Complex::new(T::one(), T::zero());
    let q = -x * x / T::lit(4.0);
    let t0 = rgamma_complex(nu + one)?;
    let mut term = t0;
    let mut sum = t0;
    let mut largest = t0.norm();
    let peak = x / T::lit(2.0);
    let mut small_run = 0;
    let mut converged = false;
    for k in 1..cfg.max_terms {
        let kk = T::from_count(k);
        term = term * q / ((nu + kk) * kk);
        sum = sum + term;
        largest = largest.max(term.norm());
        if kk > peak && term.norm() <= cfg.rel_tol * sum.norm() {
            small_run += 1;
            if small_run >= 2 {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if !converged {
        return Err(LabError::Convergence(format!("Bessel series at x = {x}")));
    }
    let pref = (nu * (x / T::lit(2.0)).ln()).exp();
    let j = pref * sum;
    let envelope = (T::lit(2.0) / (T::PI() * x)).sqrt() * (T::FRAC_PI_2() * nu.im).cosh();
    let scale = j.norm().max(envelope.min((pref * t0).norm()));
    let ratio = largest * pref.norm() / scale;
    if ratio > cfg.cancellation_guard {
        return Err(LabError::PrecisionLoss {
            ratio: ratio.to_f64().unwrap_or(f64::INFINITY),
            guard: cfg.cancellation_guard.to_f64().unwrap_or(f64::INFINITY),
        });
    }
    Ok(j)
}

/// `J_ν(x) (x/2)^{-ν}` for `0 < x <= 2`, where the series has no cancellation.
pub(crate) fn bessel_j_reduced<T: Real>(nu: Complex<T>, x: T, cfg: &SeriesConfig<T>) -> LabResult<Complex<T>> {
    debug_assert!(x <= T::lit(2.0));
    let q = -x * x / T::lit(4.0);
    let mut term = rgamma_complex(nu + Complex::new(T::one(), T::zero()))?;
    let mut sum = term;
    for k in 1..cfg.max_terms {
        let kk = T::from_count(k);
        term = term * q / ((nu + kk) * kk);
        sum = sum + term;
        if term.norm() <= cfg.rel_tol * sum.norm() && kk > T::one() {
            return Ok(sum);
        }
    }
    Err(LabError::Convergence(format!("reduced Bessel series at x = {x}")))
}

/// Hankel expansion `sqrt(2/(πx)) (P cos ω - Q sin ω)`, `ω = x - νπ/2 - π/4`,
/// summed up to its smallest term.
pub fn bessel_j_hankel<T: Real>(
    nu: Complex<T>,
    x: T,
    cfg: &SeriesConfig<T>,
) -> LabResult<Complex<T>> {
    check_argument(nu, x)?;
    let mu4 = nu * nu * T::lit(4.0);
    let eight_x = T::lit(8.0) * x;
    let mut p = Complex::new(T::one(), T::zero());
    let mut q = Complex::new(T::zero(), T::zero());
    let mut a = Complex::new(T::one(), T::zero());
    let mut prev = T::one();
    for k in 1..cfg.max_terms {
        let kk = T::from_count(k);
        let odd = T::lit(2.0) * kk - T::one();
        let next = a * (mu4 - odd * odd) / (kk * eight_x);
        let size = next.norm();
        if k >= 2 && size >= prev {
            break;
        }
        a = next;
        prev = size;
        let signed = if (k / 2) % 2 == 0 { a } else { -a };
        if k % 2 == 0 {
            p = p + signed;
        } else {
            q = q + signed;
        }
        if size == T::zero() || size <= cfg.rel_tol * p.norm().max(q.norm()) {
            break;
        }
    }
    let omega = Complex::new(x - T::FRAC_PI_4(), T::zero()) - nu * T::FRAC_PI_2();
    let amp = (T::lit(2.0) / (T::PI() * x)).sqrt();
    Ok((p * omega.cos() - q * omega.sin()) * amp)
}

/// Schläfli's integral, valid for every order and `x > 0`:
/// `J_ν(x) = (1/π)∫_0^π cos(x sin θ - νθ) dθ - (sin νπ/π)∫_0^∞ e^{-x sinh t - νt} dt`,
/// evaluated with composite 16-point Gauss–Legendre panels.
pub fn bessel_j_schlafli<T: Real>(nu: Complex<T>, x: T) -> LabResult<Complex<T>> {
    check_argument(nu, x)?;
    let (nodes, weights) = gl16();
    let half = T::lit(0.5);
    let panel = T::lit(8.0);

    let freq = x + nu.norm();
    let m1 = (freq * T::PI() / panel).ceil().to_usize().unwrap_or(1) + 1;
    let h1 = T::PI() / T::from_count(m1);
    let mut first = Complex::new(T::zero(), T::zero());
    for i in 0..m1 {
        let mid = h1 * (T::from_count(i) + half);
        for (&u, &w) in nodes.iter().zip(weights) {
            let theta = mid + h1 * half * T::lit(u);
            let arg = Complex::new(x * theta.sin(), T::zero()) - nu * theta;
            first = first + arg.cos() * T::lit(w);
        }
    }
    first = first * (h1 * half / T::PI());

    let s = sin_pi(nu);
    if s.norm() == T::zero() {
        return Ok(first);
    }
    let cutoff = T::lit(50.0);
    let mut t_max = (cutoff / x).asinh();
    while x * t_max.sinh() + nu.re * t_max < cutoff {
        t_max = t_max + half;
    }
    let slope = x * t_max.cosh() + nu.norm();
    let m2 = (t_max * slope / panel).ceil().to_usize().unwrap_or(1) + 1;
    let h2 = t_max / T::from_count(m2);
    let mut second = Complex::new(T::zero(), T::zero());
    for i in 0..m2 {
        let mid = h2 * (T::from_count(i) + half);
        for (&u, &w) in nodes.iter().zip(weights) {
            let t = mid + h2 * half * T::lit(u);
            let e = (Complex::new(-x * t.sinh(), T::zero()) - nu * t).exp();
            second = second + e * T::lit(w);
        }
    }
    second = second * (h2 * half / T::PI());
    Ok(first - s * second)
}

/// Upward recurrence `J_{k+1} = (2k/x) J_k - J_{k-1}` from the fractional
/// order; stable while the order stays below `x`.
fn forward_recurrence<T: Real>(nu: T, x: T, cfg: &SeriesConfig<T>) -> LabResult<Complex<T>> {
    let base = nu.floor();
    let frac = nu - base;
    let steps = base.to_usize().unwrap_or(0);
    let mut prev = bessel_j(Complex::new(frac, T::zero()), x, cfg)?;
    if steps == 0 {
        return Ok(prev);
    }
    let mut cur = bessel_j(Complex::new(frac + T::one(), T::zero()), x, cfg)?;
    for k in 1..steps {
        let order = frac + T::from_count(k);
        let next = cur * (T::lit(2.0) * order / x) - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma_complex, gamma_real};
    use crate::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> SeriesConfig<f64> {
        SeriesConfig::default()
    }

    fn j(nu: f64, x: f64) -> f64 {
        bessel_j(c(nu, 0.0), x, &cfg()).unwrap().re
    }

    /// Closed trigonometric form of `J_{m+1/2}` (finite sum), test oracle.
    /// Accurate only for `x >= m`.
    fn half_integer_oracle(m: u32, x: f64) -> f64 {
        let fact = |k: u32| (1..=k).map(|i| i as f64).product::<f64>();
        let mut even = 0.0;
        let mut odd = 0.0;
        for k in 0..=m {
            let coef = fact(m + k) / (fact(k) * fact(m - k) * (2.0 * x).powi(k as i32));
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                even += sign * coef;
            } else {
                odd += sign * coef;
            }
        }
        let phase = x - m as f64 * PI / 2.0;
        (2.0 / (PI * x)).sqrt() * (phase.sin() * even + phase.cos() * odd)
    }

    #[test]
    fn small_argument_limit() {
        assert!((j(0.0, 1e-12) - 1.0).abs() < 1e-15);
        for nu in [0.3, 1.0, 2.5] {
            for z in [1e-3, 1e-4] {
                let ratio = j(nu, z) * gamma_real(nu + 1.0).unwrap() * (2.0 / z).powf(nu);
                assert!((ratio - 1.0).abs() < 1e-5, "ν={nu} z={z}: {ratio}");
            }
        }
    }

    #[test]
    fn half_order_zero_at_pi() {
        assert!(j(0.5, PI).abs() < 1e-15);
    }

    #[test]
    fn half_integer_closed_forms_all_regimes() {
        for m in 0..6u32 {
            for &x in &[0.05, 0.7, 3.0, 9.5, 13.9, 14.1, 20.0, 33.3, 47.0, 80.0, 150.0, 600.0] {
                if x < m as f64 {
                    // the closed form cancels catastrophically for x << m
                    continue;
                }
                let oracle = half_integer_oracle(m, x);
                let got = j(m as f64 + 0.5, x);
                assert!((got - oracle).abs() < 1e-12 * (1.0 + oracle.abs()), "m={m} x={x}: {got} vs {oracle}");
            }
        }
        let x = 2.0;
        assert!((j(-0.5, x) - (2.0 / (PI * x)).sqrt() * x.cos()).abs() < 1e-15);
    }

    #[test]
    fn negative_integer_order_reflects() {
        for x in [0.5, 7.0, 30.0] {
            assert!((j(-3.0, x) + j(3.0, x)).abs() < 1e-14);
            assert!((j(-2.0, x) - j(2.0, x)).abs() < 1e-14);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(bessel_j(c(0.0, 0.0), 0.0, &cfg()), Err(LabError::Domain(_))));
        assert!(matches!(bessel_j(c(0.0, 0.0), -1.0, &cfg()), Err(LabError::Domain(_))));
    }

    #[test]
    fn series_reports_precision_loss_at_large_argument() {
        let r = bessel_j_series(c(0.0, 0.0), 60.0, &cfg());
        assert!(matches!(r, Err(LabError::PrecisionLoss { .. })));
    }

    #[test]
    fn series_and_hankel_overlap_at_switchover() {
        let orders = [c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.0), c(2.3, 0.0), c(3.0, 0.0), c(1.5, -2.0), c(0.2, 1.3), c(2.0, 2.0)];
        for nu in orders {
            let xs = switchover_radius(nu);
            assert_eq!(xs, 14.0);
            let s = bessel_j_series(nu, xs, &cfg()).unwrap();
            let h = bessel_j_hankel(nu, xs, &cfg()).unwrap();
            assert!((s - h).norm() < 1e-8, "ν={nu}: {s} vs {h}");
        }
    }

    #[test]
    fn middle_regime_matches_hankel_at_switchover() {
        let orders = [c(4.0, 0.0), c(6.7, 0.0), c(3.5, -4.0), c(2.5, 8.0), c(3.5, -8.0)];
        for nu in orders {
            let xs = switchover_radius(nu);
            let below = bessel_j(nu, xs * (1.0 - 1e-12), &cfg()).unwrap();
            let h = bessel_j_hankel(nu, xs, &cfg()).unwrap();
            assert!((below - h).norm() < 1e-8 * (1.0 + h.norm()), "ν={nu}: {below} vs {h}");
        }
    }

    #[test]
    fn schlafli_matches_series_for_complex_order() {
        for nu in [c(0.3, 0.0), c(3.5, -2.0), c(4.5, 6.0), c(-0.4, 1.0), c(2.0, 0.0)] {
            for x in [2.0, 4.0, 11.0] {
                let s = bessel_j_series(nu, x, &cfg()).unwrap();
                let q = bessel_j_schlafli(nu, x).unwrap();
                // the integrand is of size cosh(π Im ν); absolute accuracy follows it
                let tol = 1e-11 * (1.0 + s.norm()) + 1e-13 * (PI * nu.im).cosh();
                assert!((s - q).norm() < tol, "ν={nu} x={x}: {s} vs {q}");
            }
        }
    }

    #[test]
    fn complex_order_asymptotic_residual_is_order_three_halves() {
        // Residual of the leading Hankel term for ν = n + 1/2 - iy; the fitted
        // constant C = residual · x^{3/2} stays bounded as x grows.
        for (n, y) in [(2.0, 1.0), (3.0, 3.0), (2.0, 5.0)] {
            let nu = c(n + 0.5, -y);
            let constants: Vec<f64> = [200.0, 400.0, 800.0, 1600.0]
                .iter()
                .map(|&x| {
                    let full = bessel_j(nu, x, &cfg()).unwrap();
                    let omega = c(x - PI / 4.0, 0.0) - nu * (PI / 2.0);
                    let lead = omega.cos() * (2.0 / (PI * x)).sqrt();
                    (full - lead).norm() * x.powf(1.5)
                })
                .collect();
            let max = constants.iter().cloned().fold(0.0, f64::max);
            let min = constants.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(max / min < 3.0, "ν={nu}: {constants:?}");
        }
    }

    #[test]
    fn near_zero_bound() {
        for nu in [c(-0.3, 0.0), c(0.0, 0.0), c(0.4, 2.0), c(1.7, -1.5), c(3.0, 4.0)] {
            let coef = gamma_real(nu.re + 0.5).unwrap()
                / (gamma_complex(nu + 0.5).unwrap().norm() * gamma_real(nu.re + 1.0).unwrap());
            for k in 1..=50 {
                let z = 0.1 * k as f64;
                let val = bessel_j(nu, z, &cfg()).unwrap().norm();
                let bound = coef * (z / 2.0).powf(nu.re);
                assert!(val <= bound * (1.0 + 1e-12), "ν={nu} z={z}: {val} > {bound}");
            }
        }
    }

    #[test]
    fn derivative_identities_converge_quadratically() {
        // d/dx[x^ν J_ν] = x^ν J_{ν-1} and -d/dx[x^{-ν} J_ν] = x^{-ν} J_{ν+1}
        for (nu, x) in [(0.7f64, 2.0f64), (2.5, 9.0), (1.2, 21.0), (4.0, 35.0)] {
            let up = |t: f64| t.powf(nu) * j(nu, t);
            let down = |t: f64| t.powf(-nu) * j(nu, t);
            let exact_up = x.powf(nu) * j(nu - 1.0, x);
            let exact_down = x.powf(-nu) * j(nu + 1.0, x);
            let err = |h: f64| {
                let d1 = (up(x + h) - up(x - h)) / (2.0 * h);
                let d2 = -(down(x + h) - down(x - h)) / (2.0 * h);
                ((d1 - exact_up).abs(), (d2 - exact_down).abs())
            };
            let (a1, b1) = err(1e-2);
            let (a2, b2) = err(5e-3);
            assert!(a1 / a2 > 3.5 && a1 / a2 < 4.5, "rec ν={nu} x={x}: {a1} {a2}");
            assert!(b1 / b2 > 3.5 && b1 / b2 < 4.5, "rec2 ν={nu} x={x}: {b1} {b2}");
        }
    }

    #[test]
    fn single_precision_path() {
        let v = bessel_j(Complex::new(0.5f32, 0.0), 2.0f32, &SeriesConfig::default()).unwrap();
        let exact = (2.0 / (PI * 2.0)).sqrt() * 2f64.sin();
        assert!((v.re as f64 - exact).abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn three_term_recurrence(nu in 0.0f64..10.0, x in 0.1f64..50.0) {
            let jm = j(nu - 1.0, x);
            let j0 = j(nu, x);
            let jp = j(nu + 1.0, x);
            let residual = (2.0 * nu / x) * j0 - jp - jm;
            prop_assert!(residual.abs() < 1e-9 * (1.0 + j0.abs()), "residual {}", residual);
        }

        #[test]
        fn complex_order_recurrence(re in 0.0f64..5.0, im in -8.0f64..8.0, x in 0.2f64..120.0) {
            let nu = c(re, im);
            let get = |v: Complex64| bessel_j(v, x, &cfg()).unwrap();
            let j0 = get(nu);
            let residual = j0 * (nu * 2.0 / x) - get(nu + 1.0) - get(nu - 1.0);
            let scale = (PI / 2.0 * im).cosh();
            prop_assert!(residual.norm() < 1e-9 * scale * (1.0 + j0.norm()), "residual {}", residual);
        }
    }
}
