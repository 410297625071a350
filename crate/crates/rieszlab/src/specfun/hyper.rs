use super::gamma::{gamma_complex, nonpositive_integer, rgamma_complex};
use super::SeriesConfig;
use crate::{Complex, LabError, LabResult, Real};

/// Largest `|z|` accepted for the entire series (`p <= q`). Beyond it the
/// alternating terms cancel by roughly `exp(2 sqrt|z|)`.
pub const ENTIRE_SERIES_MAX_Z: f64 = 400.0;

/// Rising factorial `(α)_k = α (α+1) ⋯ (α+k-1)`, by direct product.
pub fn pochhammer<T: Real>(alpha: Complex<T>, k: usize) -> Complex<T> {
    let mut acc = Complex::new(T::one(), T::zero());
    for j in 0..k {
        acc = acc * (alpha + T::from_count(j));
    }
    acc
}

/// Generalized hypergeometric series `pFq(a; b; z)` by partial sums.
pub fn hyp_pfq<T: Real>(
    a: &[Complex<T>],
    b: &[Complex<T>],
    z: Complex<T>,
    cfg: &SeriesConfig<T>,
) -> LabResult<Complex<T>> {
    cfg.validate()?;
    let (p, q) = (a.len(), b.len());
    if p > q + 1 {
        return Err(LabError::Parameter(format!("p = {p} exceeds q + 1 = {}", q + 1)));
    }
    let finite = |w: &Complex<T>| w.re.is_finite() && w.im.is_finite();
    if !a.iter().chain(b).all(finite) || !finite(&z) {
        return Err(LabError::Domain("hypergeometric parameters must be finite".into()));
    }
    if let Some(bj) = b.iter().find(|bj| nonpositive_integer(**bj).is_some()) {
        return Err(LabError::Parameter(format!("lower parameter {bj} is a pole")));
    }
    let one = Complex::new(T::one(), T::zero());
    let terminating = a.iter().filter_map(|ai| nonpositive_integer(*ai)).min();
    if terminating == Some(0) {
        return Ok(one);
    }
    if terminating.is_none() {
        if p == q + 1 && z.norm() >= T::one() {
            return Err(LabError::Convergence(format!(
                "{p}F{q} series diverges for |z| = {} >= 1",
                z.norm()
            )));
        }
        if p <= q && z.norm() > T::lit(ENTIRE_SERIES_MAX_Z) {
            return Err(LabError::OutOfRange(format!("|z| = {} > {ENTIRE_SERIES_MAX_Z}", z.norm())));
        }
    }

    let mut sum = one;
    let mut term = one;
    let mut largest = T::one();
    let mut small_run = 0;
    for k in 0..cfg.max_terms {
        let kk = T::from_count(k);
        let mut ratio = z / (kk + T::one());
        for ai in a {
            ratio = ratio * (*ai + kk);
        }
        for bj in b {
            ratio = ratio / (*bj + kk);
        }
        term = term * ratio;
        sum = sum + term;
        let tn = term.norm();
        largest = largest.max(tn);
        if terminating.is_some_and(|m| k + 1 >= m as usize) || tn == T::zero() {
            return guarded(sum, largest, cfg);
        }
        if tn <= cfg.rel_tol * sum.norm() {
            small_run += 1;
            if small_run >= 2 {
                return guarded(sum, largest, cfg);
            }
        } else {
            small_run = 0;
        }
    }
    Err(LabError::Convergence(format!(
        "{p}F{q} not converged after {} terms",
        cfg.max_terms
    )))
}

fn guarded<T: Real>(sum: Complex<T>, largest: T, cfg: &SeriesConfig<T>) -> LabResult<Complex<T>> {
    let ratio = largest / sum.norm();
    if ratio > cfg.cancellation_guard {
        return Err(LabError::PrecisionLoss {
            ratio: ratio.to_f64().unwrap_or(f64::INFINITY),
            guard: cfg.cancellation_guard.to_f64().unwrap_or(f64::INFINITY),
        });
    }
    Ok(sum)
}

/// Closed form of `∫_0^∞ t^μ J_ν(a t) dt`, valid for
/// `-Re ν - 1 < Re μ < 1/2`.
pub fn weber_schafheitlin<T: Real>(
    mu: Complex<T>,
    nu: Complex<T>,
    a: T,
) -> LabResult<Complex<T>> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(LabError::Domain(format!("scale a = {a} must be positive")));
    }
    let half = T::lit(0.5);
    if !(mu.re < half && mu.re > -nu.re - T::one()) {
        return Err(LabError::Domain(format!(
            "Re μ = {} outside ({}, 1/2)",
            mu.re,
            -nu.re - T::one()
        )));
    }
    let one = Complex::new(T::one(), T::zero());
    let two = Complex::new(T::lit(2.0), T::zero());
    let upper = gamma_complex((nu + mu + one) * half)?;
    let lower = rgamma_complex((nu - mu + one) * half)?;
    let scale = two.powc(mu) * Complex::new(a, T::zero()).powc(-mu - one);
    Ok(scale * upper * lower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_real;
    use crate::Complex64;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> SeriesConfig<f64> {
        SeriesConfig::default()
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(3.7, -1.2), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(0.0, 0.0), 3), c(0.0, 0.0));
        assert_eq!(pochhammer(c(2.0, 0.0), 3), c(24.0, 0.0));
        assert_eq!(pochhammer(c(-2.0, 0.0), 3), c(0.0, 0.0));
    }

    #[test]
    fn upper_zero_gives_exactly_one() {
        let v = hyp_pfq(&[c(0.0, 0.0)], &[c(1.5, 0.0), c(2.5, 0.0)], c(-350.0, 0.0), &cfg()).unwrap();
        assert_eq!(v, c(1.0, 0.0));
    }

    #[test]
    fn one_f_zero_is_binomial() {
        for (alpha, z) in [(0.7, 0.3), (2.5, -0.6), (-1.3, 0.85)] {
            let v = hyp_pfq(&[c(alpha, 0.0)], &[], c(-z, 0.0), &cfg()).unwrap();
            let expected = (1.0 + z).powf(-alpha);
            assert!((v.re - expected).abs() < 1e-12, "{alpha} {z}");
        }
    }

    #[test]
    fn first_order_small_z() {
        let (a, b1, b2) = (0.8, 1.7, 2.9);
        let z = 1e-6;
        let v = hyp_pfq(&[c(a, 0.0)], &[c(b1, 0.0), c(b2, 0.0)], c(z, 0.0), &cfg()).unwrap();
        assert!((v.re - (1.0 + a / (b1 * b2) * z)).abs() < 1e-12);
    }

    #[test]
    fn zero_f_one_is_bessel_generating_series() {
        // 0F1(; ν+1; -x²/4) = Γ(ν+1) (2/x)^ν J_ν(x); at ν = 1/2 this is sin x / x.
        let x = 3.0f64;
        let v = hyp_pfq(&[], &[c(1.5, 0.0)], c(-x * x / 4.0, 0.0), &cfg()).unwrap();
        assert!((v.re - x.sin() / x).abs() < 1e-14);
    }

    #[test]
    fn error_paths() {
        let one = c(1.0, 0.0);
        assert!(matches!(hyp_pfq(&[one, one, one], &[one], c(0.1, 0.0), &cfg()), Err(LabError::Parameter(_))));
        assert!(matches!(hyp_pfq(&[one], &[c(-2.0, 0.0)], c(0.1, 0.0), &cfg()), Err(LabError::Parameter(_))));
        assert!(matches!(hyp_pfq(&[one, one], &[c(2.0, 0.0)], c(1.0, 0.0), &cfg()), Err(LabError::Convergence(_))));
        assert!(matches!(
            hyp_pfq(&[one], &[c(2.0, 0.0), c(3.0, 0.0)], c(-401.0, 0.0), &cfg()),
            Err(LabError::OutOfRange(_))
        ));
        assert!(matches!(
            hyp_pfq(&[one], &[c(1.5, 0.0), c(1.5, 0.0)], c(-399.0, 0.0), &cfg()),
            Err(LabError::PrecisionLoss { .. })
        ));
    }

    #[test]
    fn terminating_series_is_a_polynomial() {
        // 2F1(-2, b; c; z) = 1 - 2bz/c + b(b+1)z²/(c(c+1))
        let (b, cc, z) = (1.5, 2.5, 3.0);
        let v = hyp_pfq(&[c(-2.0, 0.0), c(b, 0.0)], &[c(cc, 0.0)], c(z, 0.0), &cfg()).unwrap();
        let expected = 1.0 - 2.0 * b * z / cc + b * (b + 1.0) * z * z / (cc * (cc + 1.0));
        assert!((v.re - expected).abs() < 1e-13);
    }

    #[test]
    fn weber_schafheitlin_examples() {
        let v = weber_schafheitlin(c(0.0, 0.0), c(0.0, 0.0), 1.0).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
        for (n, s) in [(2usize, 0.3), (3, 0.5), (5, 0.9)] {
            let h = n as f64 / 2.0;
            let v = weber_schafheitlin(c(s - h, 0.0), c(h - 1.0 + s, 0.0), 1.0).unwrap();
            let expected = 2f64.powf(s - h) * gamma_real(s).unwrap() / gamma_real(h).unwrap();
            assert!((v.re - expected).abs() < 1e-14 * expected);
        }
        assert!(matches!(weber_schafheitlin(c(0.5, 0.0), c(0.0, 0.0), 1.0), Err(LabError::Domain(_))));
        assert!(matches!(weber_schafheitlin(c(-1.0, 0.0), c(0.0, 0.0), 1.0), Err(LabError::Domain(_))));
        assert!(matches!(weber_schafheitlin(c(0.0, 0.0), c(0.0, 0.0), 0.0), Err(LabError::Domain(_))));
    }

    proptest! {
        #[test]
        fn two_f_one_reduces_when_parameters_coincide(alpha in -2.0f64..3.0, beta in 0.2f64..4.0, z in -0.9f64..0.9) {
            let v = hyp_pfq(&[c(alpha, 0.0), c(beta, 0.0)], &[c(beta, 0.0)], c(-z, 0.0), &cfg()).unwrap();
            prop_assert!((v.re - (1.0 + z).powf(-alpha)).abs() < 1e-10);
        }

        #[test]
        fn weber_schafheitlin_scaling(mu in -0.9f64..0.45, nu in 0.0f64..3.0, y in -1.0f64..1.0, a in 0.1f64..10.0) {
            let m = c(mu, y);
            let n = c(nu, -y);
            let at_one = weber_schafheitlin(m, n, 1.0).unwrap();
            let scaled = weber_schafheitlin(m, n, a).unwrap();
            let expected = at_one * c(a, 0.0).powc(-m - 1.0);
            prop_assert!((scaled - expected).norm() <= 1e-13 * expected.norm());
        }

        #[test]
        fn pochhammer_matches_gamma_ratio(re in 0.1f64..6.0, im in -3.0f64..3.0, k in 0usize..12) {
            let a = c(re, im);
            let ratio = gamma_complex(a + k as f64).unwrap() / gamma_complex(a).unwrap();
            let p = pochhammer(a, k);
            prop_assert!((p - ratio).norm() <= 1e-12 * ratio.norm());
        }
    }
}
