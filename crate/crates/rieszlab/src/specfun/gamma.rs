use crate::{Complex, LabError, LabResult, Real};

/// Lanczos shift `g`; paired with [`LANCZOS_P`] it gives close to full double
/// precision for `Re z >= 1/2`.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn check_finite<T: Real>(z: Complex<T>, what: &str) -> LabResult<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(LabError::Domain(format!("{what} must be finite, got {z}")))
    }
}

/// `Some(m)` when `z = -m` for a non-negative integer `m`.
pub(crate) fn nonpositive_integer<T: Real>(z: Complex<T>) -> Option<u64> {
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        (-z.re).to_u64()
    } else {
        None
    }
}

/// `sin(pi z)` with the argument reduced by the nearest integer first, so the
/// zeros at the integers stay accurate.
pub(crate) fn sin_pi<T: Real>(z: Complex<T>) -> Complex<T> {
    let k = z.re.round();
    let frac = Complex::new(z.re - k, z.im);
    let s = (frac * T::PI()).sin();
    let odd = k.to_i64().map(|k| k.rem_euclid(2) == 1).unwrap_or(false);
    if odd {
        -s
    } else {
        s
    }
}

fn lanczos<T: Real>(z: Complex<T>) -> Complex<T> {
    let z = z - T::one();
    let mut acc = Complex::new(T::lit(LANCZOS_P[0]), T::zero());
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        acc = acc + Complex::new(T::lit(p), T::zero()) / (z + T::from_count(i));
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    let half = T::lit(0.5);
    let log_part = (z + half) * t.ln() - t;
    log_part.exp() * acc * (T::TAU()).sqrt()
}

/// `Γ(z)` on the complex plane.
///
/// Lanczos approximation for `Re z >= 1/2`, reflection
/// `Γ(z) Γ(1-z) = π / sin(πz)` otherwise.
pub fn gamma_complex<T: Real>(z: Complex<T>) -> LabResult<Complex<T>> {
    check_finite(z, "gamma argument")?;
    if let Some(m) = nonpositive_integer(z) {
        return Err(LabError::Pole(format!("-{m}")));
    }
    let value = if z.re < T::lit(0.5) {
        let one = Complex::new(T::one(), T::zero());
        let s = sin_pi(z);
        Complex::new(T::PI(), T::zero()) / (s * lanczos(one - z))
    } else {
        lanczos(z)
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(LabError::Overflow(format!("|Γ({z})|")))
    }
}

/// `1/Γ(z)`, entire: exactly zero at the poles of `Γ`.
pub fn rgamma_complex<T: Real>(z: Complex<T>) -> LabResult<Complex<T>> {
    check_finite(z, "gamma argument")?;
    if nonpositive_integer(z).is_some() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    if z.re < T::lit(0.5) {
        // 1/Γ(z) = sin(πz) Γ(1-z) / π stays finite where Γ(z) underflows.
        let one = Complex::new(T::one(), T::zero());
        return Ok(sin_pi(z) * lanczos(one - z) / T::PI());
    }
    Ok(lanczos(z).inv())
}

/// Real gamma function.
pub fn gamma_real<T: Real>(x: T) -> LabResult<T> {
    gamma_complex(Complex::new(x, T::zero())).map(|g| g.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        let g = gamma_complex(c(0.5, 0.0)).unwrap();
        assert!((g.re - PI.sqrt()).abs() < 1e-14);
        assert!(g.im.abs() < 1e-15);
        assert!((gamma_real(5.0f64).unwrap() - 24.0).abs() < 1e-12);
        assert!((gamma_real(1.0f64).unwrap() - 1.0).abs() < 1e-15);
        assert!((gamma_real(-0.5f64).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn modulus_at_i_matches_closed_form() {
        let g = gamma_complex(c(0.0, 1.0)).unwrap();
        let expected = (PI / PI.sinh()).sqrt();
        assert!((g.norm() - expected).abs() < 1e-14);
    }

    #[test]
    fn poles_are_rejected_and_reciprocal_vanishes() {
        for m in 0..5 {
            let z = c(-(m as f64), 0.0);
            assert!(matches!(gamma_complex(z), Err(LabError::Pole(_))));
            assert_eq!(rgamma_complex(z).unwrap(), c(0.0, 0.0));
        }
        assert!(matches!(gamma_complex(c(f64::NAN, 0.0)), Err(LabError::Domain(_))));
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(gamma_complex(c(200.0, 0.0)), Err(LabError::Overflow(_))));
    }

    #[test]
    fn factorials_are_exact_to_rounding() {
        let mut fact = 1.0f64;
        for k in 1..=20 {
            fact *= k as f64;
            let g = gamma_real(k as f64 + 1.0).unwrap();
            assert!((g / fact - 1.0).abs() < 1e-13, "Γ({})", k + 1);
        }
    }

    #[test]
    fn single_precision_agrees() {
        let g32 = gamma_complex(Complex::new(2.5f32, 1.5f32)).unwrap();
        let g64 = gamma_complex(c(2.5, 1.5)).unwrap();
        assert!((g32.re as f64 - g64.re).abs() < 1e-5 * g64.norm());
        assert!((g32.im as f64 - g64.im).abs() < 1e-5 * g64.norm());
    }

    proptest! {
        #[test]
        fn recurrence_on_test_strip(re in -10.0f64..19.0, im in -20.0f64..20.0) {
            prop_assume!(nonpositive_integer(c(re, im)).is_none() && (re.fract().abs() > 1e-3 || im.abs() > 1e-3));
            let z = c(re, im);
            let lhs = gamma_complex(z + 1.0).unwrap();
            let rhs = z * gamma_complex(z).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
        }

        #[test]
        fn reflection_on_test_strip(re in -10.0f64..10.0, im in -20.0f64..20.0) {
            prop_assume!(im.abs() > 1e-3 || re.fract().abs() > 1e-3);
            let z = c(re, im);
            let lhs = gamma_complex(z).unwrap() * gamma_complex(c(1.0, 0.0) - z).unwrap();
            let rhs = c(PI, 0.0) / (z * PI).sin();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        }

        #[test]
        fn legendre_duplication(re in 0.1f64..9.0, im in -8.0f64..8.0) {
            let z = c(re, im);
            let lhs = gamma_complex(z).unwrap() * gamma_complex(z + 0.5).unwrap();
            let rhs = (c(2.0, 0.0).powc(c(1.0, 0.0) - z * 2.0)) * PI.sqrt() * gamma_complex(z * 2.0).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        }

        #[test]
        fn conjugate_symmetry(re in -10.0f64..20.0, im in 0.01f64..20.0) {
            let g = gamma_complex(c(re, im)).unwrap();
            let h = gamma_complex(c(re, -im)).unwrap();
            prop_assert!((g.conj() - h).norm() <= 1e-14 * g.norm());
        }

        #[test]
        fn imaginary_axis_moduli(y in 0.01f64..10.0) {
            // |Γ(1+iy)|^2 sinh(πy)/(πy) = 1 and |Γ(iy)| = |Γ(1+iy)|/y
            let g1 = gamma_complex(c(1.0, y)).unwrap().norm();
            prop_assert!((g1 * g1 * (PI * y).sinh() / (PI * y) - 1.0).abs() < 1e-10);
            let g0 = gamma_complex(c(0.0, y)).unwrap().norm();
            prop_assert!((g0 * y - g1).abs() < 1e-12 * g1);
        }
    }
}
