use crate::{LabError, LabResult, Real};

/// `B_{2j}` for `j = 1..=10`.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Hurwitz zeta `ζ(s, a) = Σ_{k>=0} (a+k)^{-s}` for real `s > 1`, `a > 0`,
/// by Euler–Maclaurin summation from `a + N >= 16`.
pub fn hurwitz_zeta<T: Real>(s: T, a: T) -> LabResult<T> {
    if !(s > T::one()) || !(a > T::zero()) || !s.is_finite() || !a.is_finite() {
        return Err(LabError::Domain(format!("hurwitz_zeta needs s > 1, a > 0 (s = {s}, a = {a})")));
    }
    let start = T::lit(16.0);
    let n = if a >= start { 0 } else { (start - a).ceil().to_usize().unwrap_or(16) };
    let mut sum = T::zero();
    for k in 0..n {
        sum = sum + (a + T::from_count(k)).powf(-s);
    }
    let b = a + T::from_count(n);
    sum = sum + b.powf(T::one() - s) / (s - T::one()) + b.powf(-s) / T::lit(2.0);
    // rising product s(s+1)...(s+2j-2) / (2j)! times b^{-s-2j+1}
    let mut factor = s * b.powf(-s - T::one()) / T::lit(2.0);
    for (j, &bern) in BERNOULLI_EVEN.iter().enumerate() {
        let term = T::lit(bern) * factor;
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
        let jj = T::from_count(j + 1);
        let two_j = T::lit(2.0) * jj;
        factor = factor * (s + two_j - T::one()) * (s + two_j)
            / ((two_j + T::one()) * (two_j + T::lit(2.0)) * b * b);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn riemann_values() {
        assert!((hurwitz_zeta(2.0, 1.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((hurwitz_zeta(4.0, 1.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
        // ζ(2, 1/2) = 3ζ(2) = π²/2
        assert!((hurwitz_zeta(2.0, 0.5).unwrap() - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn shift_identity() {
        for (s, a) in [(1.3f64, 0.2f64), (4.0 / 3.0, 2.7), (2.5, 30.0)] {
            let lhs = hurwitz_zeta(s, a).unwrap();
            let rhs = a.powf(-s) + hurwitz_zeta(s, a + 1.0).unwrap();
            assert!((lhs - rhs).abs() < 1e-13 * lhs.abs());
        }
    }

    #[test]
    fn rejects_divergent_exponent() {
        assert!(hurwitz_zeta(1.0, 1.0).is_err());
        assert!(hurwitz_zeta(2.0, 0.0).is_err());
    }
}
