use super::{gamma_complex, hyp_pfq, SeriesConfig};
use crate::oscquad::{bessel_over_power, integrate_weighted, QuadConfig, SingularitySpec};
use crate::record::{anchors, TolRule};
use crate::{Complex, Complex64, LabError, LabResult, VerificationRecord};

/// Agreement required between the series and quadrature sides.
pub const HYP1F2_IDENTITY_TOL: f64 = 1e-8;

/// Checks
/// `₁F₂((α+ν)/2; ν+1, (α+ν)/2+1; -a²c²/4) = (α+ν) 2^ν Γ(ν+1) / (a^{α+ν} c^ν) · ∫_0^a t^{α-1} J_ν(ct) dt`,
/// evaluating the left side by its series and the right side by quadrature.
pub fn hyp1f2_bessel_identity_check(
    alpha: Complex64,
    nu: Complex64,
    a: f64,
    c: f64,
    cfg: &SeriesConfig<f64>,
) -> LabResult<VerificationRecord> {
    let sum = alpha + nu;
    if !(sum.re > 0.0) {
        return Err(LabError::Domain(format!("Re(α+ν) = {} must be positive", sum.re)));
    }
    if !(a > 0.0 && c > 0.0 && a.is_finite() && c.is_finite()) {
        return Err(LabError::Domain(format!("a = {a} and c = {c} must be positive")));
    }
    let one = Complex::new(1.0, 0.0);
    let half = sum / 2.0;
    let z = Complex::new(-a * a * c * c / 4.0, 0.0);
    let series = hyp_pfq(&[half], &[nu + one, half + one], z, cfg)?;

    // t^{α-1} J_ν(ct) = t^{w} · [t^{α+ν-1-w} (c/2)^ν (J_ν(ct)(ct/2)^{-ν})], w = min(Re(α+ν)-1, 0)
    let w = (sum.re - 1.0).min(0.0);
    let residual = sum - one - w;
    let c_half_pow = Complex::new(c / 2.0, 0.0).powc(nu);
    let quad_cfg = QuadConfig { abs_tol: 1e-13, rel_tol: 1e-12, ..QuadConfig::default() };
    let regular = |t: f64| -> Complex64 {
        match bessel_over_power(nu, c * t, cfg) {
            Ok(j) => (residual * t.ln()).exp() * c_half_pow * j,
            Err(_) => Complex::new(f64::NAN, f64::NAN),
        }
    };
    let sing = if w < 0.0 { SingularitySpec::left(w) } else { SingularitySpec::none() };
    let integral = integrate_weighted(regular, 0.0, a, sing, &quad_cfg)?;
    let prefactor = sum * Complex::new(2.0, 0.0).powc(nu) * gamma_complex(nu + one)?
        / (Complex::new(a, 0.0).powc(sum) * Complex::new(c, 0.0).powc(nu));
    let quadrature = prefactor * integral;
    Ok(VerificationRecord::compare(
        "hyp1f2_bessel_identity",
        anchors::HYP1F2_BESSEL,
        series,
        quadrature,
        HYP1F2_IDENTITY_TOL,
        TolRule::Looser,
    ))
}
