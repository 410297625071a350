//! Closed-form radial Fourier transforms: the kernels `Â_r^(s)`, the analytic
//! family `K_z`, the sphere measure and the Bochner–Riesz kernels.
//!
//! With `h = n/2` and `a = 2π r |ξ|`,
//! `Â_r^(s)(ξ) = 2^{h-s} Γ(h)/Γ(s) ∫_a^∞ t^{s-h} J_{h-1+s}(t) dt`, or after one
//! integration by parts
//! `2^{h-s} Γ(h)/Γ(s) {n ∫_a^∞ t^{s-h-1} J_{h+s}(t) dt - a^{s-h} J_{h+s}(a)}`.
//! The second form continues analytically in `z = 1 - s` and defines `K_z`.

use serde::{Deserialize, Serialize};

use crate::fit::{geometric_grid, golden_section_max, log_log_fit};
use crate::oscquad::{
    bessel_head, bessel_tail, hankel_integral, DecayClass, OscIntegralSpec, QuadConfig, RadialProfile,
};
use crate::record::{anchors, TolRule};
use crate::rieszkernel::FracParam;
use crate::specfun::{bessel_j, gamma_complex, gamma_real, hyp_pfq, rgamma_complex, SeriesConfig};
use crate::{sphere_area, Complex64, LabError, LabResult, VerificationRecord};
use std::f64::consts::PI;

/// Which of the two equivalent integral representations `ft_riesz` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FtForm {
    PrimaryIntegral,
    ByParts,
}

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn bessel(nu: Complex64, x: f64) -> LabResult<Complex64> {
    bessel_j(nu, x, &SeriesConfig::default())
}

/// `Â_r^(s)` at `|ξ| = xi_norm`.
pub fn ft_riesz(p: &FracParam, xi_norm: f64, form: FtForm, cfg: &QuadConfig<f64>) -> LabResult<f64> {
    p.validate()?;
    if !(xi_norm >= 0.0) || !xi_norm.is_finite() {
        return Err(LabError::Domain(format!("|ξ| = {xi_norm} must be finite and >= 0")));
    }
    if xi_norm == 0.0 {
        return Ok(1.0);
    }
    let a = 2.0 * PI * p.r * xi_norm;
    match form {
        FtForm::PrimaryIntegral => {
            let (h, s) = (p.half_n(), p.s);
            let pref = 2f64.powf(h - s) * gamma_real(h)? / gamma_real(s)?;
            let spec = OscIntegralSpec::new(c64(s - h), c64(h - 1.0 + s), a);
            Ok(pref * bessel_tail(&spec, cfg)?.re)
        }
        FtForm::ByParts => Ok(kz_bracket(c64(1.0 - p.s), p.n, a, cfg)?.value(p.n).re),
    }
}

/// The three factors of `K_z(ξ) = prefactor · (n · integral - boundary)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KzParts {
    /// `2^{h-1+z} Γ(h) / Γ(1-z)`.
    pub prefactor: Complex64,
    /// `∫_a^∞ t^{-h-z} J_{h+1-z}(t) dt`.
    pub integral: Complex64,
    /// `a^{1-h-z} J_{h+1-z}(a)`.
    pub boundary: Complex64,
}

impl KzParts {
    pub fn value(&self, n: usize) -> Complex64 {
        self.prefactor * (self.integral * n as f64 - self.boundary)
    }
}

fn kz_bracket(z: Complex64, n: usize, a: f64, cfg: &QuadConfig<f64>) -> LabResult<KzParts> {
    let h = n as f64 / 2.0;
    let one = c64(1.0);
    let order = c64(h) + one - z;
    let prefactor = c64(2.0).powc(c64(h - 1.0) + z) * gamma_real(h)? * rgamma_complex(one - z)?;
    let integral = bessel_tail(&OscIntegralSpec::new(-c64(h) - z, order, a), cfg)?;
    let boundary = c64(a).powc(one - c64(h) - z) * bessel(order, a)?;
    Ok(KzParts { prefactor, integral, boundary })
}

fn check_strip(z: Complex64, n: usize) -> LabResult<()> {
    if n < 2 {
        return Err(LabError::Parameter(format!("dimension n = {n} must be >= 2")));
    }
    let lo = -(n as f64 + 1.0) / 2.0;
    if !(z.re > lo && z.re < 1.0) || !z.im.is_finite() {
        return Err(LabError::Domain(format!("Re z = {} outside the strip ({lo}, 1)", z.re)));
    }
    Ok(())
}

/// Components of `K_z` at `|ξ| = xi_norm`.
pub fn kz_parts(z: Complex64, n: usize, xi_norm: f64, cfg: &QuadConfig<f64>) -> LabResult<KzParts> {
    check_strip(z, n)?;
    if !(xi_norm > 0.0) || !xi_norm.is_finite() {
        return Err(LabError::Domain(format!("|ξ| = {xi_norm} must be positive")));
    }
    kz_bracket(z, n, 2.0 * PI * xi_norm, cfg)
}

/// The analytic-family kernel `K_z(ξ)`; `K_{1-s} = Â_1^(s)`.
pub fn kz_kernel(z: Complex64, n: usize, xi_norm: f64, cfg: &QuadConfig<f64>) -> LabResult<Complex64> {
    Ok(kz_parts(z, n, xi_norm, cfg)?.value(n))
}

/// Transform of the surface measure of the unit sphere,
/// `2π |ξ|^{1-n/2} J_{n/2-1}(2π|ξ|)`; `σ_{n-1}` at the origin.
pub fn sphere_ft(n: usize, xi_norm: f64) -> LabResult<f64> {
    if n < 2 {
        return Err(LabError::Parameter(format!("dimension n = {n} must be >= 2")));
    }
    if !(xi_norm >= 0.0) || !xi_norm.is_finite() {
        return Err(LabError::Domain(format!("|ξ| = {xi_norm} must be finite and >= 0")));
    }
    if xi_norm == 0.0 {
        return Ok(sphere_area(n));
    }
    let h = n as f64 / 2.0;
    Ok(2.0 * PI * xi_norm.powf(1.0 - h) * bessel(c64(h - 1.0), 2.0 * PI * xi_norm)?.re)
}

fn check_br_order(z: f64, n: usize) -> LabResult<()> {
    if n < 1 {
        return Err(LabError::Parameter("dimension must be >= 1".into()));
    }
    if !(z > -1.0) || !z.is_finite() {
        return Err(LabError::Domain(format!("Bochner–Riesz order z = {z} must exceed -1")));
    }
    Ok(())
}

/// Transform of `(1-|x|²)_+^z / Γ(z+1)`: `π^{-z} |ξ|^{-(n/2+z)} J_{n/2+z}(2π|ξ|)`,
/// with value `π^{n/2} / Γ(n/2+z+1)` at the origin.
pub fn bochner_riesz_ft(z: f64, n: usize, xi_norm: f64) -> LabResult<f64> {
    check_br_order(z, n)?;
    if !(xi_norm >= 0.0) || !xi_norm.is_finite() {
        return Err(LabError::Domain(format!("|ξ| = {xi_norm} must be finite and >= 0")));
    }
    let h = n as f64 / 2.0;
    if xi_norm == 0.0 {
        return Ok(PI.powf(h) / gamma_real(h + z + 1.0)?);
    }
    Ok(PI.powf(-z) * xi_norm.powf(-(h + z)) * bessel(c64(h + z), 2.0 * PI * xi_norm)?.re)
}

/// The radial profile `(1-r²)_+^z / Γ(z+1)`.
pub fn bochner_riesz_profile(z: f64) -> LabResult<RadialProfile<f64>> {
    check_br_order(z, 1)?;
    let scale = 1.0 / gamma_real(z + 1.0)?;
    let profile = RadialProfile::new(move |r: f64| scale * (1.0 - r * r).powf(z), DecayClass::Compact(1.0));
    Ok(if z < 0.0 {
        profile.with_singularity(1.0, z, move |r: f64| scale * (1.0 + r).powf(z))
    } else {
        profile
    })
}

/// Required final gap of the `s → 1` limit.
pub const LIMIT_FINAL_GAP: f64 = 5e-3;

/// `|Â_1^(s)(ξ) - dσ̂(ξ)/σ_{n-1}|` along `s_seq`.
pub fn limit_gaps(n: usize, xi_norm: f64, s_seq: &[f64], cfg: &QuadConfig<f64>) -> LabResult<Vec<f64>> {
    if s_seq.is_empty() || s_seq.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(LabError::Parameter("s_seq must be non-empty and strictly increasing".into()));
    }
    let target = sphere_ft(n, xi_norm)? / sphere_area(n);
    s_seq
        .iter()
        .map(|&s| Ok((ft_riesz(&FracParam::new(n, s)?, xi_norm, FtForm::PrimaryIntegral, cfg)? - target).abs()))
        .collect()
}

/// Checks that the gaps to the normalized sphere transform decrease along
/// `s_seq` and that the last one is below [`LIMIT_FINAL_GAP`].
pub fn limit_s_to_1(n: usize, xi_norm: f64, s_seq: &[f64], cfg: &QuadConfig<f64>) -> LabResult<VerificationRecord> {
    let gaps = limit_gaps(n, xi_norm, s_seq, cfg)?;
    // gaps at round-off level (e.g. ξ = 0) count as decreasing
    let floor = 1e-12;
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0] || w[1] <= floor);
    let last = *gaps.last().expect("non-empty");
    let mut rec = VerificationRecord::compare(
        format!("limit_s_to_1[n={n},xi={xi_norm}]"),
        anchors::LIMIT_S_TO_1,
        last,
        0.0,
        LIMIT_FINAL_GAP,
        TolRule::Absolute,
    )
    .with_note(format!(
        "gaps {}",
        gaps.iter().map(|g| format!("{g:.3e}")).collect::<Vec<_>>().join(", ")
    ));
    rec.pass &= decreasing;
    Ok(rec)
}

/// Residual above which a decay fit is rejected.
pub const DECAY_FIT_MAX_RESIDUAL: f64 = 0.1;
/// Envelope estimates per octave of `|ξ|`.
pub const DECAY_CENTERS_PER_OCTAVE: usize = 2;
/// Samples across one oscillation period before golden-section refinement.
pub const DECAY_SAMPLES_PER_PERIOD: usize = 16;

/// Power-law fit of the per-octave envelope of `|Â_1^(s)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
    pub rms_residual: f64,
    /// `min envelope · |ξ|^{(n+1)/2 - s}` over the centres; positive when the
    /// lower comparability holds on the sampled range.
    pub envelope_floor: f64,
}

/// Log-log slope of the per-period peaks of `|Â_1^(s)|` on `[xi_lo, xi_hi]`.
pub fn decay_exponent_fit(p: &FracParam, xi_lo: f64, xi_hi: f64, cfg: &QuadConfig<f64>) -> LabResult<DecayFit> {
    p.validate()?;
    if !(xi_lo > 0.0 && xi_hi >= 100.0 * xi_lo && xi_hi >= 50.0) {
        return Err(LabError::Parameter(format!(
            "range [{xi_lo}, {xi_hi}] must span two decades and reach 50"
        )));
    }
    // |Â| oscillates with period 1 in |ξ|: take the peak over one period at each centre
    let eval = |x: f64| ft_riesz(p, x, FtForm::PrimaryIntegral, cfg).map(f64::abs);
    let m = DECAY_SAMPLES_PER_PERIOD;
    let mut ex = Vec::new();
    let mut ev = Vec::new();
    for c in geometric_grid(xi_lo, xi_hi, DECAY_CENTERS_PER_OCTAVE) {
        let xs: Vec<f64> = (0..=m).map(|k| c + k as f64 / m as f64).collect();
        let vs = xs.iter().map(|&x| eval(x)).collect::<LabResult<Vec<f64>>>()?;
        let k = (0..=m).max_by(|&i, &j| vs[i].total_cmp(&vs[j])).expect("non-empty");
        let (lo, hi) = (xs[k.saturating_sub(1)], xs[(k + 1).min(m)]);
        let (x, v) = golden_section_max(|x| eval(x).unwrap_or(0.0), lo, hi, 30);
        let (x, v) = if v >= vs[k] { (x, v) } else { (xs[k], vs[k]) };
        ex.push(x);
        ev.push(v);
    }
    let fit = log_log_fit(&ex, &ev)?;
    if fit.rms_residual > DECAY_FIT_MAX_RESIDUAL {
        return Err(LabError::Fit(format!(
            "envelope residual {:.3} exceeds {DECAY_FIT_MAX_RESIDUAL}",
            fit.rms_residual
        )));
    }
    let expo = (p.n as f64 + 1.0) / 2.0 - p.s;
    let envelope_floor = ex.iter().zip(&ev).map(|(x, v)| v * x.powf(expo)).fold(f64::INFINITY, f64::min);
    Ok(DecayFit { slope: fit.slope, intercept: fit.intercept, rms_residual: fit.rms_residual, envelope_floor })
}

/// Agreement required by the crux and critical identity checks.
pub const IDENTITY_TOL: f64 = 1e-7;

/// `∫_1^∞ ρ^{-n/2} (ρ²-1)^{-s} J_{n/2-1}(a ρ) dρ` by quadrature.
pub fn crux_integral(n: usize, s: f64, a: f64, cfg: &QuadConfig<f64>) -> LabResult<f64> {
    FracParam::new(n, s)?;
    let h = n as f64 / 2.0;
    let profile = RadialProfile::new(
        move |rho: f64| if rho <= 1.0 { 0.0 } else { rho.powf(-h) * (rho * rho - 1.0).powf(-s) },
        DecayClass::Poly(h + 2.0 * s),
    )
    .with_inner_radius(1.0)
    .with_singularity(1.0, -s, move |rho: f64| rho.powf(-h) * (rho + 1.0).powf(-s));
    hankel_integral(&profile, h - 1.0, 0.0, a, cfg)
}

/// `Γ(1-s) a^{n/2-1} {Γ(s)/(2^{n/2} Γ(n/2)) - 2^{-s} ∫_0^a t^{s-n/2} J_{n/2-1+s}(t) dt}`.
pub fn crux_closed_form(n: usize, s: f64, a: f64, cfg: &QuadConfig<f64>) -> LabResult<f64> {
    FracParam::new(n, s)?;
    let h = n as f64 / 2.0;
    let head = bessel_head(c64(s - h), c64(h - 1.0 + s), a, cfg)?.re;
    Ok(gamma_real(1.0 - s)?
        * a.powf(h - 1.0)
        * (gamma_real(s)? / (2f64.powf(h) * gamma_real(h)?) - 2f64.powf(-s) * head))
}

/// Quadrature against closed form for the sphere-type Bessel integral at
/// `a = 2π r |ξ|`.
pub fn crux_identity_check(p: &FracParam, xi_norm: f64, cfg: &QuadConfig<f64>) -> LabResult<VerificationRecord> {
    p.validate()?;
    if !(xi_norm > 0.0) {
        return Err(LabError::Domain(format!("|ξ| = {xi_norm} must be positive")));
    }
    let a = 2.0 * PI * p.r * xi_norm;
    let lhs = crux_integral(p.n, p.s, a, cfg)?;
    let rhs = crux_closed_form(p.n, p.s, a, cfg)?;
    Ok(VerificationRecord::compare(
        format!("crux[n={},s={},a={a:.4}]", p.n, p.s),
        anchors::CRUX_IDENTITY,
        lhs,
        rhs,
        IDENTITY_TOL,
        TolRule::Looser,
    ))
}

/// Largest `c` accepted by [`critical_lemma_rhs`]: beyond it the alternating
/// `₁F₂` series at `-c²/4` trips the cancellation guard for some `n <= 5`.
pub const CRITICAL_MAX_C: f64 = 18.0;

/// Closed form of `∫_1^∞ ρ^{α-1} (ρ²-1)^{β-1} J_ν(c ρ) dρ` as a sum of two `₁F₂` terms,
/// valid for `β > 0` and `α + 2β < 7/2`.
pub fn critical_lemma_rhs(alpha: f64, beta: f64, nu: f64, c: f64) -> LabResult<f64> {
    if !(beta > 0.0 && alpha + 2.0 * beta < 3.5) {
        return Err(LabError::Domain(format!("need β > 0 and α + 2β < 7/2 (α = {alpha}, β = {beta})")));
    }
    if !(c > 0.0 && c <= CRITICAL_MAX_C) {
        return Err(LabError::Domain(format!("c = {c} outside (0, {CRITICAL_MAX_C}]")));
    }
    let cfg = SeriesConfig::default();
    let g = |x: f64| gamma_complex(c64(x));
    let rg = |x: f64| rgamma_complex(c64(x));
    let m = (alpha + nu) / 2.0;
    let z = c64(-c * c / 4.0);
    let first = c64(c.powf(nu) / 2f64.powf(nu + 1.0))
        * g(beta)?
        * g(1.0 - beta - m)?
        * rg(nu + 1.0)?
        * rg(1.0 - m)?
        * hyp_pfq(&[c64(m)], &[c64(nu + 1.0), c64(m + beta)], z, &cfg)?;
    let d = 2.0 - beta + (nu - alpha) / 2.0;
    let second = c64(2f64.powf(alpha + 2.0 * beta - 3.0) * c.powf(2.0 - alpha - 2.0 * beta))
        * g(beta + m - 1.0)?
        * rg(d)?
        * hyp_pfq(&[c64(1.0 - beta)], &[c64(2.0 - beta - m), c64(d)], z, &cfg)?;
    Ok((first + second).re)
}

/// The two-term `₁F₂` closed form against direct quadrature, with
/// `ν = n/2 - 1`, `α = 1 - n/2`, `β = 1 - s`.
pub fn critical_identity_check(n: usize, s: f64, c: f64, cfg: &QuadConfig<f64>) -> LabResult<VerificationRecord> {
    let h = n as f64 / 2.0;
    let rhs = critical_lemma_rhs(1.0 - h, 1.0 - s, h - 1.0, c)?;
    let lhs = crux_integral(n, s, c, cfg)?;
    Ok(VerificationRecord::compare(
        format!("critical[n={n},s={s},c={c:.4}]"),
        anchors::CRITICAL_LEMMA,
        lhs,
        rhs,
        IDENTITY_TOL,
        TolRule::Looser,
    ))
}
