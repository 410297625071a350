//! The Riesz mean kernels
//! `A_r^(s)(x) = c(n,s) r^{2s} / ((|x|² - r²)_+^s |x|^n)`,
//! `c(n,s) = 2 / (Γ(s) Γ(1-s) σ_{n-1})`, and the averaging operators they
//! define on radial functions.

use serde::{Deserialize, Serialize};

use crate::fit::richardson;
use crate::oscquad::{integrate_finite, radial_mass, DecayClass, QuadConfig, RadialProfile, SingularitySpec};
use crate::specfun::{gamma_real, rgamma_complex};
use crate::{sphere_area, Complex64, LabError, LabResult};

/// Order `s`, dimension `n` and radius `r` of a kernel `A_r^(s)` on `R^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracParam {
    pub n: usize,
    pub s: f64,
    pub r: f64,
}

impl FracParam {
    /// Unit radius.
    pub fn new(n: usize, s: f64) -> LabResult<Self> {
        Self::with_radius(n, s, 1.0)
    }

    pub fn with_radius(n: usize, s: f64, r: f64) -> LabResult<Self> {
        let p = Self { n, s, r };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> LabResult<()> {
        if self.n < 2 {
            return Err(LabError::Parameter(format!("dimension n = {} must be >= 2", self.n)));
        }
        if self.s == 0.0 || self.s == 1.0 {
            return Err(LabError::Pole(format!("c(n, s) has a gamma pole at s = {}", self.s)));
        }
        if !(self.s > 0.0 && self.s < 1.0) {
            return Err(LabError::Parameter(format!("s = {} out of (0,1)", self.s)));
        }
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(LabError::Parameter(format!("radius r = {} must be positive", self.r)));
        }
        Ok(())
    }

    pub fn half_n(&self) -> f64 {
        self.n as f64 / 2.0
    }
}

/// `c(n,s) = 2 / (Γ(s) Γ(1-s) σ_{n-1})`.
pub fn kernel_constant(p: &FracParam) -> LabResult<f64> {
    p.validate()?;
    Ok(kernel_constant_complex(p.n, Complex64::new(p.s, 0.0))?.re)
}

/// `c(n,z)` for complex `z`; symmetric under `z ↦ 1 - z` bit for bit.
pub fn kernel_constant_complex(n: usize, z: Complex64) -> LabResult<Complex64> {
    if z.im == 0.0 && z.re.fract() == 0.0 {
        return Err(LabError::Pole(format!("c(n, z) has a gamma pole at z = {}", z.re)));
    }
    let one = Complex64::new(1.0, 0.0);
    let (a, b) = (rgamma_complex(z)?, rgamma_complex(one - z)?);
    // order the factors canonically so that z and 1-z give identical products
    let prod = if (z.re, z.im) <= ((one - z).re, (one - z).im) { a * b } else { b * a };
    Ok(prod * (2.0 / sphere_area(n)))
}

/// `A_r^(s)` at `|x| = radius`; zero on the closed ball of radius `r`.
pub fn eval_kernel(p: &FracParam, radius: f64) -> f64 {
    if radius <= p.r {
        return 0.0;
    }
    let c = kernel_constant(p).unwrap_or(f64::NAN);
    c * p.r.powf(2.0 * p.s) / ((radius * radius - p.r * p.r).powf(p.s) * radius.powi(p.n as i32))
}

/// The kernel as a radial profile: singular exponent `-s` at `r`, decay `n + 2s`.
pub fn kernel_profile(p: &FracParam) -> LabResult<RadialProfile<f64>> {
    p.validate()?;
    let c = kernel_constant(p)?;
    let (r, s, n) = (p.r, p.s, p.n as i32);
    let scale = c * r.powf(2.0 * s);
    let regular = move |rho: f64| scale * (rho + r).powf(-s) * rho.powi(-n);
    let q = *p;
    Ok(RadialProfile::new(move |rho: f64| eval_kernel(&q, rho), DecayClass::Poly(n as f64 + 2.0 * s))
        .with_inner_radius(r)
        .with_singularity(r, -s, regular))
}

/// `∫_{R^n} A_r^(s)`; equals 1.
pub fn kernel_mass(p: &FracParam, cfg: &QuadConfig<f64>) -> LabResult<f64> {
    radial_mass(&kernel_profile(p)?, p.n, cfg)
}

/// Growth exponent of a profile used as a weight against the kernel.
fn profile_growth(f: &RadialProfile<f64>) -> f64 {
    match f.decay {
        DecayClass::Poly(k) => -k,
        DecayClass::Schwartz | DecayClass::Compact(_) => 0.0,
    }
}

fn admit(p: &FracParam, f: &RadialProfile<f64>) -> LabResult<()> {
    if profile_growth(f) >= 2.0 * p.s {
        return Err(LabError::Domain(format!(
            "profile grows like r^{}, not integrable against the kernel tail r^-(n+{})",
            profile_growth(f),
            2.0 * p.s
        )));
    }
    Ok(())
}

/// Average of a radial `f` over the sphere of radius `rho` whose centre is at
/// distance `c` from the origin, in `R^n`.
fn sphere_average(f: &RadialProfile<f64>, n: usize, c: f64, rho: f64, cfg: &QuadConfig<f64>) -> LabResult<f64> {
    if c == 0.0 {
        return Ok(f.eval(rho));
    }
    let k = n as i32 - 2;
    let integral: f64 = integrate_finite(
        |theta: f64| {
            let d2 = (rho * rho + c * c - 2.0 * rho * c * theta.cos()).max(0.0);
            f.eval(d2.sqrt()) * theta.sin().powi(k)
        },
        0.0,
        std::f64::consts::PI,
        SingularitySpec::none(),
        cfg,
    )?;
    Ok(sphere_area(n - 1) / sphere_area(n) * integral)
}

/// Spherical mean `ℳ_r(f, x)` of a radial `f` at `|x| = center_norm` in `R^n`.
pub fn spherical_mean(
    f: &RadialProfile<f64>,
    n: usize,
    center_norm: f64,
    r: f64,
    cfg: &QuadConfig<f64>,
) -> LabResult<f64> {
    if n < 2 || !(r > 0.0) || !(center_norm >= 0.0) {
        return Err(LabError::Domain("spherical mean needs n >= 2, r > 0, |x| >= 0".into()));
    }
    sphere_average(f, n, center_norm, r, cfg)
}

/// `σ_{n-1} ∫_r^∞ A(ρ) ρ^{n-1} g(ρ) dρ`.
fn against_kernel<G: Fn(f64) -> f64>(p: &FracParam, g: G, growth: f64, cfg: &QuadConfig<f64>) -> LabResult<f64> {
    let kernel = kernel_profile(p)?;
    let m = p.n as i32 - 1;
    let v: f64 = kernel.integrate_against(|rho: f64| rho.powi(m) * g(rho), m as f64 + growth, cfg)?;
    Ok(sphere_area(p.n) * v)
}

/// `𝒜_r^(s) f(x) = (A_r^(s) ⋆ f)(x)` for radial `f` at `|x| = center_norm`.
pub fn mean_operator(
    p: &FracParam,
    f: &RadialProfile<f64>,
    center_norm: f64,
    cfg: &QuadConfig<f64>,
) -> LabResult<f64> {
    p.validate()?;
    f.validate()?;
    admit(p, f)?;
    if !(center_norm >= 0.0) {
        return Err(LabError::Domain("center norm must be >= 0".into()));
    }
    let inner = cfg.scaled(0.1);
    against_kernel(
        p,
        |rho| sphere_average(f, p.n, center_norm, rho, &inner).unwrap_or(f64::NAN),
        profile_growth(f),
        cfg,
    )
}

/// `𝒜_r^(s) f(x) - f(x)`, integrated as `∫ A(y) (f(x-y) - f(x)) dy`.
pub fn mean_operator_increment(
    p: &FracParam,
    f: &RadialProfile<f64>,
    center_norm: f64,
    cfg: &QuadConfig<f64>,
) -> LabResult<f64> {
    p.validate()?;
    f.validate()?;
    admit(p, f)?;
    let f0 = f.eval(center_norm);
    let inner = cfg.scaled(0.1);
    against_kernel(
        p,
        |rho| sphere_average(f, p.n, center_norm, rho, &inner).unwrap_or(f64::NAN) - f0,
        profile_growth(f).max(0.0),
        cfg,
    )
}

/// Fractional-Laplacian normalisation `γ(n,s) = s 2^{2s} Γ(n/2+s) / (π^{n/2} Γ(1-s))`.
pub fn gamma_constant(p: &FracParam) -> LabResult<f64> {
    p.validate()?;
    let (s, h) = (p.s, p.half_n());
    Ok(s * 4f64.powf(s) * gamma_real(h + s)? / (std::f64::consts::PI.powf(h) * gamma_real(1.0 - s)?))
}

/// Factor turning the limit of `(𝒜_r f - f)/r^{2s}` into `-(-Δ)^s f`:
/// `γ(n,s)/c(n,s) = 4^s Γ(n/2+s) Γ(1+s) / Γ(n/2)`, for the Fourier symbol
/// `(2π|ξ|)^{2s}`.
pub fn blaschke_privalov_factor(p: &FracParam) -> LabResult<f64> {
    Ok(gamma_constant(p)? / kernel_constant(p)?)
}

/// Centre value of the Poisson-type kernel `c(n,s) ((r² - |x|²)/(|y|² - r²))^s |x - y|^{-n}` at `x = 0`.
pub fn poisson_kernel_at_center(p: &FracParam, y_norm: f64) -> LabResult<f64> {
    p.validate()?;
    if y_norm <= p.r {
        return Ok(0.0);
    }
    let ratio = p.r * p.r / (y_norm * y_norm - p.r * p.r);
    Ok(kernel_constant(p)? * ratio.powf(p.s) / y_norm.powi(p.n as i32))
}

/// Exponents of the remainder of `(𝒜_r f - f)/r^{2s}` in powers of `r`.
pub fn blaschke_privalov_exponents(s: f64) -> [f64; 2] {
    [2.0 - 2.0 * s, 2.0]
}

/// Relative spread between the last two extrapolants tolerated by
/// [`blaschke_privalov`].
pub const BP_EXTRAPOLATION_TOL: f64 = 1e-2;

/// `(-Δ)^s f(x) = -(γ(n,s)/c(n,s)) lim_{r→0} (𝒜_r^(s) f(x) - f(x)) / r^{2s}`,
/// by extrapolating the quotient along `r_seq`.
pub fn blaschke_privalov(
    p: &FracParam,
    f: &RadialProfile<f64>,
    center_norm: f64,
    r_seq: &[f64],
    cfg: &QuadConfig<f64>,
) -> LabResult<f64> {
    p.validate()?;
    if r_seq.len() < 4 {
        return Err(LabError::Parameter("r_seq needs at least 4 radii".into()));
    }
    if r_seq.windows(2).any(|w| !(w[1] < w[0])) || r_seq.iter().any(|&r| !(r > 0.0)) {
        return Err(LabError::Parameter("r_seq must be positive and strictly decreasing".into()));
    }
    let mut q = Vec::with_capacity(r_seq.len());
    for &r in r_seq {
        let pr = FracParam { r, ..*p };
        q.push(mean_operator_increment(&pr, f, center_norm, cfg)? / r.powf(2.0 * p.s));
    }
    let ex = richardson(r_seq, &q, &blaschke_privalov_exponents(p.s))?;
    let tol = BP_EXTRAPOLATION_TOL * ex.value.abs() + 1e-9;
    if ex.spread() > tol {
        return Err(LabError::NoConvergence {
            what: "Blaschke–Privalov extrapolation".into(),
            estimate: ex.spread(),
            tolerance: tol,
        });
    }
    Ok(-blaschke_privalov_factor(p)? * ex.value)
}
