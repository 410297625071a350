//! The kernels `A_r^(s)` and their mean operators.

use std::f64::consts::PI;

use rieszlab::oscquad::{gaussian, integrate_finite, DecayClass, QuadConfig, RadialProfile, SingularitySpec};
use rieszlab::record::{anchors as a, TolRule};
use rieszlab::rieszkernel::{
    blaschke_privalov, eval_kernel, kernel_constant, kernel_mass, mean_operator, spherical_mean, FracParam,
};
use rieszlab::specfun::gamma_real;
use rieszlab::VerificationRecord as R;

use super::oracles::sigma;
use super::{attempt, attempt_many, check, tag, Check, Context};
use crate::config::Suite;

pub(super) fn checks() -> Vec<Check> {
    let k = Suite::Kernels;
    vec![
        check(k, a::KERNEL_DEFINITION, "kernel_pointwise", definition),
        check(k, a::KERNEL_CONSTANT, "kernel_constant", constant),
        check(k, a::KERNEL_NORMALIZATION, "kernel_mass", normalization),
        check(k, a::MEAN_OPERATOR, "mean_of_power", mean_of_power),
        check(k, a::CONTRACTION, "mean_contraction", contraction),
        check(k, a::CENTER_VALUE, "mean_at_center", center_value),
        check(k, a::SPHERICAL_LIMIT, "spherical_limit", spherical_limit),
        check(k, a::BLASCHKE_PRIVALOV, "blaschke_privalov", blaschke),
    ]
}

/// `c(n,s) = 2 sin(πs) / (π σ_{n-1})`.
fn constant_oracle(n: usize, s: f64) -> f64 {
    2.0 * (PI * s).sin() / (PI * sigma(n))
}

fn definition(ctx: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for (n, s) in ctx.grid() {
        out.extend(attempt_many(tag("kernel_pointwise", n, s), a::KERNEL_DEFINITION, || {
            let (r, x) = (0.7, 1.3);
            let p = FracParam::with_radius(n, s, r)?;
            let reference = constant_oracle(n, s) * r.powf(2.0 * s) / ((x * x - r * r).powf(s) * x.powi(n as i32));
            Ok(vec![
                R::compare(tag("kernel_at_1.3_r0.7", n, s), a::KERNEL_DEFINITION, eval_kernel(&p, x), reference, 1e-13, TolRule::Relative),
                R::compare(tag("kernel_inside_ball", n, s), a::KERNEL_DEFINITION, eval_kernel(&p, 0.5), 0.0, 0.0, TolRule::Absolute),
            ])
        }));
    }
    out
}

fn constant(ctx: &Context) -> Vec<R> {
    ctx.grid()
        .into_iter()
        .map(|(n, s)| {
            let name = tag("kernel_constant", n, s);
            attempt(name.clone(), a::KERNEL_CONSTANT, || {
                let c = kernel_constant(&FracParam::new(n, s)?)?;
                Ok(R::compare(name, a::KERNEL_CONSTANT, c, constant_oracle(n, s), 1e-13, TolRule::Relative))
            })
        })
        .collect()
}

fn normalization(ctx: &Context) -> Vec<R> {
    ctx.grid()
        .into_iter()
        .map(|(n, s)| {
            let name = tag("kernel_mass", n, s);
            attempt(name.clone(), a::KERNEL_NORMALIZATION, || {
                Ok(R::compare(name, a::KERNEL_NORMALIZATION, kernel_mass(&FracParam::new(n, s)?, &ctx.quad)?, 1.0, 1e-8, TolRule::Absolute))
            })
        })
        .collect()
}

fn mean_of_power(ctx: &Context) -> Vec<R> {
    // 𝒜_1 |x|^{s} at 0 = Γ(s/2) / (Γ(s) Γ(1 - s/2))
    ctx.grid()
        .into_iter()
        .map(|(n, s)| {
            let name = tag("mean_of_|x|^s_at_0", n, s);
            attempt(name.clone(), a::MEAN_OPERATOR, || {
                let f = RadialProfile::new(move |r: f64| r.powf(s), DecayClass::Poly(-s));
                let v = mean_operator(&FracParam::new(n, s)?, &f, 0.0, &ctx.quad)?;
                let reference = gamma_real(s / 2.0)? / (gamma_real(s)? * gamma_real(1.0 - s / 2.0)?);
                Ok(R::compare(name, a::MEAN_OPERATOR, v, reference, 1e-7, TolRule::Relative))
            })
        })
        .collect()
}

fn contraction(ctx: &Context) -> Vec<R> {
    ctx.grid()
        .into_iter()
        .map(|(n, s)| {
            let name = tag("sup_mean_of_gaussian", n, s);
            attempt(name.clone(), a::CONTRACTION, || {
                let p = FracParam::new(n, s)?;
                let g = gaussian();
                let mut sup: f64 = 0.0;
                for x in [0.0, 0.7, 2.0] {
                    sup = sup.max(mean_operator(&p, &g, x, &ctx.quad)?.abs());
                }
                Ok(R::upper_bound(name, a::CONTRACTION, sup, 1.0).with_note("sup over |x| in {0, 0.7, 2} against sup f = 1"))
            })
        })
        .collect()
}

/// `𝒜_1 e^{-π|x|²}(0) = (cσ/2) e^{-π} ∫_0^∞ e^{-πu} u^{-s} / (1+u) du`, with
/// `u = t^{1/(1-s)}` removing the endpoint singularity.
fn center_oracle(n: usize, s: f64) -> rieszlab::LabResult<f64> {
    let k = 1.0 / (1.0 - s);
    let f = |t: f64| {
        let u = t.powf(k);
        (-PI * u).exp() / (1.0 + u)
    };
    let cfg = QuadConfig { abs_tol: 1e-14, rel_tol: 1e-12, ..QuadConfig::default() };
    let upper = (60.0 / PI).powf(1.0 - s);
    let v: f64 = integrate_finite(f, 0.0, upper, SingularitySpec::none(), &cfg)?;
    Ok(constant_oracle(n, s) * sigma(n) / 2.0 * (-PI).exp() * k * v)
}

fn center_value(ctx: &Context) -> Vec<R> {
    ctx.grid()
        .into_iter()
        .map(|(n, s)| {
            let name = tag("mean_of_gaussian_at_0", n, s);
            attempt(name.clone(), a::CENTER_VALUE, || {
                let v = mean_operator(&FracParam::new(n, s)?, &gaussian(), 0.0, &ctx.quad)?;
                Ok(R::compare(name, a::CENTER_VALUE, v, center_oracle(n, s)?, 1e-8, TolRule::Relative))
            })
        })
        .collect()
}

fn spherical_limit(ctx: &Context) -> Vec<R> {
    let s = 0.999;
    let mut out = Vec::new();
    for &n in &ctx.dims {
        out.extend(attempt_many(tag("spherical_limit", n, s), a::SPHERICAL_LIMIT, || {
            let p = FracParam::new(n, s)?;
            let g = gaussian();
            let at0 = mean_operator(&p, &g, 0.0, &ctx.quad)?;
            let at_half = mean_operator(&p, &g, 0.5, &ctx.quad)?;
            let sphere = spherical_mean(&g, n, 0.5, 1.0, &ctx.quad)?;
            Ok(vec![
                R::compare(tag("mean_vs_sphere_at_0", n, s), a::SPHERICAL_LIMIT, at0, (-PI).exp(), 1e-3, TolRule::Absolute),
                R::compare(tag("mean_vs_sphere_at_0.5", n, s), a::SPHERICAL_LIMIT, at_half, sphere, 1e-3, TolRule::Absolute),
            ])
        }));
    }
    out
}

fn blaschke(ctx: &Context) -> Vec<R> {
    let r_seq = [0.2, 0.1, 0.05, 0.025];
    ctx.grid()
        .into_iter()
        .map(|(n, s)| {
            let name = tag("fractional_laplacian_of_gaussian_at_0", n, s);
            attempt(name.clone(), a::BLASCHKE_PRIVALOV, || {
                let est = blaschke_privalov(&FracParam::new(n, s)?, &gaussian(), 0.0, &r_seq, &ctx.quad)?;
                // ∫ (2π|ξ|)^{2s} e^{-π|ξ|²} dξ
                let h = n as f64 / 2.0;
                let oracle = sigma(n) * (2.0 * PI).powf(2.0 * s) * gamma_real(h + s)? / (2.0 * PI.powf(h + s));
                Ok(R::compare(name, a::BLASCHKE_PRIVALOV, est, oracle, 1e-2, TolRule::Relative))
            })
        })
        .collect()
}
