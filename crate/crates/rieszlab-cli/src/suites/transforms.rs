//! Fourier transforms of the kernels, the sphere and the Bochner–Riesz means.

use std::f64::consts::PI;

use rieszlab::fit::geometric_grid;
use rieszlab::fouriertransforms::{
    bochner_riesz_ft, bochner_riesz_profile, crux_identity_check, decay_exponent_fit, ft_riesz, kz_kernel,
    limit_s_to_1, sphere_ft, FtForm,
};
use rieszlab::oscquad::{bochner_radial_ft, gaussian};
use rieszlab::record::{anchors as a, TolRule};
use rieszlab::restriction_lab::{max_admissible_p, tomas_stein_p};
use rieszlab::rieszkernel::{blaschke_privalov_factor, kernel_profile, FracParam};
use rieszlab::{Complex64, VerificationRecord as R};

use super::{attempt, attempt_many, check, tag, Check, Context};
use crate::config::Suite;
use crate::report::PlotSeries;

pub(super) fn checks() -> Vec<Check> {
    let t = Suite::Transforms;
    vec![
        check(t, a::TRANSFORM_THEOREM, "transform_vs_bochner", theorem),
        check(t, a::TRANSFORM_AT_ZERO, "transform_near_zero", at_zero),
        check(t, a::BOCHNER_FORMULA, "bochner_gaussian", bochner_gaussian),
        check(t, a::BY_PARTS_FORM, "transform_two_forms", by_parts),
        check(t, a::CRUX_IDENTITY, "crux_identity", crux),
        check(t, a::TRANSFORM_DECAY, "transform_decay", decay),
        check(t, a::ADMISSIBLE_P, "admissible_p", admissible),
        check(t, a::SPHERE_TRANSFORM, "sphere_transform", sphere),
        check(t, a::BOCHNER_RIESZ, "bochner_riesz", bochner_riesz),
        check(t, a::LIMIT_S_TO_1, "sphere_limit", sphere_limit),
        check(t, a::KZ_KERNEL, "kz_conjugate_symmetry", kz_symmetry),
        check(t, a::KZ_REDUCTION, "kz_reduction", kz_reduction),
    ]
}

fn theorem(ctx: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for (n, s) in ctx.grid() {
        for xi in [0.5, 2.5, 10.0] {
            let name = format!("{}[xi={xi}]", tag("transform_vs_bochner", n, s));
            out.push(attempt(name.clone(), a::TRANSFORM_THEOREM, || {
                let p = FracParam::new(n, s)?;
                let closed = ft_riesz(&p, xi, FtForm::PrimaryIntegral, &ctx.quad)?;
                let oracle = bochner_radial_ft(&kernel_profile(&p)?, n, xi, &ctx.quad)?;
                Ok(R::compare(name, a::TRANSFORM_THEOREM, closed, oracle, 1e-6, TolRule::Absolute))
            }));
        }
    }
    out
}

fn at_zero(ctx: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for (n, s) in ctx.grid() {
        out.extend(attempt_many(tag("transform_near_zero", n, s), a::TRANSFORM_AT_ZERO, || {
            let p = FracParam::new(n, s)?;
            let at0 = ft_riesz(&p, 0.0, FtForm::PrimaryIntegral, &ctx.quad)?;
            // 1 - Â(ξ) ≈ (2π|ξ|)^{2s} / (γ(n,s)/c(n,s)) as ξ → 0
            let xi = 1e-4;
            let dip = 1.0 - ft_riesz(&p, xi, FtForm::PrimaryIntegral, &ctx.quad)?;
            let ratio = dip * blaschke_privalov_factor(&p)? / (2.0 * PI * xi).powf(2.0 * s);
            Ok(vec![
                R::compare(tag("transform_at_0", n, s), a::TRANSFORM_AT_ZERO, at0, 1.0, 1e-12, TolRule::Absolute),
                R::compare(tag("transform_leading_dip", n, s), a::TRANSFORM_AT_ZERO, ratio, 1.0, 1e-4, TolRule::Absolute)
                    .with_note("(1 - Â(ξ)) γ/c / (2π|ξ|)^{2s} at |ξ| = 1e-4"),
            ])
        }));
    }
    out
}

fn bochner_gaussian(ctx: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for &n in &ctx.dims {
        for xi in [0.3, 1.0, 2.0] {
            let name = format!("gaussian_transform[n={n},xi={xi}]");
            out.push(attempt(name.clone(), a::BOCHNER_FORMULA, || {
                let v = bochner_radial_ft(&gaussian(), n, xi, &ctx.quad)?;
                Ok(R::compare(name, a::BOCHNER_FORMULA, v, (-PI * xi * xi).exp(), 1e-10, TolRule::Absolute))
            }));
        }
    }
    out
}

fn by_parts(ctx: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for (n, s) in ctx.grid() {
        for xi in [0.7, 6.0] {
            let name = format!("{}[xi={xi}]", tag("two_forms", n, s));
            out.push(attempt(name.clone(), a::BY_PARTS_FORM, || {
                let p = FracParam::new(n, s)?;
                let primary = ft_riesz(&p, xi, FtForm::PrimaryIntegral, &ctx.quad)?;
                let parts = ft_riesz(&p, xi, FtForm::ByParts, &ctx.quad)?;
                Ok(R::compare(name, a::BY_PARTS_FORM, parts, primary, 1e-8, TolRule::Absolute))
            }));
        }
    }
    out
}

fn crux(ctx: &Context) -> Vec<R> {
    ctx.grid()
        .into_iter()
        .map(|(n, s)| attempt(tag("crux", n, s), a::CRUX_IDENTITY, || crux_identity_check(&FracParam::new(n, s)?, 0.8, &ctx.quad)))
        .collect()
}

fn decay(ctx: &Context) -> Vec<R> {
    ctx.grid()
        .into_iter()
        .map(|(n, s)| {
            let name = tag("decay_slope", n, s);
            attempt(name.clone(), a::TRANSFORM_DECAY, || {
                let p = FracParam::new(n, s)?;
                let fit = decay_exponent_fit(&p, 10.0, 1000.0, &ctx.quad)?;
                let mut rows = Vec::new();
                for xi in geometric_grid(10.0, 1000.0, 8) {
                    let v = ft_riesz(&p, xi, FtForm::PrimaryIntegral, &ctx.quad)?.abs();
                    rows.push(vec![xi.ln(), v.ln(), fit.intercept + fit.slope * xi.ln()]);
                }
                ctx.plot(PlotSeries::new(format!("decay_n{n}_s{s}"), &["log_xi", "log_abs_transform", "log_envelope_fit"], rows));
                let target = -((n as f64 + 1.0) / 2.0 - s);
                Ok(R::compare(name, a::TRANSFORM_DECAY, fit.slope, target, 0.05, TolRule::Absolute))
            })
        })
        .collect()
}

fn admissible(ctx: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for (n, s) in ctx.grid() {
        // |Â|^{p'} integrable iff p' ((n+1)/2 - s) > n
        let pc = n as f64 / ((n as f64 + 1.0) / 2.0 - s);
        let edge = pc / (pc - 1.0);
        out.push(R::compare(tag("largest_p", n, s), a::ADMISSIBLE_P, max_admissible_p(n, s), edge, 1e-13, TolRule::Relative));
        out.push(R::upper_bound(tag("tomas_stein_p_admissible", n, s), a::ADMISSIBLE_P, tomas_stein_p(n, s), edge));
    }
    out
}

/// `J_0(π)`, `J_0(2π)`, `J_0(5π)` to 18 digits.
const J0_TABLE: [(f64, f64); 3] = [
    (0.5, -0.304_242_177_644_093_864),
    (1.0, 0.220_276_908_539_934_462),
    (2.5, -0.141_182_052_111_984_367),
];

fn sphere(_: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for (xi, j0) in J0_TABLE {
        let name = format!("sphere_transform[n=2,xi={xi}]");
        out.push(attempt(name.clone(), a::SPHERE_TRANSFORM, || {
            Ok(R::compare(name, a::SPHERE_TRANSFORM, sphere_ft(2, xi)?, 2.0 * PI * j0, 1e-12, TolRule::Looser))
        }));
    }
    for xi in [0.5, 1.3, 4.0] {
        let name = format!("sphere_transform[n=3,xi={xi}]");
        out.push(attempt(name.clone(), a::SPHERE_TRANSFORM, || {
            let reference = 2.0 * (2.0 * PI * xi).sin() / xi;
            Ok(R::compare(name, a::SPHERE_TRANSFORM, sphere_ft(3, xi)?, reference, 1e-12, TolRule::Looser))
        }));
    }
    out
}

fn bochner_riesz(ctx: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for &n in &ctx.dims {
        for z in [-0.5, 0.5] {
            for xi in [0.8, 3.0] {
                let name = format!("bochner_riesz[n={n},z={z},xi={xi}]");
                out.push(attempt(name.clone(), a::BOCHNER_RIESZ, || {
                    let oracle = bochner_radial_ft(&bochner_riesz_profile(z)?, n, xi, &ctx.quad)?;
                    Ok(R::compare(name, a::BOCHNER_RIESZ, bochner_riesz_ft(z, n, xi)?, oracle, 1e-8, TolRule::Absolute))
                }));
            }
        }
    }
    out
}

fn sphere_limit(ctx: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for &n in &ctx.dims {
        for xi in [0.4, 1.2] {
            let name = format!("sphere_limit[n={n},xi={xi}]");
            out.push(attempt(name, a::LIMIT_S_TO_1, || limit_s_to_1(n, xi, &[0.9, 0.99, 0.999], &ctx.quad)));
        }
    }
    out
}

fn kz_symmetry(ctx: &Context) -> Vec<R> {
    let z = Complex64::new(0.3, 0.7);
    ctx.dims
        .iter()
        .map(|&n| {
            let name = format!("kz_conjugate[n={n},z={z},xi=1.1]");
            attempt(name.clone(), a::KZ_KERNEL, || {
                let k = kz_kernel(z, n, 1.1, &ctx.quad)?;
                let kc = kz_kernel(z.conj(), n, 1.1, &ctx.quad)?;
                Ok(R::compare(name, a::KZ_KERNEL, kc, k.conj(), 1e-10, TolRule::Looser))
            })
        })
        .collect()
}

fn kz_reduction(ctx: &Context) -> Vec<R> {
    ctx.grid()
        .into_iter()
        .map(|(n, s)| {
            let name = tag("kz_at_1-s", n, s);
            attempt(name.clone(), a::KZ_REDUCTION, || {
                let k = kz_kernel(Complex64::new(1.0 - s, 0.0), n, 1.7, &ctx.quad)?;
                let ft = ft_riesz(&FracParam::new(n, s)?, 1.7, FtForm::PrimaryIntegral, &ctx.quad)?;
                Ok(R::compare(name, a::KZ_REDUCTION, k, ft, 1e-8, TolRule::Absolute))
            })
        })
        .collect()
}
