//! Knapp examples and the restriction identity.

use rieszlab::oscquad::gaussian;
use rieszlab::record::{anchors as a, TolRule};
use rieszlab::restriction_lab::{
    default_eps_grid, knapp_mass, knapp_norm, necessity_scan, small_eps_fit, threshold_q, tomas_stein_identity,
    tomas_stein_p, ExponentPair, KnappGeometry,
};
use rieszlab::rieszkernel::FracParam;
use rieszlab::VerificationRecord as R;

use super::{attempt, attempt_many, check, tag, Check, Context};
use crate::config::Suite;
use crate::report::PlotSeries;

pub(super) fn checks() -> Vec<Check> {
    let k = Suite::Knapp;
    vec![
        check(k, a::KNAPP_MASS, "knapp_mass_exponent", mass),
        check(k, a::KNAPP_NORM, "knapp_norm_exponent", norm),
        check(k, a::KNAPP_QUOTIENT, "knapp_threshold", quotient),
        check(k, a::KNAPP_NECESSITY, "knapp_necessity", necessity),
        check(k, a::PLANCHEREL, "plancherel", plancherel),
    ]
}

fn mass(ctx: &Context) -> Vec<R> {
    let grid = default_eps_grid();
    ctx.grid()
        .into_iter()
        .map(|(n, s)| {
            let name = tag("knapp_mass_slope", n, s);
            attempt(name.clone(), a::KNAPP_MASS, || {
                let p = FracParam::new(n, s)?;
                let masses = grid
                    .iter()
                    .map(|&eps| knapp_mass(&p, &KnappGeometry::new(n, eps)?, false, &ctx.quad))
                    .collect::<Result<Vec<_>, _>>()?;
                let fit = small_eps_fit(&grid, &masses)?;
                let target = (n as f64 + 1.0) / 2.0 - s;
                Ok(R::compare(name, a::KNAPP_MASS, fit.slope, target, 0.05, TolRule::Absolute))
            })
        })
        .collect()
}

fn norm(ctx: &Context) -> Vec<R> {
    let grid = default_eps_grid();
    let mut out = Vec::new();
    for &n in &ctx.dims {
        for p in [4.0 / 3.0, 1.5, 2.0] {
            let name = format!("knapp_norm_slope[n={n},p={p:.4}]");
            out.push(attempt(name.clone(), a::KNAPP_NORM, || {
                let norms = grid
                    .iter()
                    .map(|&eps| knapp_norm(&KnappGeometry::new(n, eps)?, p, &ctx.quad))
                    .collect::<Result<Vec<_>, _>>()?;
                let fit = small_eps_fit(&grid, &norms)?;
                let target = (n as f64 + 1.0) * (p - 1.0) / (2.0 * p);
                Ok(R::compare(name, a::KNAPP_NORM, fit.slope, target, 0.05, TolRule::Absolute))
            }));
        }
        let name = format!("knapp_l2_norm_squared_over_volume[n={n}]");
        out.push(attempt(name.clone(), a::KNAPP_NORM, || {
            let g = KnappGeometry::new(n, grid[0])?;
            let vol = grid[0] * (2.0 * g.r_eps()).powi(n as i32 - 1);
            Ok(R::compare(name, a::KNAPP_NORM, knapp_norm(&g, 2.0, &ctx.quad)?.powi(2) / vol, 1.0, 1e-9, TolRule::Relative))
        }));
    }
    out
}

fn quotient(ctx: &Context) -> Vec<R> {
    let grid = default_eps_grid();
    ctx.grid()
        .into_iter()
        .map(|(n, s)| {
            let name = tag("knapp_threshold_exponent", n, s);
            attempt(name.clone(), a::KNAPP_QUOTIENT, || {
                let p = tomas_stein_p(n, s);
                let ep = ExponentPair::new(p, threshold_q(n, s, p))?;
                let scan = necessity_scan(&FracParam::new(n, s)?, &ep, &grid, &ctx.quad)?;
                let rows = scan
                    .rows
                    .iter()
                    .map(|r| vec![r.eps.ln(), r.mass.ln(), r.norm.ln(), r.quotient.ln()])
                    .collect();
                ctx.plot(PlotSeries::new(format!("knapp_n{n}_s{s}"), &["log_eps", "log_mass", "log_norm", "log_quotient"], rows));
                Ok(R::compare(name, a::KNAPP_QUOTIENT, scan.fitted_exponent, scan.theoretical_exponent, 0.05, TolRule::Absolute)
                    .with_note(format!("p = {p:.6}, q = {:.6}", ep.q)))
            })
        })
        .collect()
}

fn necessity(ctx: &Context) -> Vec<R> {
    let grid = default_eps_grid();
    let mut out = Vec::new();
    for (n, s) in ctx.grid() {
        out.extend(attempt_many(tag("knapp_necessity", n, s), a::KNAPP_NECESSITY, || {
            let p = tomas_stein_p(n, s);
            let q0 = threshold_q(n, s, p);
            let frac = FracParam::new(n, s)?;
            let mut recs = Vec::new();
            for factor in [1.25, 0.75] {
                let scan = necessity_scan(&frac, &ExponentPair::new(p, factor * q0)?, &grid, &ctx.quad)?;
                let name = format!("{}[q={factor}q0]", tag("knapp_exponent_sign", n, s));
                recs.push(
                    R::compare(name, a::KNAPP_NECESSITY, scan.fitted_exponent.signum(), scan.theoretical_exponent.signum(), 0.0, TolRule::Absolute)
                        .with_note(format!("fitted {:.4}, theory {:.4}", scan.fitted_exponent, scan.theoretical_exponent)),
                );
            }
            Ok(recs)
        }));
    }
    out
}

fn plancherel(ctx: &Context) -> Vec<R> {
    ctx.grid()
        .into_iter()
        .map(|(n, s)| {
            attempt(tag("plancherel", n, s), a::PLANCHEREL, || tomas_stein_identity(&FracParam::new(n, s)?, &gaussian(), &ctx.quad))
        })
        .collect()
}
