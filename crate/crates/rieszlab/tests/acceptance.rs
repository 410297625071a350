//! Acceptance gate: the fourteen criteria at their stated tolerances, one
//! PASS/FAIL line each. Exits non-zero when any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rieszlab::fouriertransforms::{
    critical_identity_check, crux_identity_check, CRITICAL_MAX_C, decay_exponent_fit, ft_riesz, limit_s_to_1, FtForm,
};
use rieszlab::interpolation_constants::{
    default_bounds, stein_constant, stein_limit, tomas_stein_budget_with, EndpointBound, BUDGET_CAVEAT,
};
use rieszlab::oscquad::{bessel_tail, bochner_radial_ft, gaussian, OscIntegralSpec, QuadConfig};
use rieszlab::restriction_lab::{
    default_eps_grid, gaussian_dilate, knapp_mass, knapp_norm, necessity_scan, small_eps_fit, threshold_q,
    tomas_stein_identity, tomas_stein_p, ExponentPair, KnappGeometry,
};
use rieszlab::rieszkernel::{blaschke_privalov, kernel_mass, kernel_profile, FracParam};
use rieszlab::specfun::{bessel_j, gamma_complex, gamma_real, hyp1f2_bessel_identity_check, weber_schafheitlin, SeriesConfig};
use rieszlab::{sphere_area, Complex64};

type Outcome = Result<(bool, String), String>;

fn cfg() -> QuadConfig<f64> {
    QuadConfig::default()
}

fn fp(n: usize, s: f64) -> Result<FracParam, String> {
    FracParam::new(n, s).map_err(|e| e.to_string())
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

const S_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

fn normalization() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        for s in S_GRID {
            worst = worst.max((kernel_mass(&fp(n, s)?, &cfg()).map_err(e)? - 1.0).abs());
        }
    }
    Ok((worst < 1e-8, format!("20 points, max |mass - 1| = {worst:.2e} (tol 1e-8)")))
}

fn ft_theorem() -> Outcome {
    let xis = [0.05, 0.5, 1.0, 2.5, 5.0, 10.0, 15.0, 20.0];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 2..=5 {
        for s in S_GRID {
            let p = fp(n, s)?;
            let prof = kernel_profile(&p).map_err(e)?;
            for xi in xis {
                let closed = ft_riesz(&p, xi, FtForm::PrimaryIntegral, &cfg()).map_err(e)?;
                let oracle = bochner_radial_ft(&prof, n, xi, &cfg()).map_err(e)?;
                worst = worst.max((closed - oracle).abs());
                count += 1;
            }
        }
    }
    Ok((worst < 1e-6, format!("{count} points, max |closed - Bochner| = {worst:.2e} (tol 1e-6)")))
}

fn two_forms(rng: &mut StdRng) -> Outcome {
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let n = rng.gen_range(2..=5);
        let s = rng.gen_range(0.05..0.95);
        let xi = rng.gen_range(0.01..20.0);
        let p = fp(n, s)?;
        let a = ft_riesz(&p, xi, FtForm::PrimaryIntegral, &cfg()).map_err(e)?;
        let b = ft_riesz(&p, xi, FtForm::ByParts, &cfg()).map_err(e)?;
        worst = worst.max((a - b).abs());
    }
    Ok((worst < 1e-8, format!("20 random points, max difference {worst:.2e} (tol 1e-8)")))
}

fn decay() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2, 3] {
        for s in [0.25, 0.5, 0.75] {
            let f = decay_exponent_fit(&fp(n, s)?, 10.0, 1000.0, &cfg()).map_err(e)?;
            let target = -((n as f64 + 1.0) / 2.0 - s);
            ok &= (f.slope - target).abs() <= 0.05;
            parts.push(format!("n{n}s{s}:{:+.3}/{target:+.2}", f.slope));
        }
    }
    Ok((ok, format!("slopes {} (±0.05)", parts.join(" "))))
}

fn sphere_limit() -> Outcome {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for n in [2, 3] {
        for xi in [0.1, 0.4, 0.8, 1.2, 1.6, 2.0] {
            let rec = limit_s_to_1(n, xi, &[0.9, 0.99, 0.999], &cfg()).map_err(e)?;
            ok &= rec.pass;
            worst = worst.max(rec.abs_err);
        }
    }
    Ok((ok, format!("n=2,3 at 6 ξ: gaps decreasing, worst final gap {worst:.2e} (tol 5e-3)")))
}

fn knapp_mass_exponent() -> Outcome {
    let grid = default_eps_grid();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2, 3] {
        for s in [0.25, 0.5, 0.75] {
            let p = fp(n, s)?;
            let masses = grid
                .iter()
                .map(|&eps| knapp_mass(&p, &KnappGeometry::new(n, eps).map_err(e)?, false, &cfg()).map_err(e))
                .collect::<Result<Vec<_>, _>>()?;
            let fit = small_eps_fit(&grid, &masses).map_err(e)?;
            let target = (n as f64 + 1.0) / 2.0 - s;
            ok &= (fit.slope - target).abs() <= 0.05;
            parts.push(format!("n{n}s{s}:{:.3}/{target:.2}", fit.slope));
        }
    }
    Ok((ok, format!("slopes {} (±0.05)", parts.join(" "))))
}

fn knapp_norm_exponent() -> Outcome {
    let grid = default_eps_grid();
    let mut ok = true;
    let mut parts = Vec::new();
    let mut plancherel: f64 = 0.0;
    for n in [2, 3] {
        for p in [4.0 / 3.0, 1.5, 2.0] {
            let mut norms = Vec::new();
            for &eps in &grid {
                let g = KnappGeometry::new(n, eps).map_err(e)?;
                let v = knapp_norm(&g, p, &cfg()).map_err(e)?;
                if p == 2.0 {
                    // Plancherel: the L² norm of the transformed box is √(volume)
                    let vol = eps * (2.0 * g.r_eps()).powi(n as i32 - 1);
                    plancherel = plancherel.max((v * v / vol - 1.0).abs());
                }
                norms.push(v);
            }
            let fit = small_eps_fit(&grid, &norms).map_err(e)?;
            let target = (n as f64 + 1.0) / (2.0 * p / (p - 1.0));
            ok &= (fit.slope - target).abs() <= 0.05;
            parts.push(format!("n{n}p{p:.3}:{:.3}/{target:.3}", fit.slope));
        }
    }
    ok &= plancherel < 1e-9;
    Ok((ok, format!("slopes {} (±0.05); p=2 Plancherel rel err {plancherel:.1e} (tol 1e-9)", parts.join(" "))))
}

fn necessity() -> Outcome {
    let grid = default_eps_grid();
    let mut ok = true;
    let mut worst_at: f64 = 0.0;
    let mut cases = 0;
    for n in [2, 3] {
        for s in [0.25, 0.5, 0.75] {
            let p = tomas_stein_p(n, s);
            let q0 = threshold_q(n, s, p);
            let fr = fp(n, s)?;
            let at = necessity_scan(&fr, &ExponentPair::new(p, q0).map_err(e)?, &grid, &cfg()).map_err(e)?;
            worst_at = worst_at.max(at.fitted_exponent.abs());
            ok &= at.fitted_exponent.abs() <= 0.05;
            for factor in [1.25, 0.75] {
                let sc = necessity_scan(&fr, &ExponentPair::new(p, factor * q0).map_err(e)?, &grid, &cfg()).map_err(e)?;
                ok &= sc.fitted_exponent.signum() == sc.theoretical_exponent.signum();
                cases += 1;
            }
        }
    }
    Ok((ok, format!("threshold |exponent| <= {worst_at:.3} (tol 0.05); {cases} off-threshold sign checks")))
}

/// Eighth-order central difference.
fn derivative<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    let d = |k: f64| f(x + k * h) - f(x - k * h);
    (d(1.0) * 672.0 - d(2.0) * 168.0 + d(3.0) * 32.0 - d(4.0) * 3.0) / (840.0 * h)
}

fn special_function_identities(rng: &mut StdRng) -> Outcome {
    let series = SeriesConfig::default();
    let mut report = Vec::new();
    let mut ok = true;

    // Weber–Schafheitlin closed form vs the oscillatory integral from 0
    let mut eh: f64 = 0.0;
    for _ in 0..50 {
        let nu = c64(rng.gen_range(0.0..4.0), rng.gen_range(-2.0..2.0));
        let mu = c64(rng.gen_range((-nu.re - 0.8).max(-2.5)..0.25), rng.gen_range(-1.0..1.0));
        let quad = bessel_tail(&OscIntegralSpec::new(mu, nu, 0.0), &cfg()).map_err(e)?;
        let closed = weber_schafheitlin(mu, nu, 1.0).map_err(e)?;
        eh = eh.max((quad - closed).norm() / closed.norm().max(1.0));
    }
    ok &= eh < 1e-8;
    report.push(format!("WS {eh:.1e}"));

    let mut hyper = 0;
    for _ in 0..20 {
        let alpha = c64(rng.gen_range(0.2..3.0), rng.gen_range(-1.0..1.0));
        let nu = c64(rng.gen_range(0.0..3.0), rng.gen_range(-1.0..1.0));
        let rec = hyp1f2_bessel_identity_check(alpha, nu, rng.gen_range(0.2..3.0), rng.gen_range(0.2..2.0), &series)
            .map_err(e)?;
        hyper += rec.pass as usize;
    }
    ok &= hyper == 20;
    report.push(format!("1F2 {hyper}/20"));

    let (mut crux, mut crit) = (0, 0);
    for _ in 0..10 {
        let p = fp(rng.gen_range(2..=5), rng.gen_range(0.05..0.95))?;
        crux += crux_identity_check(&p, rng.gen_range(0.01..3.0), &cfg()).map_err(e)?.pass as usize;
        crit += critical_identity_check(p.n, p.s, rng.gen_range(0.05..CRITICAL_MAX_C), &cfg()).map_err(e)?.pass as usize;
    }
    ok &= crux == 10 && crit == 10;
    report.push(format!("crux {crux}/10 critical {crit}/10"));

    let mut recur: f64 = 0.0;
    for _ in 0..20 {
        let nu = c64(rng.gen_range(0.6..5.0), rng.gen_range(-2.0..2.0));
        let x = rng.gen_range(0.5..30.0);
        let j = |order: Complex64, t: f64| bessel_j(order, t, &series).unwrap_or(c64(f64::NAN, f64::NAN));
        let one = c64(1.0, 0.0);
        let (jm, j0, jp) = (j(nu - one, x), j(nu, x), j(nu + one, x));
        let scale = jm.norm().max(j0.norm()).max(jp.norm()).max(1e-3);
        recur = recur.max((j0 * nu * 2.0 / x - jp - jm).norm() / scale);
        let xp = |t: f64| c64(t, 0.0).powc(nu);
        let d1 = derivative(|t| xp(t) * j(nu, t), x, 1e-2);
        recur = recur.max((d1 - xp(x) * jm).norm() / (xp(x).norm() * scale));
        let d2 = derivative(|t| j(nu, t) / xp(t), x, 1e-2);
        recur = recur.max((-d2 - jp / xp(x)).norm() * xp(x).norm() / scale);
    }
    ok &= recur < 1e-9;
    report.push(format!("recurrences {recur:.1e}"));

    let mut gam: f64 = 0.0;
    for k in 1..=40 {
        let y = 0.25 * k as f64;
        let root = ((PI * y).sinh() / (PI * y)).sqrt();
        for sign in [1.0, -1.0] {
            let g0 = 1.0 / gamma_complex(c64(0.0, sign * y)).map_err(e)?.norm();
            let g1 = 1.0 / gamma_complex(c64(1.0, sign * y)).map_err(e)?.norm();
            gam = gam.max((g0 / (y * root) - 1.0).abs()).max((g1 / root - 1.0).abs());
        }
    }
    ok &= gam < 1e-10;
    report.push(format!("gamma moduli {gam:.1e}"));
    Ok((ok, report.join("; ")))
}

struct Bounds {
    n: usize,
    m0: EndpointBound,
    m1: EndpointBound,
}

fn growth_rates(bounds: &[Bounds]) -> Outcome {
    let ys: Vec<f64> = (0..=24).map(|k| 0.25 * k as f64).collect();
    let mut ok = true;
    let mut parts = Vec::new();
    for b in bounds {
        let m1 = EndpointBound::analytic_m1(b.n, &ys).map_err(e)?.rate_on(1.0, 6.0).map_err(e)?.rate;
        let m0 = b.m0.rate_on(0.0, 4.0).map_err(e)?.rate;
        ok &= (m1 - PI).abs() <= 0.02 && m0 <= 1.5 * PI + 0.1;
        parts.push(format!("n={}: M1 rate {m1:.4} (π±0.02), M0 rate {m0:.3} (<= {:.3})", b.n, 1.5 * PI + 0.1));
    }
    Ok((ok, parts.join("; ")))
}

fn stein(bounds: &[Bounds]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for b in bounds {
        let mut values = Vec::new();
        for s in [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99] {
            let ms = stein_constant(&fp(b.n, s)?, &b.m0, &b.m1, &cfg()).map_err(e)?;
            ok &= ms.value.is_finite() && ms.value > 0.0;
            values.push(ms.value);
        }
        let lim = stein_limit(b.n, &[0.9, 0.99, 0.999], &b.m0, &b.m1, &cfg()).map_err(e)?;
        ok &= lim.cauchy;
        parts.push(format!(
            "n={}: M_s in [{:.4e}, {:.4e}], M(n) ≈ {:.6}, Cauchy {}",
            b.n,
            values.iter().copied().fold(f64::INFINITY, f64::min),
            values.iter().copied().fold(0.0, f64::max),
            lim.limit,
            lim.cauchy
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn budget(bounds: &[Bounds]) -> Outcome {
    let mut ok = true;
    let mut least = f64::INFINITY;
    for b in bounds {
        for s in [0.3, 0.5, 0.7] {
            let rec = tomas_stein_budget_with(&fp(b.n, s)?, &b.m0, &b.m1, &cfg()).map_err(e)?;
            ok &= rec.pass;
            least = least.min(rec.reference.re() - rec.computed.re());
        }
    }
    Ok((ok && least > 0.0, format!("n=2,3 × s=0.3,0.5,0.7, Gaussian dilates; smallest margin {least:.4e}")))
}

fn plancherel() -> Outcome {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for s in [0.3, 0.5, 0.7] {
        for f in [gaussian(), gaussian_dilate(1.5)] {
            let rec = tomas_stein_identity(&fp(2, s)?, &f, &cfg()).map_err(e)?;
            ok &= rec.pass && rec.rel_err < 1e-4;
            worst = worst.max(rec.rel_err);
        }
    }
    Ok((ok, format!("n=2, s=0.3,0.5,0.7, two Gaussians: max rel discrepancy {worst:.2e} (tol 1e-4)")))
}

fn blaschke() -> Outcome {
    let g = gaussian();
    let r_seq = [0.2, 0.1, 0.05, 0.025];
    let mut worst: f64 = 0.0;
    for n in [2, 3] {
        for s in [0.3, 0.5, 0.7] {
            let est = blaschke_privalov(&fp(n, s)?, &g, 0.0, &r_seq, &cfg()).map_err(e)?;
            // ∫ (2π|ξ|)^{2s} e^{-π|ξ|²} dξ
            let h = n as f64 / 2.0;
            let oracle = sphere_area(n) * (2.0 * PI).powf(2.0 * s) * gamma_real(h + s).map_err(e)? / (2.0 * PI.powf(h + s));
            worst = worst.max(((est - oracle) / oracle).abs());
        }
    }
    Ok((worst < 1e-2, format!("n=2,3, s=0.3,0.5,0.7: max rel error {worst:.2e} (tol 1e-2)")))
}

fn report(k: usize, title: &str, t: Instant, outcome: Outcome) -> bool {
    let secs = t.elapsed().as_secs_f64();
    let (pass, detail) = outcome.unwrap_or_else(|err| (false, format!("error: {err}")));
    println!("#{k:<2} {} {title}: {detail} [{secs:.1}s]", if pass { "PASS" } else { "FAIL" });
    pass
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut all = true;
    macro_rules! crit {
        ($k:expr, $title:expr, $body:expr) => {{
            let t = Instant::now();
            all &= report($k, $title, t, $body);
        }};
    }
    crit!(1, "normalization", normalization());
    crit!(2, "Fourier transform closed form vs Bochner", ft_theorem());
    crit!(3, "two-form equivalence", two_forms(&mut rng));
    crit!(4, "decay exponent", decay());
    crit!(5, "s -> 1 sphere limit", sphere_limit());
    crit!(6, "Knapp mass exponent", knapp_mass_exponent());
    crit!(7, "Knapp norm exponent", knapp_norm_exponent());
    crit!(8, "necessity threshold", necessity());
    crit!(9, "special-function identities", special_function_identities(&mut rng));

    let t = Instant::now();
    let bounds: Result<Vec<Bounds>, String> = [2, 3]
        .into_iter()
        .map(|n| default_bounds(n, &cfg()).map(|(m0, m1)| Bounds { n, m0, m1 }).map_err(e))
        .collect();
    println!("    endpoint bounds computed [{:.1}s]", t.elapsed().as_secs_f64());
    match bounds {
        Ok(b) => {
            crit!(10, "endpoint growth rates", growth_rates(&b));
            crit!(11, "Stein constant", stein(&b));
            crit!(12, "Tomas–Stein budget", budget(&b));
        }
        Err(err) => {
            for (k, title) in [(10, "endpoint growth rates"), (11, "Stein constant"), (12, "Tomas–Stein budget")] {
                all &= report(k, title, Instant::now(), Err(err.clone()));
            }
        }
    }
    println!("    caveat (#12): {BUDGET_CAVEAT}");
    crit!(13, "Plancherel identity", plancherel());
    crit!(14, "Blaschke–Privalov", blaschke());

    if all {
        println!("acceptance: all 14 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
