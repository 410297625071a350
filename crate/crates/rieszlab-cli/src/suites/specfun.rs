//! Gamma, Bessel and hypergeometric identities at fixed sample points.

use std::f64::consts::PI;

use rieszlab::fouriertransforms::critical_identity_check;
use rieszlab::oscquad::{bessel_head, bessel_tail, integrate_finite, OscIntegralSpec, QuadConfig, SingularitySpec};
use rieszlab::record::{anchors as a, TolRule};
use rieszlab::specfun::{
    bessel_j, gamma_complex, hyp1f2_bessel_identity_check, hyp_pfq, pochhammer, weber_schafheitlin, SeriesConfig,
};
use rieszlab::{Complex64, LabResult, VerificationRecord as R};

use super::oracles::derivative;
use super::{attempt, check, tag, Check, Context};
use crate::config::Suite;

pub(super) fn checks() -> Vec<Check> {
    let s = Suite::Specfun;
    vec![
        check(s, a::GAMMA_MODULI, "gamma_moduli", gamma_moduli),
        check(s, a::BESSEL_SERIES, "bessel_values", bessel_values),
        check(s, a::BESSEL_DERIVATIVE, "bessel_derivatives", bessel_derivatives),
        check(s, a::BESSEL_RECURRENCE, "bessel_recurrence", bessel_recurrence),
        check(s, a::POISSON_REPRESENTATION, "poisson_integral", poisson_integral),
        check(s, a::BESSEL_NEAR_ZERO, "bessel_near_zero", near_zero),
        check(s, a::BESSEL_NEAR_BOUND, "bessel_near_bound", near_bound),
        check(s, a::BESSEL_ASYMPTOTIC, "bessel_asymptotic", asymptotic),
        check(s, a::BESSEL_ENVELOPE, "bessel_envelope", envelope),
        check(s, a::WEBER_SCHAFHEITLIN, "weber_schafheitlin", ws),
        check(s, a::TAIL_CLOSED_FORM, "bessel_head_plus_tail", head_plus_tail),
        check(s, a::POCHHAMMER, "pochhammer", poch),
        check(s, a::HYPERGEOMETRIC, "hypergeometric_1f1", hyper_1f1),
        check(s, a::HYPERGEOMETRIC_ZERO, "hypergeometric_zero", hyper_zero),
        check(s, a::BINOMIAL_SERIES, "binomial_series", binomial),
        check(s, a::CRITICAL_LEMMA, "critical_identity", critical),
        check(s, a::HYP1F2_BESSEL, "hyp1f2_bessel", hyp1f2),
    ]
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn series() -> SeriesConfig<f64> {
    SeriesConfig::default()
}

fn j(nu: Complex64, x: f64) -> LabResult<Complex64> {
    bessel_j(nu, x, &series())
}

fn gamma_moduli(_: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for y in [0.5, 2.0, 5.0] {
        let root = ((PI * y).sinh() / (PI * y)).sqrt();
        out.push(attempt(format!("inv_gamma_iy[y={y}]"), a::GAMMA_MODULI, || {
            let g = 1.0 / gamma_complex(c64(0.0, y))?.norm();
            Ok(R::compare(format!("inv_gamma_iy[y={y}]"), a::GAMMA_MODULI, g, y * root, 1e-10, TolRule::Relative))
        }));
        out.push(attempt(format!("inv_gamma_1_iy[y={y}]"), a::GAMMA_MODULI, || {
            let g = 1.0 / gamma_complex(c64(1.0, y))?.norm();
            Ok(R::compare(format!("inv_gamma_1_iy[y={y}]"), a::GAMMA_MODULI, g, root, 1e-10, TolRule::Relative))
        }));
    }
    out
}

/// Reference values to 18 digits.
const BESSEL_TABLE: [(f64, f64, f64, f64, f64); 4] = [
    (0.0, 0.0, 1.0, 0.765_197_686_557_966_551, 0.0),
    (1.0, 0.0, 2.5, 0.497_094_102_464_274_038, 0.0),
    (1.0, 1.0, 3.0, 0.691_906_749_136_855_582, 0.448_426_861_397_701_027),
    (2.3, -0.6, 8.5, -0.118_859_843_418_964_231, 0.227_258_322_584_333_258),
];

fn bessel_values(_: &Context) -> Vec<R> {
    BESSEL_TABLE
        .iter()
        .map(|&(re, im, x, jr, ji)| {
            let name = format!("J[nu={re}{im:+}i,x={x}]");
            attempt(name.clone(), a::BESSEL_SERIES, || {
                Ok(R::compare(name, a::BESSEL_SERIES, j(c64(re, im), x)?, c64(jr, ji), 1e-12, TolRule::Relative))
            })
        })
        .collect()
}

fn bessel_derivatives(_: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for (nu, x) in [(c64(1.3, 0.7), 3.7), (c64(2.5, -1.0), 11.0), (c64(0.8, 0.2), 25.0)] {
        let one = c64(1.0, 0.0);
        let xp = move |t: f64| c64(t, 0.0).powc(nu);
        let jj = move |t: f64| j(nu, t).unwrap_or(c64(f64::NAN, f64::NAN));
        let name = format!("d(x^nu J_nu)[nu={nu},x={x}]");
        out.push(attempt(name.clone(), a::BESSEL_DERIVATIVE, || {
            let d = derivative(|t| xp(t) * jj(t), x, 1e-2) / xp(x);
            Ok(R::compare(name, a::BESSEL_DERIVATIVE, d, j(nu - one, x)?, 1e-9, TolRule::Looser))
        }));
        let name = format!("d(x^-nu J_nu)[nu={nu},x={x}]");
        out.push(attempt(name.clone(), a::BESSEL_DERIVATIVE, || {
            let d = -derivative(|t| jj(t) / xp(t), x, 1e-2) * xp(x);
            Ok(R::compare(name, a::BESSEL_DERIVATIVE, d, j(nu + one, x)?, 1e-9, TolRule::Looser))
        }));
    }
    out
}

fn bessel_recurrence(_: &Context) -> Vec<R> {
    [(c64(0.6, 0.3), 1.5), (c64(2.2, -1.4), 9.0), (c64(3.7, 0.5), 40.0)]
        .into_iter()
        .map(|(nu, x)| {
            let name = format!("recurrence[nu={nu},x={x}]");
            attempt(name.clone(), a::BESSEL_RECURRENCE, || {
                let one = c64(1.0, 0.0);
                let lhs = j(nu - one, x)? + j(nu + one, x)?;
                let rhs = nu * 2.0 / x * j(nu, x)?;
                Ok(R::compare(name, a::BESSEL_RECURRENCE, lhs, rhs, 1e-9, TolRule::Looser))
            })
        })
        .collect()
}

/// `(x/2)^ν / (√π Γ(ν+1/2)) · 2∫_0^{π/2} cos(x sin θ) cos^{2ν} θ dθ`.
fn poisson(nu: Complex64, x: f64) -> LabResult<Complex64> {
    let cfg = QuadConfig { abs_tol: 1e-12, rel_tol: 1e-12, ..QuadConfig::default() };
    let f = |th: f64| {
        let w = th.cos().max(0.0);
        if w == 0.0 {
            return c64(0.0, 0.0);
        }
        (nu * 2.0 * w.ln()).exp() * (x * th.sin()).cos()
    };
    let v: Complex64 = integrate_finite(f, 0.0, PI / 2.0, SingularitySpec::none(), &cfg)?;
    Ok(c64(x / 2.0, 0.0).powc(nu) * v * 2.0 / (gamma_complex(nu + 0.5)? * PI.sqrt()))
}

fn poisson_integral(_: &Context) -> Vec<R> {
    [(c64(0.7, 0.4), 2.5), (c64(2.0, -1.0), 9.0), (c64(0.0, 0.0), 17.0)]
        .into_iter()
        .map(|(nu, x)| {
            let name = format!("poisson[nu={nu},x={x}]");
            attempt(name.clone(), a::POISSON_REPRESENTATION, || {
                Ok(R::compare(name, a::POISSON_REPRESENTATION, j(nu, x)?, poisson(nu, x)?, 1e-9, TolRule::Looser))
            })
        })
        .collect()
}

fn near_zero(_: &Context) -> Vec<R> {
    let x = 1e-4;
    [c64(0.5, 0.0), c64(1.3, 0.8), c64(2.1, -0.5)]
        .into_iter()
        .map(|nu| {
            let name = format!("near_zero_ratio[nu={nu}]");
            attempt(name.clone(), a::BESSEL_NEAR_ZERO, || {
                let ratio = j(nu, x)? * gamma_complex(nu + 1.0)? / c64(x / 2.0, 0.0).powc(nu);
                Ok(R::compare(name, a::BESSEL_NEAR_ZERO, ratio, 1.0, 1e-7, TolRule::Absolute))
            })
        })
        .collect()
}

fn near_bound(_: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for nu in [c64(1.2, 0.8), c64(0.3, -1.5)] {
        for x in [0.5f64, 3.0, 10.0, 30.0] {
            let name = format!("near_bound[nu={nu},x={x}]");
            out.push(attempt(name.clone(), a::BESSEL_NEAR_BOUND, || {
                let g = |t: f64| gamma_complex(c64(t, 0.0)).map(|v| v.re);
                let bound = g(nu.re + 0.5)? / (gamma_complex(nu + 0.5)?.norm() * g(nu.re + 1.0)?)
                    * (x / 2.0).powf(nu.re);
                Ok(R::upper_bound(name, a::BESSEL_NEAR_BOUND, j(nu, x)?.norm(), bound))
            }));
        }
    }
    out
}

const LARGE_ORDERS: [Complex64; 3] = [Complex64::new(1.5, 0.0), Complex64::new(1.0, 0.5), Complex64::new(2.5, -1.0)];

fn asymptotic(_: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for nu in LARGE_ORDERS {
        for x in [50.0, 200.0] {
            let name = format!("hankel_remainder[nu={nu},x={x}]");
            out.push(attempt(name.clone(), a::BESSEL_ASYMPTOTIC, || {
                let lead = (c64(x - PI / 4.0, 0.0) - nu * (PI / 2.0)).cos() * (2.0 / (PI * x)).sqrt();
                let scaled = (j(nu, x)? - lead).norm() * x.powf(1.5);
                // second Hankel term, widened by the relative size of the third
                let mu = nu * nu * 4.0;
                let bound = (2.0 / PI).sqrt() * (PI * nu.im / 2.0).cosh() * (mu - 1.0).norm() / 8.0
                    * (1.0 + (mu - 9.0).norm() / (8.0 * x));
                Ok(R::upper_bound(name, a::BESSEL_ASYMPTOTIC, scaled, bound))
            }));
        }
    }
    out
}

fn envelope(_: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for nu in LARGE_ORDERS {
        for x in [30.0, 50.0, 200.0] {
            let name = format!("envelope[nu={nu},x={x}]");
            out.push(attempt(name.clone(), a::BESSEL_ENVELOPE, || {
                let env =
                    (2.0 / PI).sqrt() * (PI * nu.im / 2.0).cosh() * (1.0 + (nu * nu * 4.0 - 1.0).norm() / (4.0 * x));
                Ok(R::upper_bound(name, a::BESSEL_ENVELOPE, j(nu, x)?.norm() * x.sqrt(), env))
            }));
        }
    }
    out
}

/// `(μ, ν)` with `-Re ν - 1 < Re μ < 1/2` and `Re(μ+ν) > -1`.
const WS_PAIRS: [(Complex64, Complex64); 3] = [
    (Complex64::new(-0.5, -0.3), Complex64::new(1.5, 0.3)),
    (Complex64::new(0.2, 0.1), Complex64::new(0.7, -0.4)),
    (Complex64::new(-1.2, 0.0), Complex64::new(2.5, 1.0)),
];

fn ws(ctx: &Context) -> Vec<R> {
    WS_PAIRS
        .into_iter()
        .map(|(mu, nu)| {
            let name = format!("ws[mu={mu},nu={nu}]");
            attempt(name.clone(), a::WEBER_SCHAFHEITLIN, || {
                let quad = bessel_tail(&OscIntegralSpec::new(mu, nu, 0.0), &ctx.quad)?;
                Ok(R::compare(name, a::WEBER_SCHAFHEITLIN, quad, weber_schafheitlin(mu, nu, 1.0)?, 1e-8, TolRule::Looser))
            })
        })
        .collect()
}

fn head_plus_tail(ctx: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for (mu, nu) in WS_PAIRS {
        for b in [2.0, 7.5] {
            let name = format!("head_plus_tail[mu={mu},nu={nu},b={b}]");
            out.push(attempt(name.clone(), a::TAIL_CLOSED_FORM, || {
                let split = bessel_head(mu, nu, b, &ctx.quad)? + bessel_tail(&OscIntegralSpec::new(mu, nu, b), &ctx.quad)?;
                Ok(R::compare(name, a::TAIL_CLOSED_FORM, split, weber_schafheitlin(mu, nu, 1.0)?, 1e-8, TolRule::Looser))
            }));
        }
    }
    out
}

fn poch(_: &Context) -> Vec<R> {
    let alpha = c64(0.3, 0.2);
    let mut out: Vec<R> = [3usize, 7]
        .into_iter()
        .map(|k| {
            let name = format!("pochhammer[alpha={alpha},k={k}]");
            attempt(name.clone(), a::POCHHAMMER, || {
                let reference = gamma_complex(alpha + k as f64)? / gamma_complex(alpha)?;
                Ok(R::compare(name, a::POCHHAMMER, pochhammer(alpha, k), reference, 1e-12, TolRule::Relative))
            })
        })
        .collect();
    out.push(R::compare("pochhammer[alpha=0,k=3]", a::POCHHAMMER, pochhammer(c64(0.0, 0.0), 3), 0.0, 0.0, TolRule::Absolute));
    out.push(R::compare("pochhammer[alpha=0,k=0]", a::POCHHAMMER, pochhammer(c64(0.0, 0.0), 0), 1.0, 0.0, TolRule::Absolute));
    out
}

fn hyper_1f1(_: &Context) -> Vec<R> {
    // 1F1(1; 2; z) = (e^z - 1)/z
    [c64(1.7, 0.0), c64(-3.2, 0.0), c64(0.5, 2.0)]
        .into_iter()
        .map(|z| {
            let name = format!("1f1(1;2;z)[z={z}]");
            attempt(name.clone(), a::HYPERGEOMETRIC, || {
                let v = hyp_pfq(&[c64(1.0, 0.0)], &[c64(2.0, 0.0)], z, &series())?;
                Ok(R::compare(name, a::HYPERGEOMETRIC, v, (z.exp() - 1.0) / z, 1e-13, TolRule::Relative))
            })
        })
        .collect()
}

fn hyper_zero(_: &Context) -> Vec<R> {
    let zero = c64(0.0, 0.0);
    let cases: [(Vec<Complex64>, Vec<Complex64>, Complex64); 2] = [
        (vec![zero, c64(2.5, 0.0)], vec![c64(1.5, 0.0), c64(3.0, 0.0)], c64(7.0, 0.0)),
        (vec![zero], vec![c64(0.5, 1.0)], c64(-20.0, 3.0)),
    ];
    cases
        .iter()
        .enumerate()
        .map(|(k, (num, den, z))| {
            let name = format!("zero_parameter[case={k}]");
            attempt(name.clone(), a::HYPERGEOMETRIC_ZERO, || {
                Ok(R::compare(name, a::HYPERGEOMETRIC_ZERO, hyp_pfq(num, den, *z, &series())?, 1.0, 0.0, TolRule::Absolute))
            })
        })
        .collect()
}

fn binomial(_: &Context) -> Vec<R> {
    // 1F0(α; -z) = (1+z)^{-α}
    let alpha = c64(0.7, 0.3);
    [c64(0.4, 0.0), c64(-0.3, 0.2)]
        .into_iter()
        .map(|z| {
            let name = format!("1f0[alpha={alpha},z={z}]");
            attempt(name.clone(), a::BINOMIAL_SERIES, || {
                let v = hyp_pfq(&[alpha], &[], -z, &series())?;
                Ok(R::compare(name, a::BINOMIAL_SERIES, v, (z + 1.0).powc(-alpha), 1e-12, TolRule::Relative))
            })
        })
        .collect()
}

fn critical(ctx: &Context) -> Vec<R> {
    let mut out = Vec::new();
    for (n, s) in ctx.grid() {
        for c in [0.5, 4.0] {
            let name = format!("{}[c={c}]", tag("critical", n, s));
            out.push(attempt(name, a::CRITICAL_LEMMA, || critical_identity_check(n, s, c, &ctx.quad)));
        }
    }
    out
}

fn hyp1f2(_: &Context) -> Vec<R> {
    [
        (c64(0.5, 0.0), c64(1.5, 0.0), 1.0, 2.0),
        (c64(1.2, 0.4), c64(0.5, -0.3), 2.5, 0.7),
        (c64(2.0, -0.5), c64(2.2, 0.8), 0.8, 1.6),
    ]
    .into_iter()
    .map(|(alpha, nu, x, c)| {
        let name = format!("hyp1f2[alpha={alpha},nu={nu},a={x},c={c}]");
        attempt(name, a::HYP1F2_BESSEL, || hyp1f2_bessel_identity_check(alpha, nu, x, c, &series()))
    })
    .collect()
}
