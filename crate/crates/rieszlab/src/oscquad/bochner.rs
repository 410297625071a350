use super::config::{QuadConfig, SingularitySpec};
use super::finite::{adaptive, integrate_weighted};
use super::profile::{DecayClass, RadialProfile};
use super::tail::{accelerated_tail, ZeroGrid};
use crate::specfun::{bessel_j, SeriesConfig};
use crate::{Complex, LabError, LabResult, Real};

fn sphere_area<T: Real>(n: usize) -> T {
    T::lit(crate::sphere_area(n))
}

/// `∫_{R^n} f(|x|) dx = σ_{n-1} ∫_0^∞ f(r) r^{n-1} dr`.
pub fn radial_mass<T: Real>(profile: &RadialProfile<T>, n: usize, cfg: &QuadConfig<T>) -> LabResult<T> {
    check_dimension(n)?;
    let p = T::from_count(n - 1);
    let m: T = profile.integrate_against(|r: T| r.powf(p), p, cfg)?;
    Ok(sphere_area::<T>(n) * m)
}

fn check_dimension(n: usize) -> LabResult<()> {
    if n == 0 {
        return Err(LabError::Domain("dimension must be >= 1".into()));
    }
    Ok(())
}

/// Fourier transform `∫ f(|x|) e^{-2πi x·ξ} dx` of a radial function at
/// `|ξ| = xi`, via `2π |ξ|^{1-n/2} ∫_0^∞ f(r) r^{n/2} J_{n/2-1}(2π|ξ| r) dr`.
pub fn bochner_radial_ft<T: Real>(
    profile: &RadialProfile<T>,
    n: usize,
    xi: T,
    cfg: &QuadConfig<T>,
) -> LabResult<T> {
    check_dimension(n)?;
    if !(xi >= T::zero()) || !xi.is_finite() {
        return Err(LabError::Domain(format!("frequency {xi} must be finite and >= 0")));
    }
    if xi == T::zero() {
        return radial_mass(profile, n, cfg);
    }
    let half = T::from_count(n) / T::lit(2.0);
    let c = T::lit(2.0) * T::PI() * xi;
    let integral = hankel_integral(profile, half - T::one(), half, c, cfg)?;
    Ok(T::lit(2.0) * T::PI() * xi.powf(T::one() - half) * integral)
}

/// `∫_0^∞ f(r) r^power J_order(scale · r) dr` for a radial profile, with
/// zero-partitioned blocks and tail acceleration on unbounded supports.
pub fn hankel_integral<T: Real>(
    profile: &RadialProfile<T>,
    order: T,
    power: T,
    scale: T,
    cfg: &QuadConfig<T>,
) -> LabResult<T> {
    profile.validate()?;
    if !(scale > T::zero()) {
        return Err(LabError::Domain(format!("Bessel scale {scale} must be positive")));
    }
    if let DecayClass::Poly(k) = profile.decay {
        if !(k > power - T::lit(0.5)) {
            return Err(LabError::Domain(format!(
                "decay r^-{k} too slow for a convergent Bessel integral with weight r^{power}"
            )));
        }
    }
    let series = SeriesConfig::default();
    let nu = Complex::new(order, T::zero());
    let w = move |r: T| -> T {
        let r = r.max(T::min_positive_value());
        match bessel_j(nu, scale * r, &series) {
            Ok(j) => r.powf(power) * j.re,
            Err(_) => T::nan(),
        }
    };
    let f = |r: T| profile.eval(r) * w(r);
    let start = profile.inner_radius;
    let sing = profile.singular.as_ref();
    let grid = ZeroGrid::beyond(order, scale, start);
    let piece_cfg = QuadConfig { abs_tol: cfg.abs_tol * T::lit(0.1), ..*cfg };

    match profile.decay {
        DecayClass::Compact(big_r) => {
            let mut cuts = vec![start];
            let mut j = 0;
            while grid.point(j) < big_r {
                cuts.push(grid.point(j));
                j += 1;
            }
            cuts.push(big_r);
            let last = cuts.len() - 2;
            let mut total = T::zero();
            for (i, win) in cuts.windows(2).enumerate() {
                let (a, b) = (win[0], win[1]);
                let edge = match sing {
                    Some(s) if i == 0 && s.radius == a => Some(SingularitySpec::left(s.exponent)),
                    Some(s) if i == last && s.radius == b => Some(SingularitySpec::right(s.exponent)),
                    _ => None,
                };
                total = total
                    + match (edge, sing) {
                        (Some(spec), Some(s)) => integrate_weighted(|r: T| s.regular(r) * w(r), a, b, spec, &piece_cfg)?,
                        _ => adaptive(f, a, b, &piece_cfg)?.value,
                    };
            }
            Ok(total)
        }
        DecayClass::Poly(_) | DecayClass::Schwartz => {
            let p0 = grid.point(0);
            let head = match sing.filter(|s| s.radius == start) {
                Some(s) => integrate_weighted(
                    |r: T| s.regular(r) * w(r),
                    start,
                    p0,
                    SingularitySpec::left(s.exponent),
                    &piece_cfg,
                )?,
                None => adaptive(f, start, p0, &piece_cfg)?.value,
            };
            Ok(head + accelerated_tail(f, &grid, cfg)?.value)
        }
    }
}
