use super::config::{Estimate, QuadConfig, QuadValue, SingularitySpec};
use super::finite::{adaptive, integrate_weighted_estimate};
use crate::specfun::bessel::bessel_j_reduced;
use crate::specfun::{bessel_j, SeriesConfig};
use crate::{Complex, LabError, LabResult, Real};

/// `∫_lower^∞ t^μ J_ν(t) dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscIntegralSpec<T> {
    pub mu: Complex<T>,
    pub nu: Complex<T>,
    pub lower: T,
}

/// Largest `|Im ν|` treated as verified; beyond it the zero partition of the
/// real-order envelope drifts from the true sign changes.
pub const VERIFIED_IMAG_ORDER: f64 = 8.0;

impl<T: Real> OscIntegralSpec<T> {
    pub fn new(mu: Complex<T>, nu: Complex<T>, lower: T) -> Self {
        Self { mu, nu, lower }
    }

    pub fn validate(&self) -> LabResult<()> {
        let finite = |z: Complex<T>| z.re.is_finite() && z.im.is_finite();
        if !finite(self.mu) || !finite(self.nu) || !self.lower.is_finite() {
            return Err(LabError::Domain("oscillatory integral parameters must be finite".into()));
        }
        if self.lower < T::zero() {
            return Err(LabError::Domain(format!("lower limit {} is negative", self.lower)));
        }
        if !(self.mu.re < T::lit(0.5)) {
            return Err(LabError::Domain(format!("Re μ = {} must be < 1/2", self.mu.re)));
        }
        if self.lower == T::zero() && !((self.mu + self.nu).re > -T::one()) {
            return Err(LabError::Domain(format!(
                "Re(μ+ν) = {} must exceed -1 when the lower limit is 0",
                (self.mu + self.nu).re
            )));
        }
        Ok(())
    }

    /// True when `|Im ν|` exceeds the verified range.
    pub fn beyond_verified_range(&self) -> bool {
        self.nu.im.abs() > T::lit(VERIFIED_IMAG_ORDER)
    }
}

/// McMahon-type estimate of the `k`-th positive zero of `J_ν`:
/// `β - (4ν² - 1)/(8β)`, `β = (k + ν/2 - 1/4)π`.
pub fn bessel_zero_estimate<T: Real>(order: T, k: usize) -> T {
    let beta = (T::from_count(k) + order / T::lit(2.0) - T::lit(0.25)) * T::PI();
    beta - (T::lit(4.0) * order * order - T::one()) / (T::lit(8.0) * beta)
}

/// Partition points `t_j = z_{k0+j} / scale` of `J_order(scale t)` beyond `lower`.
#[derive(Debug, Clone, Copy)]
pub struct ZeroGrid<T> {
    order: T,
    scale: T,
    k0: usize,
}

impl<T: Real> ZeroGrid<T> {
    /// First estimated zero strictly above `lower`.
    pub fn beyond(order: T, scale: T, lower: T) -> Self {
        let target = lower * scale;
        let guess = (target / T::PI() - order / T::lit(2.0)).floor() - T::one();
        let mut k0 = guess.max(T::one()).to_usize().unwrap_or(1);
        while bessel_zero_estimate(order, k0) <= target {
            k0 += 1;
        }
        // keep away from a vanishing head interval
        let min_gap = T::lit(1e-3);
        if bessel_zero_estimate(order, k0) - target < min_gap {
            k0 += 1;
        }
        Self { order, scale, k0 }
    }

    pub fn point(&self, j: usize) -> T {
        bessel_zero_estimate(self.order, self.k0 + j) / self.scale
    }
}

/// `∫_{grid.point(0)}^∞ g` for an integrand oscillating like
/// `J_order(scale t)`: zero-to-zero blocks, then iterated averaging of the
/// block partial sums. Blocks are added until two successive accelerated
/// values agree within tolerance.
pub fn accelerated_tail<T, V, G>(g: G, grid: &ZeroGrid<T>, cfg: &QuadConfig<T>) -> LabResult<Estimate<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    G: Fn(T) -> V,
{
    cfg.validate()?;
    let m = cfg.accel_order;
    let chunk = cfg.tail_zero_blocks;
    let max_blocks = 8 * chunk;
    let block_cfg = QuadConfig { abs_tol: cfg.abs_tol * T::lit(0.01), ..*cfg };
    let mut partial: Vec<V> = Vec::with_capacity(max_blocks);
    let mut sum = V::zero();
    let mut block_err = T::zero();
    let mut evaluations = 0;
    let mut target = chunk.max(m + 3);
    loop {
        while partial.len() < target {
            let j = partial.len();
            let est = adaptive(&g, grid.point(j), grid.point(j + 1), &block_cfg)?;
            sum = sum + est.value;
            block_err = block_err + est.error;
            evaluations += est.evaluations;
            partial.push(sum);
        }
        let last = averaged(&partial, m);
        let prev = averaged(&partial[..partial.len() - 1], m);
        let accel_err = (last - prev).magnitude();
        let error = accel_err + block_err;
        if error <= cfg.tolerance(last.magnitude()) {
            return Ok(Estimate { value: last, error, evaluations });
        }
        if target >= max_blocks {
            return Err(LabError::NoConvergence {
                what: format!("oscillatory tail after {target} zero blocks"),
                estimate: error.to_f64().unwrap_or(f64::NAN),
                tolerance: cfg.tolerance(last.magnitude()).to_f64().unwrap_or(f64::NAN),
            });
        }
        target += chunk;
    }
}

/// `m` passes of pairwise averaging over the last `m+1` partial sums.
pub(crate) fn averaged<T: Real, V: QuadValue<T>>(partial: &[V], m: usize) -> V {
    let n = partial.len();
    let mut level: Vec<V> = partial[n - (m + 1)..].to_vec();
    let half = T::lit(0.5);
    for _ in 0..m {
        level = level.windows(2).map(|w| (w[0] + w[1]) * half).collect();
    }
    level[0]
}

/// `J_ν(t) (t/2)^{-ν}`, evaluated without forming the power when `t` is small.
pub(crate) fn bessel_over_power<T: Real>(nu: Complex<T>, t: T, series: &SeriesConfig<T>) -> LabResult<Complex<T>> {
    if t <= T::lit(2.0) {
        return bessel_j_reduced(nu, t, series);
    }
    Ok(bessel_j(nu, t, series)? * (-nu * (t / T::lit(2.0)).ln()).exp())
}

/// `∫_0^b t^μ J_ν(t) dt` for `Re(μ+ν) > -1`.
pub fn bessel_head<T: Real>(mu: Complex<T>, nu: Complex<T>, b: T, cfg: &QuadConfig<T>) -> LabResult<Complex<T>> {
    if !((mu + nu).re > -T::one()) {
        return Err(LabError::Domain(format!("Re(μ+ν) = {} must exceed -1", (mu + nu).re)));
    }
    if !(b >= T::zero()) || !b.is_finite() {
        return Err(LabError::Domain(format!("upper limit {b} must be finite and >= 0")));
    }
    cfg.validate()?;
    Ok(bessel_head_estimate(mu, nu, b, cfg)?.value)
}

fn bessel_head_estimate<T: Real>(
    mu: Complex<T>,
    nu: Complex<T>,
    b: T,
    cfg: &QuadConfig<T>,
) -> LabResult<Estimate<T, Complex<T>>> {
    let series = SeriesConfig::default();
    // t^μ J_ν(t) = t^{α} · [t^{μ+ν-α} 2^{-ν} (J_ν(t)(t/2)^{-ν})], α = min(Re(μ+ν), 0)
    let weight_exp = (mu + nu).re.min(T::zero());
    let two_pow = Complex::new(T::lit(2.0), T::zero()).powc(-nu);
    let residual = mu + nu - Complex::new(weight_exp, T::zero());
    let regular = |t: T| -> Complex<T> {
        match bessel_over_power(nu, t, &series) {
            Ok(j) => (residual * t.ln()).exp() * two_pow * j,
            Err(_) => Complex::new(T::nan(), T::nan()),
        }
    };
    let sing = if weight_exp < T::zero() {
        SingularitySpec::left(weight_exp)
    } else {
        SingularitySpec::none()
    };
    integrate_weighted_estimate(regular, T::zero(), b, sing, cfg)
}

/// `∫_lower^∞ t^μ J_ν(t) dt` by zero partition and block acceleration.
pub fn bessel_tail<T: Real>(spec: &OscIntegralSpec<T>, cfg: &QuadConfig<T>) -> LabResult<Complex<T>> {
    bessel_tail_estimate(spec, cfg).map(|e| e.value)
}

/// [`bessel_tail`] with the error estimate.
pub fn bessel_tail_estimate<T: Real>(
    spec: &OscIntegralSpec<T>,
    cfg: &QuadConfig<T>,
) -> LabResult<Estimate<T, Complex<T>>> {
    spec.validate()?;
    cfg.validate()?;
    let series = SeriesConfig::default();
    let (mu, nu, lower) = (spec.mu, spec.nu, spec.lower);
    let order = nu.re;
    let grid = ZeroGrid::beyond(order, T::one(), lower);
    let p0 = grid.point(0);
    let head_cfg = QuadConfig { abs_tol: cfg.abs_tol * T::lit(0.1), ..*cfg };

    let head = if lower == T::zero() {
        bessel_head_estimate(mu, nu, p0, &head_cfg)?
    } else {
        let f = |t: T| -> Complex<T> {
            match bessel_j(nu, t, &series) {
                Ok(j) => (mu * t.ln()).exp() * j,
                Err(_) => Complex::new(T::nan(), T::nan()),
            }
        };
        adaptive(f, lower, p0, &head_cfg)?
    };

    let integrand = |t: T| -> Complex<T> {
        match bessel_j(nu, t, &series) {
            Ok(j) => (mu * t.ln()).exp() * j,
            Err(_) => Complex::new(T::nan(), T::nan()),
        }
    };
    let tail = accelerated_tail(integrand, &grid, cfg)?;
    Ok(Estimate {
        value: head.value + tail.value,
        error: head.error + tail.error,
        evaluations: head.evaluations + tail.evaluations,
    })
}
