//! Complex-interpolation bookkeeping for the family `T_z` with kernels `K_z`:
//! the exponent `θ(s)`, the endpoint bounds `M_0(y)` (`L¹ → L^∞` on
//! `Re z = -(n-1)/2`) and `M_1(y)` (`L² → L²` on `Re z = 1`), and the
//! interpolated constant
//! `M_s = exp[sin φ ∫_0^∞ {log M_0/(cosh πy + cos φ) + log M_1/(cosh πy - cos φ)} dy]`,
//! `φ = 2πs/(n+1)`.

use serde::{Deserialize, Serialize};

use crate::fit::{exponential_rate_fit, golden_section_max};
use crate::fouriertransforms::kz_parts;
use crate::oscquad::{integrate_finite, QuadConfig, SingularitySpec, VERIFIED_IMAG_ORDER};
use crate::record::anchors;
use crate::restriction_lab::{gaussian_dilate, restriction_quotient, tomas_stein_p, ExponentPair};
use crate::rieszkernel::FracParam;
use crate::specfun::{gamma_complex, weber_schafheitlin};
use crate::{sphere_area, Complex64, LabError, LabResult, VerificationRecord};
use std::f64::consts::PI;

/// `θ(s) = 1 - 2s/(n+1)`; `T_{1-s}` sits at `x = θ` between the endpoint lines.
pub fn theta(p: &FracParam) -> LabResult<f64> {
    p.validate()?;
    Ok(1.0 - 2.0 * p.s / (p.n as f64 + 1.0))
}

/// Sharp `L²` bound on `Re z = 1`: `sup |A_1^(iy)| = 2 sinh(π|y|)/(σ_{n-1} π)`, zero at `y = 0`.
pub fn m1_bound(y: f64, n: usize) -> f64 {
    2.0 * (PI * y.abs()).sinh() / (sphere_area(n) * PI)
}

/// The same bound through the gamma moduli, `2/(σ_{n-1} |Γ(iy) Γ(1-iy)|)`, `y != 0`.
pub fn m1_bound_gamma(y: f64, n: usize) -> LabResult<f64> {
    let g1 = gamma_complex(Complex64::new(0.0, y))?;
    let g2 = gamma_complex(Complex64::new(1.0, -y))?;
    Ok(2.0 / (sphere_area(n) * (g1 * g2).norm()))
}

fn log_m1(y: f64, n: usize) -> f64 {
    // log(2 sinh(πy)) = πy + log(1 - e^{-2πy}), accurate at both ends
    let a = PI * y.abs();
    a + (-(-2.0 * a).exp_m1()).ln() - (sphere_area(n) * PI).ln()
}

/// Sampling of `|ξ|` for the `M_0` sup: step `step` on `(0, max]`, plus the
/// `ξ → 0` limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiGrid {
    pub max: f64,
    pub step: f64,
    /// Local maxima refined by golden-section search.
    pub refine: usize,
}

impl Default for XiGrid {
    fn default() -> Self {
        Self { max: 12.0, step: 0.05, refine: 3 }
    }
}

impl XiGrid {
    pub fn validate(&self) -> LabResult<()> {
        if !(self.step > 0.0 && self.max >= 2.0 && self.max / self.step <= 1e5) {
            return Err(LabError::Parameter(format!("bad ξ grid: max {} step {}", self.max, self.step)));
        }
        Ok(())
    }

    fn points(&self) -> Vec<f64> {
        let m = (self.max / self.step).round() as usize;
        (1..=m).map(|k| k as f64 * self.step).collect()
    }
}

/// `M_0` data at one `y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct M0Sample {
    pub y: f64,
    /// `sup |K_{-(n-1)/2+iy}|` over the grid and the `ξ → 0` limit.
    pub grid_sup: f64,
    pub xi_at_sup: f64,
    /// Bound on `|K|` beyond the grid from the large-argument Bessel envelope.
    pub tail_bound: f64,
    /// `max(grid_sup, tail_bound)`: the empirical `M_0(y)`.
    pub bound: f64,
    /// `sup |a^{1/2-iy} J_{n+1/2-iy}(a)|`, grid and envelope.
    pub boundary_sup: f64,
    /// `sup |∫_a^∞ t^{-1/2-iy} J_{n+1/2-iy}(t) dt|`, grid, limit and envelope.
    pub integral_sup: f64,
}

fn lower_line(n: usize, y: f64) -> Complex64 {
    Complex64::new(-(n as f64 - 1.0) / 2.0, y)
}

/// Envelope of `|J_ν(a)| √a` for large `a`: `√(2/π) cosh(π Im ν/2) (1 + |4ν² - 1|/(4a))`.
fn envelope(nu: Complex64, a: f64) -> f64 {
    (2.0 / PI).sqrt() * (PI * nu.im / 2.0).cosh() * (1.0 + (nu * nu * 4.0 - 1.0).norm() / (4.0 * a))
}

/// Empirical `M_0(y) = sup_ξ |K_{-(n-1)/2+iy}(ξ)|` for `|y| <=` [`VERIFIED_IMAG_ORDER`].
pub fn m0_bound(y: f64, n: usize, grid: &XiGrid, cfg: &QuadConfig<f64>) -> LabResult<M0Sample> {
    grid.validate()?;
    if y.abs() > VERIFIED_IMAG_ORDER {
        return Err(LabError::Domain(format!("|y| = {} beyond the verified range {VERIFIED_IMAG_ORDER}", y.abs())));
    }
    let z = lower_line(n, y);
    let eval = |xi: f64| kz_parts(z, n, xi, cfg);
    let nu = Complex64::new(n as f64 + 0.5, -y);

    // ξ → 0: boundary vanishes, the integral tends to its Weber–Schafheitlin value
    let pref0 = eval(grid.step)?.prefactor;
    let ws = weber_schafheitlin(Complex64::new(-0.5, -y), nu, 1.0)?;
    let mut grid_sup = (pref0 * ws * n as f64).norm();
    let mut xi_at_sup = 0.0;
    let mut integral_sup = ws.norm();
    let mut boundary_sup: f64 = 0.0;

    let xs = grid.points();
    let mut vals = Vec::with_capacity(xs.len());
    for &xi in &xs {
        let parts = eval(xi)?;
        let v = parts.value(n).norm();
        integral_sup = integral_sup.max(parts.integral.norm());
        boundary_sup = boundary_sup.max(parts.boundary.norm());
        vals.push(v);
    }
    // golden-section refinement of the largest interior local maxima
    let mut peaks: Vec<usize> = (1..xs.len().saturating_sub(1)).filter(|&i| vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1]).collect();
    peaks.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    for (i, &v) in vals.iter().enumerate() {
        if v > grid_sup {
            grid_sup = v;
            xi_at_sup = xs[i];
        }
    }
    for &i in peaks.iter().take(grid.refine) {
        let (xi, v) = golden_section_max(|x| eval(x).map(|p| p.value(n).norm()).unwrap_or(0.0), xs[i - 1], xs[i + 1], 24);
        if v > grid_sup {
            grid_sup = v;
            xi_at_sup = xi;
        }
    }

    let a = 2.0 * PI * grid.max;
    let env = envelope(nu, a);
    let boundary_tail = env;
    let integral_tail = env * (2.0 + Complex64::new(1.0, y).norm()) / a;
    let tail_bound = pref0.norm() * (n as f64 * integral_tail + boundary_tail);
    Ok(M0Sample {
        y,
        grid_sup,
        xi_at_sup,
        tail_bound,
        bound: grid_sup.max(tail_bound),
        boundary_sup: boundary_sup.max(boundary_tail),
        integral_sup: integral_sup.max(integral_tail),
    })
}

/// Which endpoint line a bound belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    AnalyticM1,
    EmpiricalM0,
}

/// `log M ≈ log_intercept + rate · y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub log_intercept: f64,
    pub rate: f64,
}

/// Sampled endpoint bound `y ↦ M(y)` on `y >= 0` (both bounds are even in `y`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointBound {
    pub kind: BoundKind,
    pub n: usize,
    /// `(y, M(y))`, increasing in `y`.
    pub values: Vec<(f64, f64)>,
    /// Fit over the upper half of the sampled range; extrapolates `M_0` beyond it.
    pub growth_fit: GrowthFit,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<M0Sample>,
}

fn fit_growth(values: &[(f64, f64)]) -> LabResult<GrowthFit> {
    let (ys, vs): (Vec<f64>, Vec<f64>) = values.iter().copied().unzip();
    let f = exponential_rate_fit(&ys, &vs)?;
    Ok(GrowthFit { log_intercept: f.intercept, rate: f.slope })
}

impl EndpointBound {
    /// `M_1` sampled on the nonzero `ys`; the fit uses `y >= 1`.
    pub fn analytic_m1(n: usize, ys: &[f64]) -> LabResult<Self> {
        let values: Vec<(f64, f64)> = ys.iter().filter(|y| **y != 0.0).map(|&y| (y.abs(), m1_bound(y, n))).collect();
        let window: Vec<(f64, f64)> = values.iter().copied().filter(|&(y, _)| y >= 1.0).collect();
        Ok(Self { kind: BoundKind::AnalyticM1, n, values, growth_fit: fit_growth(&window)?, samples: Vec::new() })
    }

    /// `M_0` from an increasing `y` grid starting at 0.
    pub fn empirical_m0(n: usize, ys: &[f64], grid: &XiGrid, cfg: &QuadConfig<f64>) -> LabResult<Self> {
        if ys.len() < 4 || ys[0] != 0.0 || ys.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(LabError::Parameter("y grid must start at 0, increase and have >= 4 points".into()));
        }
        let samples = ys.iter().map(|&y| m0_bound(y, n, grid, cfg)).collect::<LabResult<Vec<_>>>()?;
        Self::from_samples(n, samples)
    }

    pub fn from_samples(n: usize, samples: Vec<M0Sample>) -> LabResult<Self> {
        let values: Vec<(f64, f64)> = samples.iter().map(|s| (s.y, s.bound)).collect();
        let top = values.last().map(|v| v.0).unwrap_or(0.0);
        let window: Vec<(f64, f64)> = values.iter().copied().filter(|&(y, _)| y >= top / 2.0).collect();
        Ok(Self { kind: BoundKind::EmpiricalM0, n, values, growth_fit: fit_growth(&window)?, samples })
    }

    /// Exponential rate of the samples with `lo <= y <= hi`.
    pub fn rate_on(&self, lo: f64, hi: f64) -> LabResult<GrowthFit> {
        let window: Vec<(f64, f64)> = self.values.iter().copied().filter(|&(y, _)| y >= lo && y <= hi).collect();
        fit_growth(&window)
    }

    /// `log M(y)`: exact for `M_1`; piecewise linear in the samples and
    /// extrapolated by the growth fit for `M_0`.
    pub fn log_at(&self, y: f64) -> f64 {
        let y = y.abs();
        match self.kind {
            BoundKind::AnalyticM1 => log_m1(y, self.n),
            BoundKind::EmpiricalM0 => {
                let v = &self.values;
                let last = v[v.len() - 1];
                if y >= last.0 {
                    return last.1.ln() + self.growth_fit.rate * (y - last.0);
                }
                let k = v.partition_point(|&(yy, _)| yy <= y).max(1) - 1;
                let (y0, m0) = v[k];
                let (y1, m1) = v[k + 1];
                let w = (y - y0) / (y1 - y0);
                (1.0 - w) * m0.ln() + w * m1.ln()
            }
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self.kind {
            BoundKind::AnalyticM1 => Vec::new(),
            BoundKind::EmpiricalM0 => self.values.iter().map(|v| v.0).collect(),
        }
    }
}

/// Interpolated constant with its quadrature bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteinConstant {
    pub n: usize,
    pub s: f64,
    pub theta: f64,
    /// `log M_s`.
    pub log_value: f64,
    pub value: f64,
    /// Truncation point `Y*` of the `y` integral.
    pub truncation: f64,
    /// Bound on the discarded `∫_{Y*}^∞` (in the exponent).
    pub truncation_bound: f64,
}

/// Finest panel of the graded mesh at `y = 0`.
const GRADED_LEVELS: i32 = 60;

fn stein_at(n: usize, s: f64, m0: &EndpointBound, m1: &EndpointBound, cfg: &QuadConfig<f64>) -> LabResult<SteinConstant> {
    if m0.kind != BoundKind::EmpiricalM0 || m1.kind != BoundKind::AnalyticM1 || m0.n != n || m1.n != n {
        return Err(LabError::Parameter("need an M0 and an M1 bound for the same dimension".into()));
    }
    if !(s > 0.0 && s <= 1.0) {
        return Err(LabError::Parameter(format!("s = {s} outside (0, 1]")));
    }
    let phi = 2.0 * PI * s / (n as f64 + 1.0);
    let (sin_phi, cos_phi) = phi.sin_cos();
    let g = |y: f64| {
        let c = (PI * y).cosh();
        m0.log_at(y) / (c + cos_phi) + m1.log_at(y) / (c - cos_phi)
    };

    // truncation: |log M_0| + |log M_1| <= α + β y and cosh πy ∓ cos φ >= e^{πy}/2.03 for y >= 2
    let alpha = m0.growth_fit.log_intercept.abs() + m0.values[0].1.ln().abs() + (sphere_area(n) * PI).ln().abs();
    let beta = m0.growth_fit.rate.abs() + PI;
    let tail = |yy: f64| 2.03 * (-PI * yy).exp() * (alpha + beta * yy + beta / PI) / PI;
    let mut y_star = m0.values.last().map(|v| v.0).unwrap_or(2.0).max(2.0);
    while tail(y_star) > cfg.abs_tol / 10.0 {
        y_star += 0.5;
    }

    let mut cuts: Vec<f64> = (0..=GRADED_LEVELS).rev().map(|k| 2f64.powi(-k)).collect();
    cuts.extend(m0.breakpoints().into_iter().chain(m1.breakpoints()).filter(|&y| y > 1.0 && y < y_star));
    cuts.push(y_star);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    // [0, δ]: log M_1 ≈ log(2y/σ), log M_0 ≈ log M_0(0)
    let delta = cuts[0];
    let sigma = sphere_area(n);
    let mut total = delta * ((2.0 * delta / sigma).ln() - 1.0) / (1.0 - cos_phi) + m0.log_at(0.0) * delta / (1.0 + cos_phi);
    let piece_cfg = QuadConfig { abs_tol: cfg.abs_tol / cuts.len() as f64, ..*cfg };
    for w in cuts.windows(2) {
        let v: f64 = integrate_finite(g, w[0], w[1], SingularitySpec::none(), &piece_cfg)?;
        total += v;
    }
    let log_value = sin_phi * total;
    Ok(SteinConstant {
        n,
        s,
        theta: 1.0 - 2.0 * s / (n as f64 + 1.0),
        log_value,
        value: log_value.exp(),
        truncation: y_star,
        truncation_bound: sin_phi * tail(y_star),
    })
}

/// `M_s` from the endpoint bounds.
pub fn stein_constant(
    p: &FracParam,
    m0: &EndpointBound,
    m1: &EndpointBound,
    cfg: &QuadConfig<f64>,
) -> LabResult<SteinConstant> {
    p.validate()?;
    stein_at(p.n, p.s, m0, m1, cfg)
}

/// Values of `M_s` along `s_seq → 1` and the value of the same formula at `s = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteinLimit {
    pub n: usize,
    pub sequence: Vec<SteinConstant>,
    /// `M(n)`: the integral at `s = 1`, where both denominators stay positive.
    pub limit: f64,
    /// Successive differences shrink and the last value is within them of `limit`.
    pub cauchy: bool,
}

pub fn stein_limit(
    n: usize,
    s_seq: &[f64],
    m0: &EndpointBound,
    m1: &EndpointBound,
    cfg: &QuadConfig<f64>,
) -> LabResult<SteinLimit> {
    if s_seq.len() < 3 || s_seq.windows(2).any(|w| !(w[1] > w[0])) || s_seq.iter().any(|&s| !(s > 0.0 && s < 1.0)) {
        return Err(LabError::Parameter("need >= 3 increasing s in (0, 1)".into()));
    }
    let sequence = s_seq.iter().map(|&s| stein_at(n, s, m0, m1, cfg)).collect::<LabResult<Vec<_>>>()?;
    let limit = stein_at(n, 1.0, m0, m1, cfg)?.value;
    let diffs: Vec<f64> = sequence.windows(2).map(|w| (w[1].value - w[0].value).abs()).collect();
    let shrinking = diffs.windows(2).all(|d| d[1] <= d[0]);
    let last = sequence.last().expect("non-empty").value;
    let close = (last - limit).abs() <= *diffs.last().expect("non-empty") + 1e-12 * limit;
    Ok(SteinLimit { n, sequence, limit, cauchy: shrinking && close && limit.is_finite() })
}

/// Explains what a failed budget check means.
pub const BUDGET_CAVEAT: &str = "the budget uses this artifact's constructive M_s (empirical M0, sharp M1); \
a failure indicates a defect in these endpoint bounds, not a counterexample to the theorem, whose constants are unspecified";

/// Gaussian dilation factors used by the budget check.
pub const BUDGET_DILATIONS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];

/// Restriction quotients at `q = 2`, `p = 2(n+1)/(n+1+2s)` for the Gaussian dilates.
pub fn budget_quotients(p: &FracParam, cfg: &QuadConfig<f64>) -> LabResult<Vec<(f64, f64)>> {
    let ep = ExponentPair::new(tomas_stein_p(p.n, p.s), 2.0)?;
    BUDGET_DILATIONS
        .iter()
        .map(|&l| Ok((l, restriction_quotient(p, &ep, &gaussian_dilate(l), cfg)?)))
        .collect()
}

/// `y` samples for the empirical `M_0`: step 1/2 on `[0, 8]`.
pub fn default_y_grid() -> Vec<f64> {
    (0..=16).map(|k| 0.5 * k as f64).collect()
}

/// Empirical `M_0` and analytic `M_1` on the default grids.
pub fn default_bounds(n: usize, cfg: &QuadConfig<f64>) -> LabResult<(EndpointBound, EndpointBound)> {
    let ys = default_y_grid();
    Ok((EndpointBound::empirical_m0(n, &ys, &XiGrid::default(), cfg)?, EndpointBound::analytic_m1(n, &ys)?))
}

/// `max_λ quotient(f_λ) <= √M_s` with the default endpoint bounds.
pub fn tomas_stein_budget(p: &FracParam, cfg: &QuadConfig<f64>) -> LabResult<VerificationRecord> {
    p.validate()?;
    let (m0, m1) = default_bounds(p.n, cfg)?;
    tomas_stein_budget_with(p, &m0, &m1, cfg)
}

/// [`tomas_stein_budget`] with precomputed endpoint bounds; the note carries
/// the margin `√M_s - max quotient` and [`BUDGET_CAVEAT`].
pub fn tomas_stein_budget_with(
    p: &FracParam,
    m0: &EndpointBound,
    m1: &EndpointBound,
    cfg: &QuadConfig<f64>,
) -> LabResult<VerificationRecord> {
    let ms = stein_constant(p, m0, m1, cfg)?;
    let worst = budget_quotients(p, cfg)?.into_iter().map(|(_, q)| q).fold(0.0, f64::max);
    let budget = ms.value.sqrt();
    Ok(VerificationRecord::upper_bound(
        format!("tomas_stein_budget[n={},s={}]", p.n, p.s),
        anchors::TOMAS_STEIN_BUDGET,
        worst,
        budget,
    )
    .with_note(format!("margin {:.6e}; {BUDGET_CAVEAT}", budget - worst)))
}

/// `max_y (1/|Γ(n+1-iy)|) / ((3/2) e^{π|y|/2})` checked against 1.
pub fn inverse_gamma_check(n: usize, ys: &[f64]) -> LabResult<VerificationRecord> {
    let mut worst: f64 = 0.0;
    for &y in ys {
        let g = gamma_complex(Complex64::new(n as f64 + 1.0, -y))?.norm();
        worst = worst.max(1.0 / (g * 1.5 * (PI * y.abs() / 2.0).exp()));
    }
    Ok(VerificationRecord::upper_bound(format!("inverse_gamma[n={n}]"), anchors::INVERSE_GAMMA, worst, 1.0))
}

/// Smallest `C` with `1/|Γ((n+1)/2 - iy)| <= C e^{π|y|/2}` on `ys`.
pub fn inverse_gamma_half_constant(n: usize, ys: &[f64]) -> LabResult<f64> {
    let mut c: f64 = 0.0;
    for &y in ys {
        let g = gamma_complex(Complex64::new((n as f64 + 1.0) / 2.0, -y))?.norm();
        c = c.max((-PI * y.abs() / 2.0).exp() / g);
    }
    Ok(c)
}

/// Smallest constants with `boundary <= C e^{π|y|/2}` and
/// `|integral| <= C (1+|y|) e^{π|y|/2}` over the sampled `M_0` data.
pub fn cap_and_tail_constants(m0: &EndpointBound) -> (f64, f64) {
    m0.samples.iter().fold((0.0f64, 0.0f64), |(cb, ci), s| {
        let e = (PI * s.y.abs() / 2.0).exp();
        (cb.max(s.boundary_sup / e), ci.max(s.integral_sup / ((1.0 + s.y.abs()) * e)))
    })
}
