use std::fmt;
use std::sync::Arc;

use super::config::{QuadConfig, QuadValue, SingularitySpec};
use super::finite::{integrate_finite, integrate_to_infinity, integrate_weighted, TailDecay};
use crate::{LabError, LabResult, Real};

/// Large-`r` behaviour of a radial profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass<T> {
    /// Faster than every power.
    Schwartz,
    /// `|f(r)| <= C r^{-k}`; negative `k` admits growth.
    Poly(T),
    /// `f = 0` for `r > R`.
    Compact(T),
}

/// `f(r) = |r - radius|^exponent · regular(r)` near one edge of the support.
#[derive(Clone)]
pub struct SingularPart<T> {
    pub radius: T,
    pub exponent: T,
    regular: Arc<dyn Fn(T) -> T + Send + Sync>,
}

impl<T: Real> SingularPart<T> {
    pub fn regular(&self, r: T) -> T {
        (self.regular)(r)
    }
}

/// Radial function `f(|x|)` on `R^n` with the metadata the transforms need.
///
/// `f` vanishes on `[0, inner_radius)`. A declared singular part sits at the
/// inner radius or at the compact-support radius.
#[derive(Clone)]
pub struct RadialProfile<T> {
    eval: Arc<dyn Fn(T) -> T + Send + Sync>,
    pub decay: DecayClass<T>,
    pub inner_radius: T,
    pub singular: Option<SingularPart<T>>,
}

impl<T: Real> fmt::Debug for RadialProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("decay", &self.decay)
            .field("inner_radius", &self.inner_radius)
            .field("singular", &self.singular.as_ref().map(|s| (s.radius, s.exponent)))
            .finish()
    }
}

impl<T: Real> RadialProfile<T> {
    pub fn new(eval: impl Fn(T) -> T + Send + Sync + 'static, decay: DecayClass<T>) -> Self {
        Self { eval: Arc::new(eval), decay, inner_radius: T::zero(), singular: None }
    }

    pub fn with_inner_radius(mut self, radius: T) -> Self {
        self.inner_radius = radius;
        self
    }

    /// Declares `f(r) = |r - radius|^exponent · regular(r)` near `radius`.
    pub fn with_singularity(
        mut self,
        radius: T,
        exponent: T,
        regular: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        self.singular = Some(SingularPart { radius, exponent, regular: Arc::new(regular) });
        self
    }

    /// `f(r)`, zero outside the support.
    pub fn eval(&self, r: T) -> T {
        if r < self.inner_radius {
            return T::zero();
        }
        if let DecayClass::Compact(big_r) = self.decay {
            if r > big_r {
                return T::zero();
            }
        }
        (self.eval)(r)
    }

    pub fn support_end(&self) -> Option<T> {
        match self.decay {
            DecayClass::Compact(r) => Some(r),
            _ => None,
        }
    }

    pub fn validate(&self) -> LabResult<()> {
        if !(self.inner_radius >= T::zero()) {
            return Err(LabError::Domain("inner radius must be >= 0".into()));
        }
        match self.decay {
            DecayClass::Compact(r) if !(r > self.inner_radius) => {
                return Err(LabError::Domain(format!("support radius {r} must exceed the inner radius")));
            }
            DecayClass::Poly(k) if !k.is_finite() => {
                return Err(LabError::Domain(format!("decay exponent {k} must be finite")));
            }
            _ => {}
        }
        if let Some(sing) = &self.singular {
            SingularitySpec::left(sing.exponent).validate()?;
            let at_inner = sing.radius == self.inner_radius;
            let at_outer = self.support_end() == Some(sing.radius);
            if !at_inner && !at_outer {
                return Err(LabError::Domain(format!(
                    "singularity at r = {} must sit on an edge of the support",
                    sing.radius
                )));
            }
        }
        Ok(())
    }

    /// Spot check that samples agree with the declared decay class.
    pub fn check_decay(&self) -> LabResult<()> {
        let base = self.inner_radius.max(T::one());
        let samples: Vec<T> = [4.0, 16.0, 64.0, 256.0].iter().map(|&m| base * T::lit(m)).collect();
        let bad = |what: &str| Err(LabError::Domain(format!("profile samples contradict declared {what}")));
        match self.decay {
            // `eval` zeroes everything beyond R
            DecayClass::Compact(_) => {}
            DecayClass::Poly(k) => {
                let w: Vec<T> = samples.iter().map(|&r| (self.eval)(r).abs() * r.powf(k)).collect();
                let first = w[0].max(T::min_positive_value());
                if w.iter().any(|&v| !v.is_finite() || v > first * T::lit(1e3)) {
                    return bad("polynomial decay");
                }
            }
            DecayClass::Schwartz => {
                let w: Vec<T> = samples.iter().map(|&r| (self.eval)(r).abs() * r.powi(8)).collect();
                let first = w[0].max(T::min_positive_value());
                if w.iter().any(|&v| !v.is_finite() || v > first * T::lit(1e3)) {
                    return bad("rapid decay");
                }
            }
        }
        Ok(())
    }

    /// `∫_0^∞ f(r) w(r) dr` for a weight with `|w(r)| <= C r^{growth}`.
    pub fn integrate_against<V, W>(&self, w: W, growth: T, cfg: &QuadConfig<T>) -> LabResult<V>
    where
        V: QuadValue<T>,
        W: Fn(T) -> V,
    {
        self.validate()?;
        #[cfg(debug_assertions)]
        self.check_decay()?;
        let start = self.inner_radius;
        let w = &w;
        let f = |r: T| w(r) * self.eval(r);
        let sing = self.singular.as_ref();
        let sing_at = |x: T| sing.filter(|s| s.radius == x);
        let reg = |s: &SingularPart<T>| {
            let s = s.clone();
            move |r: T| w(r) * s.regular(r)
        };
        match self.decay {
            DecayClass::Compact(big_r) => {
                let left = sing_at(start);
                let right = sing_at(big_r);
                match (left, right) {
                    (None, None) => integrate_finite(f, start, big_r, SingularitySpec::none(), cfg),
                    (Some(s), None) => integrate_weighted(reg(s), start, big_r, SingularitySpec::left(s.exponent), cfg),
                    (None, Some(s)) => integrate_weighted(reg(s), start, big_r, SingularitySpec::right(s.exponent), cfg),
                    (Some(_), Some(_)) => Err(LabError::Domain("one singular edge per profile".into())),
                }
            }
            DecayClass::Poly(_) | DecayClass::Schwartz => {
                let split = if start > T::zero() { start * T::lit(2.0) } else { T::one() };
                let head = match sing_at(start) {
                    Some(s) => integrate_weighted(reg(s), start, split, SingularitySpec::left(s.exponent), cfg)?,
                    None => integrate_finite(f, start, split, SingularitySpec::none(), cfg)?,
                };
                let decay = match self.decay {
                    DecayClass::Poly(k) => {
                        let net = k - growth;
                        if !(net > T::one()) {
                            return Err(LabError::Domain(format!(
                                "integrand decays like r^-{net}, which is not integrable"
                            )));
                        }
                        TailDecay::Algebraic(net)
                    }
                    _ => TailDecay::Rapid,
                };
                let tail = integrate_to_infinity(f, split, decay, cfg)?;
                Ok(head + tail)
            }
        }
    }
}

/// `exp(-π r²)`, whose transform in every dimension is itself.
pub fn gaussian<T: Real>() -> RadialProfile<T> {
    RadialProfile::new(|r: T| (-T::PI() * r * r).exp(), DecayClass::Schwartz)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadConfig<f64> {
        QuadConfig::default()
    }

    #[test]
    fn gaussian_moments() {
        let g = gaussian::<f64>();
        // ∫_0^∞ e^{-πr²} dr = 1/2, ∫ r e^{-πr²} = 1/(2π)
        let m0: f64 = g.integrate_against(|_| 1.0, 0.0, &cfg()).unwrap();
        let m1: f64 = g.integrate_against(|r| r, 1.0, &cfg()).unwrap();
        assert!((m0 - 0.5).abs() < 1e-11);
        assert!((m1 - 0.5 / std::f64::consts::PI).abs() < 1e-11);
    }

    #[test]
    fn singular_inner_edge() {
        // (r² - 1)^{-1/2} r^{-3} on (1, ∞): ∫ = π/4 (t = 1/r: ∫_0^1 t²/sqrt(1-t²) dt).
        let p = RadialProfile::new(|r: f64| (r * r - 1.0).powf(-0.5) * r.powi(-3), DecayClass::Poly(4.0))
            .with_inner_radius(1.0)
            .with_singularity(1.0, -0.5, |r: f64| (r + 1.0).powf(-0.5) * r.powi(-3));
        let v: f64 = p.integrate_against(|_| 1.0, 0.0, &cfg()).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-10, "{v}");
    }

    #[test]
    fn singular_outer_edge() {
        // (1 - r²)^{-1/2} on [0, 1] integrates to π/2.
        let p = RadialProfile::new(|r: f64| (1.0 - r * r).powf(-0.5), DecayClass::Compact(1.0))
            .with_singularity(1.0, -0.5, |r: f64| (1.0 + r).powf(-0.5));
        let v: f64 = p.integrate_against(|_| 1.0, 0.0, &cfg()).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
    }

    #[test]
    fn insufficient_decay_is_rejected() {
        let p = RadialProfile::new(|r: f64| (1.0 + r).powi(-2), DecayClass::Poly(2.0));
        assert!(matches!(p.integrate_against(|r: f64| r, 1.0, &cfg()), Err(LabError::Domain(_))));
    }

    #[test]
    fn misplaced_singularity_and_false_metadata() {
        let p = RadialProfile::new(|_r: f64| 1.0, DecayClass::Compact(2.0)).with_singularity(1.0, -0.5, |_| 1.0);
        assert!(p.validate().is_err());
        let lying = RadialProfile::new(|r: f64| (1.0 + r).powi(-1), DecayClass::Poly(3.0));
        assert!(lying.check_decay().is_err());
        let honest = RadialProfile::new(|r: f64| (1.0 + r).powi(-3), DecayClass::Poly(3.0));
        assert!(honest.check_decay().is_ok());
    }
}
