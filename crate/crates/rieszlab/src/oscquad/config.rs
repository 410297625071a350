use std::ops::{Add, Mul, Sub};

use crate::{Complex, LabError, LabResult, Real};

/// Tolerances and budgets for every quadrature in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    /// Maximum number of subintervals held by one adaptive integration.
    pub max_subdiv: usize,
    /// Zero-to-zero blocks summed before the tail acceleration is applied.
    pub tail_zero_blocks: usize,
    /// Number of averaging passes over the block partial sums.
    pub accel_order: usize,
}

impl<T: Real> Default for QuadConfig<T> {
    /// `abs_tol = 1e-10`, `rel_tol = 1e-9`, 24 tail blocks, 6 averaging
    /// passes; tolerances are raised to a few hundred ulps for `f32`.
    fn default() -> Self {
        let eps = T::epsilon();
        Self {
            abs_tol: T::lit(1e-10).max(eps * T::lit(1e3)),
            rel_tol: T::lit(1e-9).max(eps * T::lit(1e2)),
            max_subdiv: 1000,
            tail_zero_blocks: 24,
            accel_order: 6,
        }
    }
}

impl<T: Real> QuadConfig<T> {
    pub fn validate(&self) -> LabResult<()> {
        if !(self.abs_tol > T::zero()) {
            return Err(LabError::Parameter("abs_tol must be > 0".into()));
        }
        if !(self.rel_tol > T::zero()) {
            return Err(LabError::Parameter("rel_tol must be > 0".into()));
        }
        if self.max_subdiv < 8 {
            return Err(LabError::Parameter("max_subdiv must be >= 8".into()));
        }
        if self.tail_zero_blocks < 8 {
            return Err(LabError::Parameter("tail_zero_blocks must be >= 8".into()));
        }
        if self.accel_order < 2 {
            return Err(LabError::Parameter("accel_order must be >= 2".into()));
        }
        Ok(())
    }

    /// Same budgets with both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }

    pub(crate) fn tolerance(&self, value_size: T) -> T {
        self.abs_tol.max(self.rel_tol * value_size)
    }
}

/// Which endpoint of a finite interval carries an algebraic singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Left,
    Right,
    None,
}

/// Algebraic endpoint behaviour `|x - e|^exponent`, `exponent ∈ (-1, 0]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularitySpec<T> {
    pub location: Endpoint,
    pub exponent: T,
}

impl<T: Real> SingularitySpec<T> {
    pub fn none() -> Self {
        Self { location: Endpoint::None, exponent: T::zero() }
    }

    pub fn left(exponent: T) -> Self {
        Self { location: Endpoint::Left, exponent }
    }

    pub fn right(exponent: T) -> Self {
        Self { location: Endpoint::Right, exponent }
    }

    pub fn validate(&self) -> LabResult<()> {
        if self.location != Endpoint::None && !(self.exponent > -T::one() && self.exponent <= T::zero()) {
            return Err(LabError::Domain(format!(
                "singular exponent {} outside (-1, 0]",
                self.exponent
            )));
        }
        Ok(())
    }

    /// Power `k` of the substitution `distance = L u^k`; the transformed
    /// weight `u^{k(1+α)-1}` then has exponent at least 1.
    pub(crate) fn substitution_power(&self) -> usize {
        if self.location == Endpoint::None || self.exponent == T::zero() {
            return 1;
        }
        let k = (T::lit(2.0) / (T::one() + self.exponent)).ceil();
        k.to_usize().unwrap_or(1).max(2)
    }
}

/// Values an integrand may return: real scalars or complex numbers.
pub trait QuadValue<T>:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self> + Send + Sync + 'static
{
    fn zero() -> Self;
    fn magnitude(&self) -> T;
    fn real(&self) -> T;
}

impl<T: Real> QuadValue<T> for T {
    fn zero() -> Self {
        T::zero()
    }
    fn magnitude(&self) -> T {
        self.abs()
    }
    fn real(&self) -> T {
        *self
    }
}

impl<T: Real> QuadValue<T> for Complex<T> {
    fn zero() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn magnitude(&self) -> T {
        self.norm()
    }
    fn real(&self) -> T {
        self.re
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T, V> {
    pub value: V,
    pub error: T,
    pub evaluations: usize,
}
