//! Numerical laboratory for the Riesz mean kernels `A_r^(s)`, their
//! Bessel-integral Fourier transforms, the Knapp necessity experiment and the
//! Stein interpolation constants.
//!
//! The special-function kernel ([`specfun`]) and the quadrature engine
//! ([`oscquad`]) are generic over the floating-point type through [`Real`].
//! The laboratory modules built on top of them work in `f64`, the only
//! precision in which their verification tolerances are meaningful.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod fit;
pub mod fouriertransforms;
pub mod interpolation_constants;
pub mod oscquad;
pub mod quadrule;
pub mod record;
pub mod restriction_lab;
pub mod rieszkernel;
pub mod specfun;

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};

pub use error::{LabError, LabResult};
pub use record::{Value, VerificationRecord};

/// Floating-point scalar accepted by the generic numerical core.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal; exact for `f64`, rounded for `f32`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count or index.
    #[inline]
    fn from_count(k: usize) -> Self {
        Self::from_usize(k).expect("count representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a generic scalar.
pub type Complex<T> = num_complex::Complex<T>;

/// Double-precision complex scalar used by the laboratory modules.
pub type Complex64 = num_complex::Complex<f64>;
/// Single-precision complex scalar.
pub type Complex32 = num_complex::Complex<f32>;

/// Series settings in double precision.
pub type SeriesConfig64 = specfun::SeriesConfig<f64>;
/// Quadrature settings in double precision.
pub type QuadConfig64 = oscquad::QuadConfig<f64>;
/// Quadrature settings in single precision.
pub type QuadConfig32 = oscquad::QuadConfig<f32>;
/// Bessel-tail integral description in double precision.
pub type OscIntegralSpec64 = oscquad::OscIntegralSpec<f64>;

/// Surface area `σ_{n-1}` of the unit sphere in `R^n`.
pub fn sphere_area(n: usize) -> f64 {
    let half = n as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(half)
        / specfun::gamma_real(half).expect("n/2 is not a gamma pole")
}
