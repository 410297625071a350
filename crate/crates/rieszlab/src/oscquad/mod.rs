//! Adaptive Gauss–Kronrod quadrature, endpoint-singular rules, Bessel-tail
//! integrals with block acceleration, and radial Fourier transforms.

mod bochner;
mod config;
mod finite;
mod profile;
mod tail;

pub use bochner::{bochner_radial_ft, hankel_integral, radial_mass};
pub use config::{Endpoint, Estimate, QuadConfig, QuadValue, SingularitySpec};
pub use finite::{
    adaptive, integrate_finite, integrate_finite_estimate, integrate_to_infinity, integrate_weighted,
    integrate_weighted_estimate, TailDecay,
};
pub use profile::{gaussian, DecayClass, RadialProfile, SingularPart};
pub use tail::{
    accelerated_tail, bessel_head, bessel_tail, bessel_tail_estimate, bessel_zero_estimate, OscIntegralSpec, ZeroGrid,
    VERIFIED_IMAG_ORDER,
};
pub(crate) use tail::bessel_over_power;
