//! Special functions: complex gamma, Pochhammer symbols, Bessel `J_ν` of
//! complex order, generalized hypergeometric series and the
//! Weber–Schafheitlin integral.

pub(crate) mod bessel;
mod gamma;
mod hyper;
mod identities;
mod zeta;

pub use bessel::{
    bessel_j, bessel_j_hankel, bessel_j_schlafli, bessel_j_series, switchover_radius,
    SERIES_MAX_X,
};
pub use gamma::{gamma_complex, gamma_real, rgamma_complex};
pub use hyper::{hyp_pfq, pochhammer, weber_schafheitlin, ENTIRE_SERIES_MAX_Z};
pub use identities::hyp1f2_bessel_identity_check;
pub use zeta::hurwitz_zeta;

use crate::{LabError, LabResult, Real};

/// Truncation and precision controls for power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig<T> {
    /// Stop once `|term| <= rel_tol * |partial sum|`.
    pub rel_tol: T,
    pub max_terms: usize,
    /// Largest tolerated ratio `max |term| / |result|` before the result is
    /// declared to have lost its precision.
    pub cancellation_guard: T,
}

impl<T: Real> Default for SeriesConfig<T> {
    /// `rel_tol` is the machine epsilon; the guard `ε^{-2/5}` keeps at least
    /// three fifths of the working digits.
    fn default() -> Self {
        Self {
            rel_tol: T::epsilon(),
            max_terms: 600,
            cancellation_guard: T::epsilon().powf(T::lit(-0.4)),
        }
    }
}

impl<T: Real> SeriesConfig<T> {
    pub fn validate(&self) -> LabResult<()> {
        if !(self.rel_tol > T::zero()) {
            return Err(LabError::Parameter("rel_tol must be > 0".into()));
        }
        if self.max_terms < 16 {
            return Err(LabError::Parameter("max_terms must be >= 16".into()));
        }
        if !(self.cancellation_guard >= T::one()) {
            return Err(LabError::Parameter("cancellation_guard must be >= 1".into()));
        }
        Ok(())
    }
}
