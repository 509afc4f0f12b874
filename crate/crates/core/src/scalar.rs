//! Scalar abstraction shared by every numeric routine in the crate.

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::fmt::{Debug, Display};

/// Real floating point type the state algebra is generic over.
///
/// The tolerance hooks scale the physical validation thresholds to the
/// precision of the underlying type: `f64` uses the tight values that the
/// analysis guarantees (1e-12 on trace and hermiticity, -1e-10 on
/// eigenvalues), `f32` uses proportionally looser ones.
pub trait Real:
    RealField
    + Copy
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Tolerance for trace, hermiticity, unitarity and normalization checks.
    fn state_tol() -> Self;
    /// Most negative eigenvalue still accepted as positive semidefinite.
    fn psd_tol() -> Self;
    /// Width of the band below zero in which eigenvalues are treated as 0 by entropies.
    fn clamp_tol() -> Self;

    /// Converts an `f64` literal. Panics only for types that cannot represent finite f64s.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn state_tol() -> Self {
        1e-12
    }
    fn psd_tol() -> Self {
        -1e-10
    }
    fn clamp_tol() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn state_tol() -> Self {
        1e-5
    }
    fn psd_tol() -> Self {
        -1e-5
    }
    fn clamp_tol() -> Self {
        1e-6
    }
}
