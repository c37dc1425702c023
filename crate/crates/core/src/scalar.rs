//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating point type usable as the coordinate field (f32 or f64).
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Default relative clustering tolerance for eigenvalues.
    const EIG_CLUSTER: f64;
    /// Default slack for cone membership.
    const CONE_SLACK: f64;
    /// Default tolerance for verification checks.
    const CHECK_TOL: f64;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Scalar for f64 {
    const EIG_CLUSTER: f64 = 1e-8;
    const CONE_SLACK: f64 = 1e-9;
    const CHECK_TOL: f64 = 1e-9;
}

impl Scalar for f32 {
    const EIG_CLUSTER: f64 = 1e-4;
    const CONE_SLACK: f64 = 1e-4;
    const CHECK_TOL: f64 = 1e-4;
}
