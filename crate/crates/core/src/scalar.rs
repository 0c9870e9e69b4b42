use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the estimator and test statistic are generic over.
///
/// Implemented for `f32` and `f64`. Membership checks on the simplex use a
/// per-type tolerance since normalized data is only exact up to rounding.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Default + Debug + Display + Sum + Send + Sync + 'static
{
    /// Absolute tolerance for "sums to one" and "lies in the unit cube" checks.
    const SIMPLEX_TOL: f64;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn tol() -> Self {
        Self::lit(Self::SIMPLEX_TOL)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    const SIMPLEX_TOL: f64 = 1e-5;
}

impl Real for f64 {
    const SIMPLEX_TOL: f64 = 1e-9;
}

pub(crate) fn l1_norm<T: Real>(x: &[T]) -> T {
    x.iter().map(|v| v.abs()).sum()
}
