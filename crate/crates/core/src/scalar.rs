use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the symbolic and numeric machinery is generic over.
///
/// The tolerances are per-precision defaults: coefficients below
/// [`Scalar::drop_tol`] are treated as cancellation dust, and exponents
/// closer than [`Scalar::exponent_tol`] are considered equal.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    fn drop_tol() -> Self;
    fn exponent_tol() -> Self;
    /// Distance from an integer below which an exponent snaps to it.
    fn snap_tol() -> Self;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }
}

impl Scalar for f64 {
    fn drop_tol() -> Self {
        1e-12
    }
    fn exponent_tol() -> Self {
        1e-9
    }
    fn snap_tol() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn drop_tol() -> Self {
        1e-5
    }
    fn exponent_tol() -> Self {
        1e-4
    }
    fn snap_tol() -> Self {
        1e-5
    }
}

/// Snaps `v` to the nearest integer when it is within [`Scalar::snap_tol`].
pub fn snap<T: Scalar>(v: T) -> T {
    let r = v.round();
    if (v - r).abs() <= T::snap_tol() {
        r
    } else {
        v
    }
}

/// True when `v` is exactly an integer (after snapping).
pub fn is_integer<T: Scalar>(v: T) -> bool {
    v.is_finite() && v == v.round()
}
