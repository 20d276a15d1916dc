//! Scalar abstraction shared by the exponent arithmetic and the geometry.
//!
//! Everything numeric in the crate is generic over [`Scalar`]. Exactness of
//! the geometric predicates holds only for exact fields such as
//! [`BigRational`](num_rational::BigRational); `f64` instantiations are
//! convenient for exponent reports and plotting but carry rounding.

use std::fmt::Debug;

use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An ordered field: `f32`, `f64`, `Ratio<i32>`, `Ratio<i64>` or
/// `BigRational`.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync {
    fn from_usize_exact(v: usize) -> Self {
        Self::from_usize(v).expect("scalar cannot represent an integer")
    }

    fn from_u64_exact(v: u64) -> Self {
        Self::from_u64(v).expect("scalar cannot represent an integer")
    }

    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("scalar cannot represent an integer")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Sign as -1, 0 or +1.
    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Exact big-rational view, for types whose linear algebra can run
    /// over big integers after clearing denominators.
    fn as_big_rational(&self) -> Option<&BigRational> {
        None
    }

    /// Inverse of [`Scalar::as_big_rational`].
    fn from_big_rational(_v: BigRational) -> Option<Self> {
        None
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for Ratio<i32> {}
impl Scalar for Ratio<i64> {}

impl Scalar for BigRational {
    fn as_big_rational(&self) -> Option<&BigRational> {
        Some(self)
    }

    fn from_big_rational(v: BigRational) -> Option<Self> {
        Some(v)
    }
}
