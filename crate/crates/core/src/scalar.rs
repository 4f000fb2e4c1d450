//! Scalar and coefficient-ring abstractions.
//!
//! [`Scalar`] is the coordinate type of a [`Gaussian`](crate::Gaussian):
//! a signed number type from `num-traits`. Integral coordinates
//! ([`IntScalar`]) give `Z[i]`, rational coordinates ([`FieldScalar`])
//! give the field `Q(i)`.
//!
//! [`Ring`] and [`Field`] describe polynomial coefficients.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

/// Coordinate type of a Gaussian number.
pub trait Scalar: Num + Signed + FromPrimitive + Clone + PartialOrd + Debug + Display + Send + Sync {}

impl<T> Scalar for T where T: Num + Signed + FromPrimitive + Clone + PartialOrd + Debug + Display + Send + Sync {}

/// Integral coordinates: `Gaussian<T>` is then a Euclidean domain.
pub trait IntScalar: Scalar + Integer {}

impl<T: Scalar + Integer> IntScalar for T {}

/// Coordinates in which division is exact.
pub trait FieldScalar: Scalar {}

impl<T> FieldScalar for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Display + Send + Sync,
    Ratio<T>: Scalar,
{
}

/// Commutative ring with unity, as needed by [`Poly`](crate::Poly).
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_int(v: i64) -> Self;
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

macro_rules! prim_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn from_int(v: i64) -> Self {
                <$t as FromPrimitive>::from_i64(v).expect("integer literal out of range")
            }
        }
    )*};
}

prim_ring!(i32, i64, i128);

impl Ring for num_bigint::BigInt {
    fn from_int(v: i64) -> Self {
        num_bigint::BigInt::from(v)
    }
}

impl<T> Ring for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + FromPrimitive + Send + Sync,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer literal out of range"))
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + FromPrimitive + Send + Sync,
{
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}
