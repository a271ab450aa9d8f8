//! Numeric abstractions.
//!
//! Everything combinatorial (distances, matching costs, flow amounts) is an
//! integer and is computed exactly. The scalar parameter only controls how the
//! final rational quantities (transport masses, EMD, curvature) are presented:
//! exact rationals by default, floats for a lossy view.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{PrimInt, Signed, ToPrimitive};

/// Integer type usable as an edge cost in the assignment and flow solvers.
pub trait Cost: PrimInt + Signed + Debug + Default + std::iter::Sum + Send + Sync {}

impl<T> Cost for T where T: PrimInt + Signed + Debug + Default + std::iter::Sum + Send + Sync {}

/// Value type for masses, EMD and curvature.
pub trait Scalar: Clone + Debug + PartialOrd + num_traits::Num + Signed {
    /// Builds `num / den`. Returns `None` when the value does not fit the type.
    fn from_ratio(num: i128, den: i128) -> Option<Self>;

    /// Whether arithmetic in this type is exact.
    const EXACT: bool;
}

/// Scalars that carry an exact numerator/denominator pair.
pub trait ExactScalar: Scalar {
    fn to_big_ratio(&self) -> BigRational;
}

impl Scalar for BigRational {
    fn from_ratio(num: i128, den: i128) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
    const EXACT: bool = true;
}

impl ExactScalar for BigRational {
    fn to_big_ratio(&self) -> BigRational {
        self.clone()
    }
}

macro_rules! impl_ratio_scalar {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_ratio(num: i128, den: i128) -> Option<Self> {
                if den == 0 {
                    return None;
                }
                let g = num_integer::gcd(num, den);
                let (n, d) = (num / g, den / g);
                Some(Ratio::new(<$int>::try_from(n).ok()?, <$int>::try_from(d).ok()?))
            }
            const EXACT: bool = true;
        }

        impl ExactScalar for Ratio<$int> {
            fn to_big_ratio(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }
    };
}

impl_ratio_scalar!(i64);
impl_ratio_scalar!(i128);

impl Scalar for f64 {
    fn from_ratio(num: i128, den: i128) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(num.to_f64()? / den.to_f64()?)
    }
    const EXACT: bool = false;
}

impl Scalar for f32 {
    fn from_ratio(num: i128, den: i128) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some((num.to_f64()? / den.to_f64()?) as f32)
    }
    const EXACT: bool = false;
}

/// Numerator and denominator of an exact scalar as decimal strings, reduced.
pub fn ratio_parts<S: ExactScalar>(value: &S) -> (BigInt, BigInt) {
    let r = value.to_big_ratio();
    (r.numer().clone(), r.denom().clone())
}
