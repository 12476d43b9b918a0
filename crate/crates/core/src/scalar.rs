//! Number types that class-function values and interval sums can live in.
//!
//! Exact rationals are the default everywhere; floating point is available
//! for quick exploratory sums.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
{
    /// Equality up to representation error; exact for rationals.
    fn approx_eq(&self, other: &Self) -> bool;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn approx_eq(&self, other: &Self) -> bool {
                let scale = self.abs().max(other.abs()).max(1.0);
                (self - other).abs() <= scale * 1e3 * <$t>::EPSILON
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }
        }
    };
}

macro_rules! ratio_scalar {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            fn approx_eq(&self, other: &Self) -> bool {
                self == other
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                Ratio::new(num as $t, den as $t)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);
ratio_scalar!(i64);
ratio_scalar!(i128);
