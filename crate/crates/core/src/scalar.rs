//! Scalar abstraction shared by the series and matrix code.
//!
//! Exact computations run over [`ExactRational`](crate::ExactRational); the
//! same routines accept `f32`/`f64` for quick floating-point estimates (the
//! only genuinely floating-point quantity is the arcsin series).

use std::fmt::Debug;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, Num, Signed, ToPrimitive};

/// A field-like number type usable by the generic routines of this crate.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;

    /// `Some(k)` when the value equals the integer `-k` for some `k >= 0`.
    ///
    /// Used to detect terminating upper parameters and poles among lower
    /// parameters of hypergeometric series.
    fn nonpositive_integer(&self) -> Option<u64>;
}

macro_rules! float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn nonpositive_integer(&self) -> Option<u64> {
                if *self <= 0.0 && Float::fract(*self) == 0.0 {
                    (-*self).to_u64()
                } else {
                    None
                }
            }
        }
    )*};
}

float_scalar!(f32, f64);

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + ToPrimitive + From<i64>,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(I::from(v))
    }

    fn nonpositive_integer(&self) -> Option<u64> {
        if self.is_integer() && !self.numer().is_positive() {
            self.numer().abs().to_u64()
        } else {
            None
        }
    }
}
