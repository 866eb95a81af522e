use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

/// Exact ring scalars usable as coefficients of algebra elements and
/// Laurent polynomials.
///
/// Arithmetic goes through the checked operations so fixed-width integers
/// report overflow instead of wrapping. Arbitrary precision types (`BigInt`,
/// `Ratio<BigInt>`) never overflow.
pub trait Coefficient:
    Clone + Debug + Display + PartialEq + Zero + One + CheckedAdd + CheckedSub + CheckedMul + Send + Sync
{
    fn from_i64(value: i64) -> Self;

    fn is_negative(&self) -> bool;
}

macro_rules! impl_coefficient_for_int {
    ($($t:ty),*) => {
        $(
            impl Coefficient for $t {
                fn from_i64(value: i64) -> Self {
                    <$t>::try_from(value).expect("coefficient out of range")
                }

                fn is_negative(&self) -> bool {
                    *self < 0
                }
            }
        )*
    };
}

impl_coefficient_for_int!(i32, i64, i128);

impl Coefficient for BigInt {
    fn from_i64(value: i64) -> Self {
        BigInt::from(value)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coefficient for Ratio<i64> {
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(value)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coefficient for Ratio<BigInt> {
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(BigInt::from(value))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_i64_round_trips() {
        assert_eq!(<i64 as Coefficient>::from_i64(-7), -7);
        assert_eq!(<i128 as Coefficient>::from_i64(3), 3);
        assert!(Coefficient::is_negative(&<i32 as Coefficient>::from_i64(-1)));
        assert_eq!(<BigInt as Coefficient>::from_i64(5), BigInt::from(5));
        assert!(!Coefficient::is_negative(&<Ratio<i64> as Coefficient>::from_i64(2)));
    }

    #[test]
    fn checked_ops_detect_overflow() {
        assert!(CheckedAdd::checked_add(&i64::MAX, &1).is_none());
        assert!(CheckedMul::checked_mul(&i32::MAX, &2).is_none());
    }
}
