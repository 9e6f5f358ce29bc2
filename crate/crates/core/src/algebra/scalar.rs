use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

/// Exact integer coefficient ring used throughout the crate.
///
/// Implemented for every signed machine integer and for `num_bigint::BigInt`.
/// Machine integers are used with checked arithmetic: overflow is a hard
/// failure, never a silent wrap.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + From<i8>
    + Send
    + Sync
    + 'static
{
    fn add_c(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("coefficient overflow in addition")
    }

    fn sub_c(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("coefficient overflow in subtraction")
    }

    fn mul_c(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("coefficient overflow in multiplication")
    }

    /// `Some(self / rhs)` when `rhs` divides `self` exactly.
    fn exact_div_c(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Integer
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + From<i8>
        + Send
        + Sync
        + 'static
{
}

/// Rings with an exact (partial) division, as needed by fraction-free elimination.
pub trait ExactDiv: Sized {
    /// Returns the quotient when `rhs` divides `self` exactly, `None` otherwise.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
}

macro_rules! exact_div_int {
    ($($t:ty),*) => {$(
        impl ExactDiv for $t {
            fn exact_div(&self, rhs: &Self) -> Option<Self> {
                self.exact_div_c(rhs)
            }
        }
    )*};
}

exact_div_int!(i8, i16, i32, i64, i128, isize);

impl ExactDiv for num_bigint::BigInt {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.exact_div_c(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn exact_division() {
        assert_eq!(12i64.exact_div(&4), Some(3));
        assert_eq!(12i64.exact_div(&5), None);
        assert_eq!(12i64.exact_div(&0), None);
        assert_eq!(BigInt::from(-9).exact_div(&BigInt::from(3)), Some(BigInt::from(-3)));
    }

    #[test]
    #[should_panic(expected = "coefficient overflow")]
    fn overflow_is_fatal() {
        i64::MAX.add_c(&1);
    }
}
