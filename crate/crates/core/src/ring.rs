//! The commutative-ring abstraction that the polynomial, series and
//! quaternion layers are generic over.
//!
//! Everything in this crate is exact, so the scalar types are integers,
//! Laurent polynomials in the uniformizer, or polynomials built on top of
//! those. There is no floating-point instance.

use std::fmt;
use std::ops::{AddAssign, Mul, Neg, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A commutative ring with exact arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// `self * rhs` without consuming either operand.
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs
    }

    /// The image of an integer under the unique ring map from Z.
    fn from_int(n: i64) -> Self {
        let mut acc = Self::zero();
        let one = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc += &one;
        }
        if n < 0 {
            -acc
        } else {
            acc
        }
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Ring for BigInt {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
}

macro_rules! prim_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }

            fn from_int(n: i64) -> Self {
                n as $t
            }
        }
    )*};
}

prim_ring!(i64, i128);

/// Integer types usable as coefficients of [`crate::Laurent`]: exact,
/// signed, and able to report their p-adic valuation.
pub trait IntegerRing: Ring + Ord + num_integer::Integer + num_traits::Signed + fmt::Display {
    fn from_bigint(n: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl IntegerRing for BigInt {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        Some(n.clone())
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

impl IntegerRing for i64 {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        num_traits::ToPrimitive::to_i64(n)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntegerRing for i128 {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        num_traits::ToPrimitive::to_i128(n)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

/// p-adic valuation of a nonzero integer. Returns `None` for zero.
pub fn vp_int<I: IntegerRing>(n: &I, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = I::from_int(p as i64);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return Some(v);
        }
        n = quot;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_and_from_int() {
        assert_eq!(BigInt::from(3).pow_u(5), BigInt::from(243));
        assert_eq!(<i64 as Ring>::from_int(-7), -7);
        assert_eq!(7i128.pow_u(0), 1);
    }

    #[test]
    fn p_adic_valuation_of_integers() {
        assert_eq!(vp_int(&BigInt::from(250), 5), Some(3));
        assert_eq!(vp_int(&-12i64, 2), Some(2));
        assert_eq!(vp_int(&7i64, 3), Some(0));
        assert_eq!(vp_int(&BigInt::zero(), 3), None);
    }
}
