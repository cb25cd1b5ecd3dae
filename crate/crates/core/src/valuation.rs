//! Additive valuations with a `+inf` element.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Signed;
use serde::{Serialize, Serializer};

/// An exact valuation: a finite value, or `+inf` for the zero element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Val<T> {
    Finite(T),
    Infinite,
}

impl<T> Val<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Val::Infinite)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }
}

impl<T: Ord> PartialOrd for Val<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for Val<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Infinite, Val::Infinite) => Ordering::Equal,
            (Val::Infinite, Val::Finite(_)) => Ordering::Greater,
            (Val::Finite(_), Val::Infinite) => Ordering::Less,
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
        }
    }
}

impl<T: Add<Output = T>> Add for Val<T> {
    type Output = Val<T>;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinite,
        }
    }
}

/// Shifting by a finite amount; `+inf` absorbs.
impl<T: Add<Output = T>> Add<T> for Val<T> {
    type Output = Val<T>;

    fn add(self, rhs: T) -> Self {
        match self {
            Val::Finite(a) => Val::Finite(a + rhs),
            Val::Infinite => Val::Infinite,
        }
    }
}

impl<T: Sub<Output = T>> Sub<T> for Val<T> {
    type Output = Val<T>;

    fn sub(self, rhs: T) -> Self {
        match self {
            Val::Finite(a) => Val::Finite(a - rhs),
            Val::Infinite => Val::Infinite,
        }
    }
}

/// Exact rational valuation; the valuation type used throughout the crate.
pub type RationalVal = Val<BigRational>;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RationalVal {
    pub fn int(n: i64) -> Self {
        Val::Finite(rat_int(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Val::Finite(rat(num, den))
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Val::Finite(v) if v.is_negative())
    }

    pub fn is_nonneg(&self) -> bool {
        !self.is_negative()
    }
}

impl<T: Neg<Output = T>> Val<T> {
    /// Negation of a finite value; `None` for `+inf`.
    pub fn neg_finite(self) -> Option<T> {
        match self {
            Val::Finite(a) => Some(-a),
            Val::Infinite => None,
        }
    }
}

impl<T: fmt::Display + Clone + num_integer::Integer> fmt::Display for Val<Ratio<T>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Infinite => write!(f, "inf"),
            Val::Finite(v) if v.denom().is_one() => write!(f, "{}", v.numer()),
            Val::Finite(v) => write!(f, "{}/{}", v.numer(), v.denom()),
        }
    }
}

impl Serialize for RationalVal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Formats an exact rational as `a` or `a/b`.
pub fn fmt_rat(r: &BigRational) -> String {
    Val::Finite(r.clone()).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_last() {
        let a = RationalVal::frac(1, 3);
        let b = RationalVal::int(-2);
        assert!(b < a);
        assert!(a < RationalVal::Infinite);
        assert_eq!(std::cmp::min(a.clone(), RationalVal::Infinite), a);
    }

    #[test]
    fn arithmetic_and_display() {
        let v = RationalVal::frac(1, 4) + RationalVal::frac(3, 4);
        assert_eq!(v, RationalVal::int(1));
        assert_eq!((RationalVal::Infinite + rat(1, 2)).to_string(), "inf");
        assert_eq!(RationalVal::frac(-6, 4).to_string(), "-3/2");
        assert_eq!(RationalVal::int(5).to_string(), "5");
    }
}
