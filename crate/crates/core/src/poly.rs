//! Sparse univariate polynomials over any [`Ring`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::ring::Ring;

/// `sum_d c_d X^d`, storing only nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: BTreeMap<u32, C>,
}

impl<C: Ring> Poly<C> {
    pub fn monomial(c: C, deg: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        Self { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `X^d - 1`.
    pub fn xpow_minus_one(d: u32) -> Self {
        let mut p = Self::monomial(C::one(), d);
        p.add_term(0, &-C::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, C)>) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, &c);
        }
        p
    }

    /// Builds `sum_j c_j (X - 1)^j` from its coefficients in the shifted basis.
    pub fn from_shifted(shifted: impl IntoIterator<Item = (u32, C)>) -> Self {
        Self::from_terms(shifted).taylor_shift(&-C::one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &C)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, deg: u32) -> C {
        self.coeffs.get(&deg).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ref(&self, deg: u32) -> Option<&C> {
        self.coeffs.get(&deg)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn add_term(&mut self, deg: u32, c: &C) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(deg).or_insert_with(C::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(d, a)| (*d, a.mul_ref(c))))
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.coeffs.iter().map(|(d, c)| (*d, f(c))))
    }

    /// Multiplication by `X^k`.
    pub fn mul_xpow(&self, k: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    /// Substitutes `X -> X^k`.
    pub fn inflate(&self, k: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (d * k, c.clone())).collect(),
        }
    }

    /// Writes `self = X^r * P(X^k)` and returns `P`, or `None` if some
    /// exponent is not congruent to `r` mod `k` (or is below `r`).
    pub fn deflate(&self, r: u32, k: u32) -> Option<Self> {
        let mut coeffs = BTreeMap::new();
        for (d, c) in &self.coeffs {
            if *d < r || (d - r) % k != 0 {
                return None;
            }
            coeffs.insert((d - r) / k, c.clone());
        }
        Some(Self { coeffs })
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        let mut prev = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (d, c) in self.coeffs.iter().rev() {
            acc = acc.mul_ref(&x.pow_u((prev - d) as u64));
            acc += c;
            prev = *d;
        }
        acc.mul_ref(&x.pow_u(prev as u64))
    }

    /// The polynomial `P(Y) = self(Y + a)`, computed by repeated synthetic
    /// division (`O(deg^2)` ring operations).
    pub fn taylor_shift(&self, a: &C) -> Self {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let n = deg as usize;
        let mut dense: Vec<C> = (0..=deg).map(|d| self.coeff(d)).collect();
        for i in 0..n {
            for j in (i..n).rev() {
                let t = dense[j + 1].mul_ref(a);
                dense[j] += &t;
            }
        }
        Self::from_terms(dense.into_iter().enumerate().map(|(d, c)| (d as u32, c)))
    }

    /// Coefficients of `self` in powers of `(X - 1)`.
    pub fn shifted_at_one(&self) -> Self {
        self.taylor_shift(&C::one())
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(d, _)| **d > 0)
                .map(|(d, c)| (d - 1, c.mul_ref(&C::from_int(*d as i64)))),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_u(e as u64)
    }

    /// Divides by the monic `X - 1` exactly; `None` if the remainder is not zero.
    pub fn div_x_minus_one(&self) -> Option<Self> {
        let deg = self.degree()?;
        let mut quot = Self::zero();
        let mut carry = C::zero();
        for d in (1..=deg).rev() {
            carry += &self.coeff(d);
            quot.add_term(d - 1, &carry);
        }
        carry += &self.coeff(0);
        carry.is_zero().then_some(quot)
    }

    pub fn fmt_with(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result
    where
        C: fmt::Display,
    {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{var}")?,
                _ => write!(f, "({c})*{var}^{d}")?,
            }
        }
        Ok(())
    }

    /// Formats with a custom variable name.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a
    where
        C: fmt::Display,
    {
        struct D<'a, C>(&'a Poly<C>, &'a str);
        impl<C: Ring + fmt::Display> fmt::Display for D<'_, C> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(self.1, f)
            }
        }
        D(self, var)
    }
}

impl<C: Ring> Zero for Poly<C> {
    fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> One for Poly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Ring> AddAssign<&Poly<C>> for Poly<C> {
    fn add_assign(&mut self, rhs: &Poly<C>) {
        for (d, c) in &rhs.coeffs {
            self.add_term(*d, c);
        }
    }
}

impl<C: Ring> SubAssign<&Poly<C>> for Poly<C> {
    fn sub_assign(&mut self, rhs: &Poly<C>) {
        for (d, c) in &rhs.coeffs {
            self.add_term(*d, &-c.clone());
        }
    }
}

impl<C: Ring> Add for Poly<C> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<C: Ring> Sub for Poly<C> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|(d, c)| (d, -c)).collect(),
        }
    }
}

impl<C: Ring> Mul<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &rhs.coeffs {
                out.add_term(da + db, &ca.mul_ref(cb));
            }
        }
        out
    }
}

impl<C: Ring> Mul<&Poly<C>> for Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        &self * rhs
    }
}

impl<C: Ring> Mul for Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with("x", f)
    }
}

impl<C: Ring> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<i64>;

    #[test]
    fn taylor_shift_round_trip() {
        // (x - 1)^3 (x + 2)
        let p = P::xpow_minus_one(1).pow(3) * P::from_terms([(0, 2), (1, 1)]);
        let s = p.shifted_at_one();
        assert_eq!(s.low_degree(), Some(3));
        assert_eq!(s.taylor_shift(&-1), p);
    }

    #[test]
    fn deflate_and_inflate() {
        let p = P::from_terms([(1, 3), (4, -2), (7, 5)]);
        let d = p.deflate(1, 3).unwrap();
        assert_eq!(d, P::from_terms([(0, 3), (1, -2), (2, 5)]));
        assert_eq!(d.inflate(3).mul_xpow(1), p);
        assert!(p.deflate(0, 3).is_none());
    }

    #[test]
    fn division_by_x_minus_one() {
        let p = P::from_terms([(0, -1), (3, 1)]);
        assert_eq!(p.div_x_minus_one().unwrap(), P::from_terms([(0, 1), (1, 1), (2, 1)]));
        assert!(P::from_terms([(0, 1), (1, 1)]).div_x_minus_one().is_none());
    }

    #[test]
    fn eval_and_derivative() {
        let p = P::from_terms([(0, 1), (2, 3), (5, -1)]);
        assert_eq!(p.eval(&2), 1 + 12 - 32);
        assert_eq!(p.derivative(), P::from_terms([(1, 6), (4, -5)]));
    }
}
