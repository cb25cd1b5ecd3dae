//! Laurent polynomials in the uniformizer `pi` with integer coefficients.
//!
//! Arithmetic is formal: `pi` is an indeterminate and nothing is ever
//! rounded. Valuations and reductions are taken after mapping into the
//! local field `K = Q_q(p^{1/e})`, where `pi^e = p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{LtvError, Result};
use crate::params::FieldParams;
use crate::ring::{vp_int, IntegerRing, Ring};
use crate::valuation::{rat_int, RationalVal};

/// `sum_j a_j pi^j` with finitely many nonzero integer `a_j`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<I> {
    terms: BTreeMap<i64, I>,
}

impl<I: IntegerRing> Laurent<I> {
    pub fn monomial(coeff: I, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// `pi^k`.
    pub fn pi_pow(k: i64) -> Self {
        Self::monomial(I::one(), k)
    }

    pub fn from_integer(n: I) -> Self {
        Self::monomial(n, 0)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, I)>) -> Self {
        let mut out = Self::zero();
        for (exp, c) in terms {
            out.add_term(exp, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &I)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> I {
        self.terms.get(&exp).cloned().unwrap_or_else(I::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The single term `(coeff, exp)` if this is a monomial.
    pub fn as_monomial(&self) -> Option<(&I, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    /// The integer this scalar equals, if it has no `pi`-dependence.
    pub fn as_integer(&self) -> Option<I> {
        match self.terms.len() {
            0 => Some(I::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, exp: i64, c: &I) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(I::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplication by `pi^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, n: &I) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.mul_ref(n)))
                .collect(),
        }
    }

    /// The canonical representative of the image in `K`, where every
    /// coefficient is prime to `p` (factors of `p` are traded for `pi^e`).
    pub fn normalize(&self, fp: &FieldParams) -> Self {
        let p = I::from_int(fp.p() as i64);
        let e = fp.e() as i64;
        let mut work = self.terms.clone();
        let mut out = BTreeMap::new();
        while let Some((exp, mut c)) = work.pop_first() {
            if c.is_zero() {
                continue;
            }
            let mut v = 0;
            loop {
                let (quot, rem) = c.div_rem(&p);
                if !rem.is_zero() {
                    break;
                }
                c = quot;
                v += 1;
            }
            if v == 0 {
                out.insert(exp, c);
            } else {
                let slot = work.entry(exp + e * v).or_insert_with(I::zero);
                *slot += &c;
            }
        }
        Self { terms: out }
    }

    /// Exact `pi`-adic valuation of the image in `K` (`+inf` for zero).
    pub fn scalar_val(&self, fp: &FieldParams) -> RationalVal {
        match self.normalize(fp).min_exp() {
            Some(v) => RationalVal::Finite(rat_int(v)),
            None => RationalVal::Infinite,
        }
    }

    /// `min_j (j + e * v_p(a_j))` over the stored terms. A lower bound for
    /// [`Self::scalar_val`]; equal unless terms cancel in `K`.
    pub fn term_val_bound(&self, fp: &FieldParams) -> RationalVal {
        let e = fp.e() as i64;
        self.terms
            .iter()
            .map(|(exp, c)| exp + e * vp_int(c, fp.p()).unwrap_or(0) as i64)
            .min()
            .map_or(RationalVal::Infinite, |v| RationalVal::Finite(rat_int(v)))
    }

    /// Residue class in `F_p` of a `pi`-integral scalar.
    pub fn reduce_mod_pi(&self, fp: &FieldParams) -> Result<u64> {
        let n = self.normalize(fp);
        if n.min_exp().is_some_and(|v| v < 0) {
            return Err(LtvError::NotIntegral(format!("{self}")));
        }
        let c0 = n.coeff(0).to_bigint();
        let r = c0.mod_floor(&BigInt::from(fp.p()));
        Ok(r.to_u64().expect("residue fits in u64"))
    }

    /// Converts the coefficient type, e.g. from `i64` to `BigInt`.
    pub fn map_coeffs<J: IntegerRing>(&self, f: impl Fn(&I) -> J) -> Laurent<J> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }
}

impl<I: IntegerRing> Zero for Laurent<I> {
    fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<I: IntegerRing> One for Laurent<I> {
    fn one() -> Self {
        Self::pi_pow(0)
    }
}

impl<I: IntegerRing> AddAssign<&Laurent<I>> for Laurent<I> {
    fn add_assign(&mut self, rhs: &Laurent<I>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl<I: IntegerRing> SubAssign<&Laurent<I>> for Laurent<I> {
    fn sub_assign(&mut self, rhs: &Laurent<I>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c.clone());
        }
    }
}

impl<I: IntegerRing> Add for Laurent<I> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<I: IntegerRing> Sub for Laurent<I> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<I: IntegerRing> Neg for Laurent<I> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<I: IntegerRing> Mul<&Laurent<I>> for &Laurent<I> {
    type Output = Laurent<I>;

    fn mul(self, rhs: &Laurent<I>) -> Laurent<I> {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &ca.mul_ref(cb));
            }
        }
        out
    }
}

impl<I: IntegerRing> Mul<&Laurent<I>> for Laurent<I> {
    type Output = Laurent<I>;

    fn mul(self, rhs: &Laurent<I>) -> Laurent<I> {
        &self * rhs
    }
}

impl<I: IntegerRing> Mul for Laurent<I> {
    type Output = Laurent<I>;

    fn mul(self, rhs: Laurent<I>) -> Laurent<I> {
        &self * &rhs
    }
}

impl<I: IntegerRing> Ring for Laurent<I> {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_int(n: i64) -> Self {
        Self::from_integer(I::from_int(n))
    }
}

impl<I: IntegerRing> fmt::Display for Laurent<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exp, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*exp, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "pi")?,
                (1, false) => write!(f, "{mag}*pi")?,
                (k, true) => write!(f, "pi^{k}")?,
                (k, false) => write!(f, "{mag}*pi^{k}")?,
            }
        }
        Ok(())
    }
}

impl<I: IntegerRing> fmt::Debug for Laurent<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PiScalar;

    fn fp(p: u64) -> FieldParams {
        FieldParams::prime(p).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(PiScalar::zero().scalar_val(&fp(3)), RationalVal::Infinite);
        assert_eq!(PiScalar::pi_pow(-1).scalar_val(&fp(7)), RationalVal::int(-1));
        let s = PiScalar::monomial(big(5), -3);
        assert_eq!(s.scalar_val(&fp(5)), RationalVal::int(-2));
        assert_eq!(s.term_val_bound(&fp(5)), RationalVal::int(-2));
    }

    #[test]
    fn ramification_scales_integer_content() {
        let fp = FieldParams::new(5, 1, 3).unwrap();
        let s = PiScalar::monomial(big(25), -1);
        assert_eq!(s.scalar_val(&fp), RationalVal::int(5));
    }

    #[test]
    fn cancellation_in_the_field_is_seen() {
        // p - pi vanishes when pi = p.
        let s = PiScalar::from_integer(big(3)) - PiScalar::pi_pow(1);
        assert_eq!(s.scalar_val(&fp(3)), RationalVal::Infinite);
        assert_eq!(s.term_val_bound(&fp(3)), RationalVal::int(1));
        let t = PiScalar::from_integer(big(3)) + PiScalar::pi_pow(1);
        assert_eq!(t.scalar_val(&fp(3)), RationalVal::int(1));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(PiScalar::one().reduce_mod_pi(&fp(5)), Ok(1));
        assert_eq!(PiScalar::monomial(big(7), 1).reduce_mod_pi(&fp(5)), Ok(0));
        let s = PiScalar::from_integer(big(-1)) + PiScalar::pi_pow(2);
        assert_eq!(s.reduce_mod_pi(&fp(3)), Ok(2));
        // p / pi is a unit with residue 1 in the model pi = p.
        assert_eq!(PiScalar::monomial(big(3), -1).reduce_mod_pi(&fp(3)), Ok(1));
        assert!(PiScalar::pi_pow(-1).reduce_mod_pi(&fp(3)).is_err());
    }

    #[test]
    fn display() {
        let s = PiScalar::from_terms([(-1, big(-3)), (0, big(1)), (2, big(1))]);
        assert_eq!(s.to_string(), "-3*pi^-1 + 1 + pi^2");
    }

    #[test]
    fn small_integer_instance_agrees_with_bigint() {
        let a = Laurent::<i64>::from_terms([(0, 2), (1, -3)]);
        let b = Laurent::<i64>::from_terms([(-1, 5), (0, 1)]);
        let prod = (&a * &b).map_coeffs(|c| BigInt::from(*c));
        let big_prod = &a.map_coeffs(|c| BigInt::from(*c)) * &b.map_coeffs(|c| BigInt::from(*c));
        assert_eq!(prod, big_prod);
    }
}
