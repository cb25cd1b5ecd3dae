//! Sparse multivariate polynomials with integer coefficients, used for the
//! fully symbolic identities of the quaternion layer.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::ring::{IntegerRing, Ring};

/// Exponent vector; trailing zeros are trimmed so that the representation
/// does not depend on the number of variables in scope.
type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly<I> {
    terms: BTreeMap<Monomial, I>,
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(out)
}

impl<I: IntegerRing> MPoly<I> {
    /// The variable with index `i`.
    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Self::term(I::one(), m)
    }

    pub fn constant(c: I) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn term(c: I, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(mono), c);
        }
        Self { terms }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &I)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    fn add_term(&mut self, mono: Monomial, c: &I) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_insert_with(I::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    /// Substitutes `var_i -> value_i` for the listed variables.
    pub fn substitute(&self, assignments: &[(usize, MPoly<I>)]) -> Self {
        let mut out = Self::zero();
        for (mono, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, e) in mono.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let factor = match assignments.iter().find(|(v, _)| *v == i) {
                    Some((_, val)) => val.pow_u(*e as u64),
                    None => {
                        let mut m = vec![0; i + 1];
                        m[i] = *e;
                        Self::term(I::one(), m)
                    }
                };
                t = t.mul_ref(&factor);
            }
            out += &t;
        }
        out
    }
}

impl<I: IntegerRing> Zero for MPoly<I> {
    fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<I: IntegerRing> One for MPoly<I> {
    fn one() -> Self {
        Self::constant(I::one())
    }
}

impl<I: IntegerRing> AddAssign<&MPoly<I>> for MPoly<I> {
    fn add_assign(&mut self, rhs: &MPoly<I>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl<I: IntegerRing> SubAssign<&MPoly<I>> for MPoly<I> {
    fn sub_assign(&mut self, rhs: &MPoly<I>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &-c.clone());
        }
    }
}

impl<I: IntegerRing> Add for MPoly<I> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<I: IntegerRing> Sub for MPoly<I> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<I: IntegerRing> Neg for MPoly<I> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<I: IntegerRing> Mul<&MPoly<I>> for &MPoly<I> {
    type Output = MPoly<I>;

    fn mul(self, rhs: &MPoly<I>) -> MPoly<I> {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), &ca.mul_ref(cb));
            }
        }
        out
    }
}

impl<I: IntegerRing> Mul<&MPoly<I>> for MPoly<I> {
    type Output = MPoly<I>;

    fn mul(self, rhs: &MPoly<I>) -> MPoly<I> {
        &self * rhs
    }
}

impl<I: IntegerRing> Mul for MPoly<I> {
    type Output = MPoly<I>;

    fn mul(self, rhs: MPoly<I>) -> MPoly<I> {
        &self * &rhs
    }
}

impl<I: IntegerRing> Ring for MPoly<I> {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_int(n: i64) -> Self {
        Self::constant(I::from_int(n))
    }
}

impl<I: IntegerRing> fmt::Debug for MPoly<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| format!("v{i}^{e}"))
                    .collect();
                format!("{c}*{}", vars.join("*"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = MPoly<BigInt>;

    #[test]
    fn binomial_square() {
        let (x, y) = (P::var(0), P::var(3));
        let s = (x.clone() + y.clone()).pow_u(2);
        let expected = x.clone() * &x + P::from_int(2) * &x * &y + y.clone() * &y;
        assert_eq!(s, expected);
        assert!((s - expected).is_zero());
    }

    #[test]
    fn substitution() {
        let (x, y) = (P::var(0), P::var(1));
        let f = x.clone() * &x - y.clone();
        let g = f.substitute(&[(1, x.clone() * &x)]);
        assert!(g.is_zero());
    }
}
