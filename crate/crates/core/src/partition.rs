//! Constrained multi-index enumeration and (shifted) multinomial
//! coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{LtvError, Result};

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n! / prod(parts!)`; `parts` must sum to `n`.
pub fn multinomial(n: u64, parts: impl IntoIterator<Item = u64>) -> BigInt {
    let mut out = factorial(n);
    let mut total = 0;
    for r in parts {
        total += r;
        out /= factorial(r);
    }
    debug_assert_eq!(total, n, "multinomial parts must sum to n");
    out
}

/// Integer partitions of `w` into parts `1..=max_part`, as `(part, count)`
/// lists with parts increasing.
pub fn partitions(w: u32, max_part: u32) -> Vec<Vec<(u32, u32)>> {
    fn go(rest: u32, part: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if part == 0 {
            return;
        }
        // parts are chosen from the largest down, then stored increasing
        for count in (0..=rest / part).rev() {
            if count > 0 {
                cur.push((part, count));
            }
            go(rest - count * part, part - 1, cur, out);
            if count > 0 {
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(w, max_part.min(w), &mut Vec::new(), &mut out);
    for p in &mut out {
        p.reverse();
    }
    out
}

/// A finitely supported multi-index `(k, i) -> r_{k,i} >= 1` with `i <= k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiIndex2 {
    entries: BTreeMap<(u32, u32), u64>,
}

impl MultiIndex2 {
    pub fn from_entries(entries: impl IntoIterator<Item = ((u32, u32), u64)>) -> Result<Self> {
        let mut out = Self::default();
        for ((k, i), r) in entries {
            if i > k {
                return Err(LtvError::Precondition(format!("index ({k},{i}) has i > k")));
            }
            if r > 0 {
                *out.entries.entry((k, i)).or_insert(0) += r;
            }
        }
        Ok(out)
    }

    pub fn get(&self, k: u32, i: u32) -> u64 {
        self.entries.get(&(k, i)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.entries.iter().map(|(ki, r)| (*ki, *r))
    }

    /// `|r| = sum r_{k,i}`.
    pub fn size(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `sum k r_{k,i}`.
    pub fn wk(&self) -> u64 {
        self.entries.iter().map(|((k, _), r)| *k as u64 * r).sum()
    }

    /// `sum i r_{k,i}`.
    pub fn wi(&self) -> u64 {
        self.entries.iter().map(|((_, i), r)| *i as u64 * r).sum()
    }

    pub fn r00(&self) -> u64 {
        self.get(0, 0)
    }

    /// `|r|! / prod r_{k,i}!`.
    pub fn multinomial(&self) -> BigInt {
        multinomial(self.size(), self.entries.values().copied())
    }
}

/// `(n + q^t)! / ((r_{0,0} + q^t)! prod_{k>0} r_{k,i}!)` for `|r| = n`.
///
/// This is the multinomial of `r` with `r_{0,0}` raised by `q^t`, so it is
/// an integer for every `t`; the congruence with the plain multinomial
/// needs `n < q^t` (see [`binom_congruence_check`]).
pub fn shifted_multinomial(n: u64, t: u32, r: &MultiIndex2, q: u64) -> Result<BigInt> {
    let qt = q_pow(q, t)?;
    if r.size() != n {
        return Err(LtvError::Precondition(format!(
            "shifted multinomial needs |r| = n (|r| = {}, n = {n})",
            r.size()
        )));
    }
    Ok(shifted_by(r, qt))
}

fn q_pow(q: u64, t: u32) -> Result<u64> {
    q.checked_pow(t).ok_or(LtvError::BoundExceeded {
        what: "q^t",
        value: t as u64,
        bound: 64,
    })
}

/// The multinomial of `r` with `r_{0,0}` raised by `shift`.
pub fn shifted_by(r: &MultiIndex2, shift: u64) -> BigInt {
    let n = r.size() + shift;
    let parts = r
        .entries()
        .filter(|(ki, _)| *ki != (0, 0))
        .map(|(_, v)| v)
        .chain(std::iter::once(r.r00() + shift));
    multinomial(n, parts)
}

/// Whether `p` divides the shifted minus the plain multinomial.
pub fn binom_congruence_check(n: u64, t: u32, r: &MultiIndex2, p: u64, q: u64) -> Result<bool> {
    if n >= q_pow(q, t)? {
        return Err(LtvError::Precondition(format!("congruence needs n < q^t (n = {n}, q = {q}, t = {t})")));
    }
    let diff = shifted_multinomial(n, t, r, q)? - r.multinomial();
    Ok(diff.is_multiple_of(&BigInt::from(p)))
}

/// Every `MultiIndex2` with `|r| = n` supported on `k <= max_k`.
pub fn all_multi_indices(n: u64, max_k: u32) -> Vec<MultiIndex2> {
    let slots: Vec<(u32, u32)> = (0..=max_k).flat_map(|k| (0..=k).map(move |i| (k, i))).collect();
    let mut out = Vec::new();
    fn go(slots: &[(u32, u32)], rest: u64, cur: &mut Vec<((u32, u32), u64)>, out: &mut Vec<MultiIndex2>) {
        match slots.split_first() {
            None => {
                if rest == 0 {
                    out.push(MultiIndex2::from_entries(cur.iter().copied()).expect("slots satisfy i <= k"));
                }
            }
            Some((slot, tail)) => {
                for r in 0..=rest {
                    cur.push((*slot, r));
                    go(tail, rest - r, cur, out);
                    cur.pop();
                }
            }
        }
    }
    go(&slots, n, &mut Vec::new(), &mut out);
    out
}

pub fn divisible(n: &BigInt, p: u64) -> bool {
    n.is_zero() || n.is_multiple_of(&BigInt::from(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(entries: &[((u32, u32), u64)]) -> MultiIndex2 {
        MultiIndex2::from_entries(entries.iter().copied()).unwrap()
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|w| partitions(w, w).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(partitions(4, 2).len(), 3);
        for p in partitions(7, 7) {
            assert_eq!(p.iter().map(|(k, c)| k * c).sum::<u32>(), 7);
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(4, [2, 1, 1]), BigInt::from(12));
        assert_eq!(multinomial(0, []), BigInt::from(1));
        assert_eq!(mi(&[((0, 0), 1), ((1, 1), 2)]).multinomial(), BigInt::from(3));
    }

    #[test]
    fn shifted_examples() {
        let r = mi(&[((0, 0), 1)]);
        assert_eq!(shifted_multinomial(1, 1, &r, 2).unwrap(), BigInt::from(1));
        let r = mi(&[((0, 0), 1), ((1, 1), 1)]);
        assert_eq!(shifted_multinomial(2, 1, &r, 2).unwrap(), BigInt::from(4));
        let r = mi(&[((0, 0), 5)]);
        assert_eq!(shifted_multinomial(5, 1, &r, 7).unwrap(), BigInt::from(1));
        assert!(shifted_multinomial(2, 1, &r, 2).is_err());
        let r = mi(&[((0, 0), 2)]);
        assert!(binom_congruence_check(2, 1, &r, 2, 2).is_err());
    }

    #[test]
    fn invalid_index_rejected() {
        assert!(MultiIndex2::from_entries([((1, 2), 1)]).is_err());
    }

    #[test]
    fn congruence_exhaustive() {
        for (q, max_n) in [(2u64, 8u64), (3, 6)] {
            for n in 0..=max_n {
                let t = (1..).find(|t| q.pow(*t) > n).unwrap();
                for r in all_multi_indices(n, 2) {
                    for tt in [t, t + 1] {
                        assert!(binom_congruence_check(n, tt, &r, q, q).unwrap(), "{r:?} t={tt}");
                    }
                }
            }
        }
    }

    #[test]
    fn weights() {
        let r = mi(&[((0, 0), 2), ((2, 1), 3), ((3, 3), 1)]);
        assert_eq!((r.size(), r.wk(), r.wi(), r.r00()), (6, 9, 6, 2));
    }
}
