//! Digit combinatorics for the repunits `T_r = 1 + q + ... + q^r`: the greedy
//! expansion `sigma`, the weights `P` and `R'`, and `R = R' o sigma`, which
//! lower-bounds vanishing orders at `x = 1`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{LtvError, Result};

/// A finitely supported sequence `l -> n_l` of non-negative integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct DigitSeq {
    digits: BTreeMap<u32, u64>,
}

impl DigitSeq {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut d = Self::zero();
        for (l, n) in pairs {
            d.set(l, n);
        }
        d
    }

    pub fn get(&self, l: u32) -> u64 {
        self.digits.get(&l).copied().unwrap_or(0)
    }

    pub fn set(&mut self, l: u32, n: u64) {
        if n == 0 {
            self.digits.remove(&l);
        } else {
            self.digits.insert(l, n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.digits.iter().map(|(l, n)| (*l, *n))
    }

    /// Whether this is in the image of [`sigma`]: all digits `<= q`, at most
    /// one digit equal to `q`, and only zeros below it.
    pub fn is_greedy_form(&self, q: u64) -> bool {
        let mut full = self.iter().filter(|(_, n)| *n == q);
        match (full.next(), full.next()) {
            (_, Some(_)) => false,
            (None, None) => self.iter().all(|(_, n)| n < q),
            (Some((l0, _)), None) => self.iter().all(|(l, n)| n <= q && (l >= l0 || n == 0)),
        }
    }
}

/// `T_r = (q^{r+1} - 1)/(q - 1)`.
pub fn t_sum(r: u32, q: u64) -> u64 {
    (0..=r).map(|l| q.pow(l)).sum()
}

/// Greedy expansion of `n` in the repunits; the zero sequence for `n <= 0`.
pub fn sigma(n: i64, q: u64) -> DigitSeq {
    let mut out = DigitSeq::zero();
    if n <= 0 {
        return out;
    }
    let n = n as u64;
    let mut top = 0;
    while t_sum(top + 1, q) <= n {
        top += 1;
    }
    let mut rest = n;
    for l in (0..=top).rev() {
        let t = t_sum(l, q);
        out.set(l, rest / t);
        rest %= t;
    }
    out
}

/// `P({n_l}) = sum_l n_l T_l`.
pub fn p_sum(d: &DigitSeq, q: u64) -> u64 {
    d.iter().map(|(l, n)| n * t_sum(l, q)).sum()
}

/// `R'({n_l}) = sum_l n_l q^l`.
pub fn r_prime(d: &DigitSeq, q: u64) -> u64 {
    d.iter().map(|(l, n)| n * q.pow(l)).sum()
}

/// `R(n) = R'(sigma(n))`; zero for `n <= 0`.
pub fn r_func(n: i64, q: u64) -> u64 {
    r_prime(&sigma(n, q), q)
}

/// Largest `n` accepted by [`r_oracle`].
pub const R_ORACLE_BOUND: u64 = 200_000;

/// Minimum of `R'` over all sequences with `P = n`, by dynamic programming
/// over unbounded repunit "coins". Does not use `sigma`.
pub fn r_oracle(n: u64, q: u64) -> Result<u64> {
    Ok(r_oracle_table(n, q)?[n as usize])
}

/// `r_oracle(m, q)` for every `0 <= m <= n`.
pub fn r_oracle_table(n: u64, q: u64) -> Result<Vec<u64>> {
    if n > R_ORACLE_BOUND {
        return Err(LtvError::BoundExceeded {
            what: "r_oracle n",
            value: n,
            bound: R_ORACLE_BOUND,
        });
    }
    let mut coins = Vec::new();
    let mut l = 0;
    while t_sum(l, q) <= n.max(1) {
        coins.push((t_sum(l, q), q.pow(l)));
        l += 1;
    }
    let mut best = vec![u64::MAX; n as usize + 1];
    best[0] = 0;
    for m in 1..=n as usize {
        for &(t, w) in &coins {
            if t as usize <= m && best[m - t as usize] != u64::MAX {
                best[m] = best[m].min(best[m - t as usize] + w);
            }
        }
    }
    Ok(best)
}

/// `R(n)` for `0 <= n <= max`, computed once.
#[derive(Debug, Clone)]
pub struct RTable {
    q: u64,
    values: Vec<u64>,
}

impl RTable {
    pub fn new(max: u64, q: u64) -> Self {
        Self {
            q,
            values: (0..=max as i64).map(|n| r_func(n, q)).collect(),
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn max(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    /// `R(n)`, with `R(n) = 0` for negative `n`.
    pub fn get(&self, n: i64) -> u64 {
        if n < 0 {
            0
        } else {
            self.values
                .get(n as usize)
                .copied()
                .unwrap_or_else(|| r_func(n, self.q))
        }
    }
}

/// A counterexample to one of the `R`-function properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RViolation {
    pub property: &'static str,
    pub args: Vec<i64>,
}

/// `R` is non-decreasing with increments at most 1, on `[-1, max]`.
pub fn check_monotone_steps(t: &RTable, max: i64) -> Option<RViolation> {
    (-1..max)
        .find(|&n| {
            let (a, b) = (t.get(n), t.get(n + 1));
            b < a || b - a > 1
        })
        .map(|n| RViolation {
            property: "R non-decreasing with unit steps",
            args: vec![n],
        })
}

/// `R(i + j) <= R(i) + R(j)` for `lo <= i, j <= hi`.
pub fn check_subadditive(t: &RTable, lo: i64, hi: i64) -> Option<RViolation> {
    for i in lo..=hi {
        let ri = t.get(i);
        for j in i..=hi {
            if t.get(i + j) > ri + t.get(j) {
                return Some(RViolation {
                    property: "R subadditive",
                    args: vec![i, j],
                });
            }
        }
    }
    None
}

/// `R(i + j) <= R(i) + R(j)` with `i` a multiple of `step` and `j` in
/// every residue class mod `step`, spaced `step^2` apart, for `i + j <= max`.
pub fn check_subadditive_grid(t: &RTable, max: i64, step: i64) -> Option<RViolation> {
    let step = step.max(1);
    for i in (0..=max).step_by(step as usize) {
        for off in 0..step {
            let mut j = off;
            while i + j <= max {
                if t.get(i + j) > t.get(i) + t.get(j) {
                    return Some(RViolation {
                        property: "R subadditive",
                        args: vec![i, j],
                    });
                }
                j += step * step;
            }
        }
    }
    None
}

/// `q R(n) >= R(q n + 1)` for `1 <= n <= max`.
pub fn check_q_scaling(t: &RTable, max: i64) -> Option<RViolation> {
    let q = t.q() as i64;
    (1..=max)
        .find(|&n| (q as u64) * t.get(n) < t.get(q * n + 1))
        .map(|n| RViolation {
            property: "q R(n) >= R(qn+1)",
            args: vec![n],
        })
}

/// `q R(n) >= (q - 1) n`, with equality exactly at `n = 0`, for `0 <= n <= max`.
pub fn check_linear_lower_bound(t: &RTable, max: i64) -> Option<RViolation> {
    let q = t.q() as i64;
    (0..=max)
        .find(|&n| {
            let lhs = q * t.get(n) as i64;
            let rhs = (q - 1) * n;
            lhs < rhs || (lhs == rhs) != (n == 0)
        })
        .map(|n| RViolation {
            property: "R(n) >= (q-1)n/q, equality only at 0",
            args: vec![n],
        })
}

/// `P(sigma(n)) = n` and `sigma(n)` has greedy form, for `0 <= n <= max`.
pub fn check_sigma_inverse(q: u64, max: i64) -> Option<RViolation> {
    (0..=max)
        .find(|&n| {
            let s = sigma(n, q);
            p_sum(&s, q) != n as u64 || !s.is_greedy_form(q)
        })
        .map(|n| RViolation {
            property: "P(sigma(n)) = n with greedy digits",
            args: vec![n],
        })
}

/// `R(n) = r_oracle(n)` for `0 <= n <= max`.
pub fn check_minimality(t: &RTable, max: u64) -> Result<Option<RViolation>> {
    let oracle = r_oracle_table(max, t.q())?;
    Ok((0..=max as usize)
        .find(|&n| t.get(n as i64) != oracle[n])
        .map(|n| RViolation {
            property: "R(n) minimizes R' over P^{-1}(n)",
            args: vec![n as i64],
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_sum_examples() {
        assert_eq!(t_sum(0, 5), 1);
        assert_eq!(t_sum(2, 3), 13);
        assert_eq!(t_sum(2, 2), 7);
    }

    #[test]
    fn sigma_examples() {
        assert!(sigma(0, 3).is_zero());
        assert_eq!(sigma(4, 3), DigitSeq::from_pairs([(1, 1)]));
        assert!(sigma(-5, 3).is_zero());
        // 12 = 3 * T_1 for q = 3 is a full digit with nothing below.
        assert_eq!(sigma(12, 3), DigitSeq::from_pairs([(1, 3)]));
    }

    #[test]
    fn p_and_r_prime_examples() {
        let z = DigitSeq::zero();
        assert_eq!((p_sum(&z, 3), r_prime(&z, 3)), (0, 0));
        let d = DigitSeq::from_pairs([(1, 1)]);
        assert_eq!((p_sum(&d, 3), r_prime(&d, 3)), (4, 3));
        let d = DigitSeq::from_pairs([(0, 2), (1, 1)]);
        assert_eq!((p_sum(&d, 2), r_prime(&d, 2)), (5, 4));
    }

    #[test]
    fn r_examples() {
        assert_eq!(r_func(0, 3), 0);
        assert_eq!(r_func(-7, 3), 0);
        for q in [2u64, 3] {
            for l in 0..3 {
                assert_eq!(r_func(t_sum(l, q) as i64, q), q.pow(l));
            }
        }
        assert_eq!(r_func(7, 2), 4);
        assert_eq!(r_func(13, 3), 9);
        assert_eq!(r_func(2, 2), 2);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(r_oracle(0, 3).unwrap(), 0);
        assert_eq!(r_oracle(4, 3).unwrap(), 3);
        assert_eq!(r_oracle(7, 2).unwrap(), 4);
        assert_eq!(r_oracle(2, 2).unwrap(), 2);
        assert!(r_oracle(R_ORACLE_BOUND + 1, 2).is_err());
    }

    #[test]
    fn greedy_form_characterization() {
        assert!(DigitSeq::from_pairs([(2, 3)]).is_greedy_form(3));
        assert!(DigitSeq::from_pairs([(2, 3), (3, 2)]).is_greedy_form(3));
        assert!(!DigitSeq::from_pairs([(1, 1), (2, 3)]).is_greedy_form(3));
        assert!(!DigitSeq::from_pairs([(1, 3), (2, 3)]).is_greedy_form(3));
        assert!(!DigitSeq::from_pairs([(0, 4)]).is_greedy_form(3));
    }

    #[test]
    fn lemma_properties_small_range() {
        for q in [2u64, 3, 4, 5] {
            let t = RTable::new(3000, q);
            assert_eq!(check_sigma_inverse(q, 3000), None);
            assert_eq!(check_monotone_steps(&t, 3000), None);
            assert_eq!(check_subadditive(&t, -20, 300), None);
            assert_eq!(check_subadditive_grid(&t, 3000, 7), None);
            assert_eq!(check_q_scaling(&t, 500), None);
            assert_eq!(check_linear_lower_bound(&t, 3000), None);
            assert_eq!(check_minimality(&t, 3000).unwrap(), None);
        }
    }

    #[test]
    fn violations_are_detected() {
        // A deliberately wrong table must trip the checks.
        let mut t = RTable::new(50, 2);
        t.values[10] += 2;
        assert!(check_monotone_steps(&t, 50).is_some());
        assert!(check_minimality(&t, 50).unwrap().is_some());
    }
}
