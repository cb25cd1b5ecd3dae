//! The power series `phi_0`, `phi_1` of the period morphism, their products
//! and derivatives as truncated series with certified tails, and exact sup
//! norms on the critical discs `|u| <= |pi|^{1/((q+1) q^s)}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{LtvError, Result};
use crate::params::FieldParams;
use crate::valuation::{rat, rat_int, RationalVal};
use crate::PiScalar;

/// Largest `n` accepted by [`rep_enumerate`].
pub const REP_ENUM_BOUND: u64 = 50_000_000;

/// A representation `n = q^{e_0} + ... + q^{e_k}` with `e_0 < ... < e_k` and
/// `e_i = i (mod 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub k: u32,
    pub exponents: Vec<u32>,
}

/// Base-q decision procedure: the digits must all be 0 or 1 and the
/// exponents of the 1-digits, in increasing order, must alternate in parity
/// starting with an even one. `n = 0` has no representation.
pub fn rep_decompose(n: u64, q: u64) -> Option<Representation> {
    let mut exponents = Vec::new();
    let (mut rest, mut pos) = (n, 0u32);
    while rest > 0 {
        match rest % q {
            0 => {}
            1 => exponents.push(pos),
            _ => return None,
        }
        rest /= q;
        pos += 1;
    }
    if exponents.is_empty() {
        return None;
    }
    let alternating = exponents
        .iter()
        .enumerate()
        .all(|(i, e)| (*e as usize) % 2 == i % 2);
    alternating.then(|| Representation {
        k: exponents.len() as u32 - 1,
        exponents,
    })
}

/// Every representation of `n`, by exhaustive search over increasing
/// exponent tuples with the parity constraint. Independent of base-q digits.
pub fn rep_enumerate(n: u64, q: u64) -> Result<Vec<Representation>> {
    if n > REP_ENUM_BOUND {
        return Err(LtvError::BoundExceeded {
            what: "rep_enumerate n",
            value: n,
            bound: REP_ENUM_BOUND,
        });
    }
    let mut found = Vec::new();
    let mut stack = Vec::new();
    search_reps(n, q, 0, &mut stack, &mut |exps| {
        if exps.iter().map(|e| q.pow(*e)).sum::<u64>() == n {
            found.push(Representation {
                k: exps.len() as u32 - 1,
                exponents: exps.to_vec(),
            });
        }
    });
    Ok(found)
}

/// Depth-first walk over alternating-parity increasing tuples whose sum of
/// `q`-powers stays `<= limit`. Calls `visit` on every nonempty tuple.
fn search_reps(limit: u64, q: u64, partial: u64, stack: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    let parity = stack.len() as u32 % 2;
    let mut e = match stack.last() {
        Some(last) => last + 1,
        None => 0,
    };
    if e % 2 != parity {
        e += 1;
    }
    loop {
        let Some(term) = q.checked_pow(e) else { break };
        if partial + term > limit {
            break;
        }
        stack.push(e);
        visit(stack);
        search_reps(limit, q, partial + term, stack, visit);
        stack.pop();
        e += 2;
    }
}

/// All `(n, k)` with `0 < n <= limit` that have a representation.
pub fn supports_up_to(limit: u64, q: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    search_reps(limit, q, 0, &mut stack, &mut |exps| {
        out.push((exps.iter().map(|e| q.pow(*e)).sum(), exps.len() as u32 - 1));
    });
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffKind {
    /// Coefficients `c_n` of `phi_0`.
    C,
    /// Coefficients `d_n` of `phi_1`.
    D,
}

/// `pi`-exponent of `c_n` or `d_n`, or `None` when the coefficient is zero.
///
/// `c_0 = 1`; otherwise `c_n = pi^{(-k-1)/2}` for odd `k` and
/// `d_n = pi^{-k/2}` for even `k`.
pub fn coeff_val(kind: CoeffKind, n: u64, q: u64) -> Option<i64> {
    if n == 0 {
        return (kind == CoeffKind::C).then_some(0);
    }
    let rep = rep_decompose(n, q)?;
    let k = rep.k as i64;
    match (kind, k % 2) {
        (CoeffKind::C, 1) => Some((-k - 1) / 2),
        (CoeffKind::D, 0) => Some(-k / 2),
        _ => None,
    }
}

pub fn coeff(kind: CoeffKind, n: u64, q: u64) -> PiScalar {
    coeff_val(kind, n, q).map_or_else(PiScalar::zero, PiScalar::pi_pow)
}

/// A global lower bound `shift - weight * (floor(log_q n) + 1) / 2` on the
/// valuation of every coefficient of a series (`n >= 1`; `n = 0` is
/// treated as `n = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct TailBound {
    pub shift: BigRational,
    pub weight: u32,
}

impl TailBound {
    pub fn at(&self, n: u64, q: u64) -> BigRational {
        let digits = ilog(n.max(1), q) as i64 + 1;
        self.shift.clone() - rat(self.weight as i64 * digits, 2)
    }

    fn product(&self, other: &TailBound) -> TailBound {
        TailBound {
            shift: self.shift.clone() + other.shift.clone(),
            weight: self.weight + other.weight,
        }
    }

    fn min(&self, other: &TailBound) -> TailBound {
        TailBound {
            shift: std::cmp::min(self.shift.clone(), other.shift.clone()),
            weight: self.weight.max(other.weight),
        }
    }
}

/// `floor(log_q n)` for `n >= 1`.
pub fn ilog(n: u64, q: u64) -> u32 {
    let (mut k, mut pw) = (0, q);
    while pw <= n {
        k += 1;
        match pw.checked_mul(q) {
            Some(next) => pw = next,
            None => break,
        }
    }
    k
}

/// A power series in `u` known exactly up to degree `trunc`, with a
/// certified valuation bound for the omitted coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct USeries {
    pub q: u64,
    pub trunc: u64,
    pub coeffs: BTreeMap<u64, PiScalar>,
    pub tail: TailBound,
}

impl USeries {
    pub fn coeff(&self, n: u64) -> PiScalar {
        self.coeffs.get(&n).cloned().unwrap_or_else(PiScalar::zero)
    }

    fn phi(kind: CoeffKind, trunc: u64, q: u64) -> Self {
        let mut coeffs = BTreeMap::new();
        if kind == CoeffKind::C {
            coeffs.insert(0, PiScalar::one());
        }
        for (n, _) in supports_up_to(trunc, q) {
            if let Some(v) = coeff_val(kind, n, q) {
                coeffs.insert(n, PiScalar::pi_pow(v));
            }
        }
        Self {
            q,
            trunc,
            coeffs,
            tail: TailBound {
                shift: BigRational::zero(),
                weight: 1,
            },
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(n, _)| **n > 0)
            .map(|(n, c)| (n - 1, c.scale(&BigInt::from(*n))))
            .collect();
        // (n+1) c_{n+1} has valuation >= that of c_{n+1}, and the bound is
        // monotone in n up to the digit jump, which we absorb by one weight.
        Self {
            q: self.q,
            trunc: self.trunc.saturating_sub(1),
            coeffs,
            tail: TailBound {
                shift: self.tail.shift.clone(),
                weight: self.tail.weight,
            }
            .min(&self.tail.product(&TailBound {
                shift: BigRational::zero(),
                weight: 1,
            })),
        }
    }

    pub fn mul(&self, other: &USeries) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut coeffs: BTreeMap<u64, PiScalar> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            if *i > trunc {
                break;
            }
            for (j, b) in &other.coeffs {
                if i + j > trunc {
                    break;
                }
                let slot = coeffs.entry(i + j).or_insert_with(PiScalar::zero);
                *slot += &(a * b);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self {
            q: self.q,
            trunc,
            coeffs,
            tail: self.tail.product(&other.tail),
        }
    }

    pub fn sub(&self, other: &USeries) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut coeffs: BTreeMap<u64, PiScalar> = self
            .coeffs
            .range(..=trunc)
            .map(|(n, c)| (*n, c.clone()))
            .collect();
        for (n, c) in other.coeffs.range(..=trunc) {
            let slot = coeffs.entry(*n).or_insert_with(PiScalar::zero);
            *slot -= c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self {
            q: self.q,
            trunc,
            coeffs,
            tail: self.tail.min(&other.tail),
        }
    }
}

/// Which series to build.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesSpec {
    Phi0,
    Phi1,
    Phi0Prime,
    Phi1Prime,
    /// `phi_1' phi_0 - phi_1 phi_0'`.
    Epsilon,
    Product(Box<SeriesSpec>, Box<SeriesSpec>),
}

impl SeriesSpec {
    pub fn product(a: SeriesSpec, b: SeriesSpec) -> Self {
        SeriesSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn label(&self) -> String {
        match self {
            SeriesSpec::Phi0 => "phi0".into(),
            SeriesSpec::Phi1 => "phi1".into(),
            SeriesSpec::Phi0Prime => "phi0'".into(),
            SeriesSpec::Phi1Prime => "phi1'".into(),
            SeriesSpec::Epsilon => "epsilon".into(),
            SeriesSpec::Product(a, b) => format!("{}*{}", a.label(), b.label()),
        }
    }
}

/// Exact truncation to degree `trunc` with a certified tail bound.
pub fn build_series(which: &SeriesSpec, trunc: u64, fp: &FieldParams) -> Result<USeries> {
    if trunc < 1 {
        return Err(LtvError::Precondition("series truncation must be >= 1".into()));
    }
    let q = fp.q();
    Ok(match which {
        SeriesSpec::Phi0 => USeries::phi(CoeffKind::C, trunc, q),
        SeriesSpec::Phi1 => USeries::phi(CoeffKind::D, trunc, q),
        SeriesSpec::Phi0Prime => USeries::phi(CoeffKind::C, trunc + 1, q).derivative(),
        SeriesSpec::Phi1Prime => USeries::phi(CoeffKind::D, trunc + 1, q).derivative(),
        SeriesSpec::Epsilon => {
            let lhs = build_series(&SeriesSpec::Phi1Prime, trunc, fp)?
                .mul(&build_series(&SeriesSpec::Phi0, trunc, fp)?);
            let rhs = build_series(&SeriesSpec::Phi1, trunc, fp)?
                .mul(&build_series(&SeriesSpec::Phi0Prime, trunc, fp)?);
            lhs.sub(&rhs)
        }
        SeriesSpec::Product(a, b) => build_series(a, trunc, fp)?.mul(&build_series(b, trunc, fp)?),
    })
}

/// The critical disc `|u| <= |pi|^{1/((q+1) q^s)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalDisc {
    pub s: u32,
    pub radius_val: RationalVal,
}

impl CriticalDisc {
    pub fn new(s: u32, q: u64) -> Self {
        Self {
            s,
            radius_val: RationalVal::Finite(radius_exponent(s, q)),
        }
    }

    pub fn radius(&self) -> BigRational {
        self.radius_val.finite().cloned().expect("critical radius is finite")
    }
}

/// `1 / ((q + 1) q^s)`.
pub fn radius_exponent(s: u32, q: u64) -> BigRational {
    let den = BigInt::from(q + 1) * BigInt::from(q).pow(s);
    BigRational::new(BigInt::from(1), den)
}

/// Valuation of the sup norm of `series` on `disc`.
///
/// Fails with [`LtvError::InsufficientTruncation`] unless the tail bound
/// proves that no omitted term can undercut the minimum over stored terms.
pub fn disc_sup_val(series: &USeries, disc: &CriticalDisc, _fp: &FieldParams) -> Result<RationalVal> {
    let r = disc.radius();
    let interim = series
        .coeffs
        .iter()
        .map(|(n, c)| c.scalar_val(_fp) + r.clone() * rat_int(*n as i64))
        .min()
        .unwrap_or(RationalVal::Infinite);
    let Some(floor) = interim.finite() else {
        return Err(LtvError::InsufficientTruncation {
            have: series.trunc,
            suggested: series.trunc.saturating_mul(series.q),
        });
    };
    match last_tail_failure(series, &r, floor) {
        None => Ok(interim),
        Some(n) => Err(LtvError::InsufficientTruncation {
            have: series.trunc,
            suggested: n,
        }),
    }
}

/// Largest `n > trunc` at which the tail bound plus `r n` drops below
/// `floor`, or `None` if there is none.
fn last_tail_failure(series: &USeries, r: &BigRational, floor: &BigRational) -> Option<u64> {
    let q = series.q;
    let tail = &series.tail;
    let g = |n: u64| tail.at(n, q) + r.clone() * rat_int(n as i64);
    // On each block [q^j, q^{j+1}) the bound is increasing in n, so within a
    // block the failures form an initial segment.
    let last_in_block = |start: u64, end: u64| -> Option<u64> {
        if &g(start) >= floor {
            return None;
        }
        // g(n) = tail.at(start) + r n < floor  <=>  n < (floor - tail.at(start)) / r
        let bound = (floor.clone() - tail.at(start, q)) / r.clone();
        let ceil = bound.ceil().to_integer();
        let last = num_traits::ToPrimitive::to_u64(&(ceil - 1)).unwrap_or(u64::MAX);
        Some(last.min(end))
    };
    let mut worst = None;
    let first = series.trunc + 1;
    let mut j = ilog(first, q) + 1;
    let first_end = q.checked_pow(j).map_or(u64::MAX, |v| v - 1);
    if let Some(n) = last_in_block(first, first_end) {
        worst = Some(n);
    }
    loop {
        let Some(start) = q.checked_pow(j) else { break };
        let end = q.checked_pow(j + 1).map_or(u64::MAX, |v| v - 1);
        if let Some(n) = last_in_block(start, end) {
            worst = Some(n);
        }
        // g(q^{j+1}) - g(q^j) = r q^j (q - 1) - weight / 2; once this is
        // nonnegative the block minima only increase.
        let step = r.clone() * rat_int((start * (q - 1)) as i64) - rat(tail.weight as i64, 2);
        if step >= BigRational::zero() && worst.map_or(true, |w| w < start) {
            break;
        }
        j += 1;
    }
    worst
}

/// Default truncation for disc `s`: `(q + 1) q^{s+2}`.
pub fn default_trunc(s: u32, q: u64) -> u64 {
    (q + 1) * q.pow(s + 2)
}

/// [`disc_sup_val`] with automatic truncation: starts from
/// [`default_trunc`] and raises `N` until the tail is certified.
pub fn disc_sup_val_auto(which: &SeriesSpec, s: u32, fp: &FieldParams) -> Result<(RationalVal, u64)> {
    let q = fp.q();
    let disc = CriticalDisc::new(s, q);
    let mut trunc = default_trunc(s, q);
    for _ in 0..16 {
        let series = build_series(which, trunc, fp)?;
        match disc_sup_val(&series, &disc, fp) {
            Ok(v) => return Ok((v, trunc)),
            Err(LtvError::InsufficientTruncation { suggested, .. }) => {
                trunc = suggested.max(trunc.saturating_mul(2));
            }
            Err(e) => return Err(e),
        }
    }
    Err(LtvError::InsufficientTruncation {
        have: trunc,
        suggested: trunc.saturating_mul(2),
    })
}

/// The sup-norm quantities bounding the numerators of the Lie-algebra
/// operators in the coordinate `u_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorPart {
    /// `pi^{s+1} phi_0^2 pi^{-1/((q+1)q^s)}`, the `pi phi_0^2` part of `y_1`, `y_2`.
    Phi0Squared,
    /// `pi^s phi_1^2 pi^{-1/((q+1)q^s)}`, the `phi_1^2` part of `y_1`, `y_2`.
    Phi1Squared,
    /// `pi^s phi_0 phi_1 pi^{-1/((q+1)q^s)}`, the numerator of `x_2`.
    Phi0Phi1,
}

impl OperatorPart {
    pub const ALL: [OperatorPart; 3] = [Self::Phi0Squared, Self::Phi1Squared, Self::Phi0Phi1];

    pub fn label(&self) -> &'static str {
        match self {
            Self::Phi0Squared => "pi^(s+1) phi0^2",
            Self::Phi1Squared => "pi^s phi1^2",
            Self::Phi0Phi1 => "pi^s phi0 phi1",
        }
    }

    fn series(&self) -> SeriesSpec {
        match self {
            Self::Phi0Squared => SeriesSpec::product(SeriesSpec::Phi0, SeriesSpec::Phi0),
            Self::Phi1Squared => SeriesSpec::product(SeriesSpec::Phi1, SeriesSpec::Phi1),
            Self::Phi0Phi1 => SeriesSpec::product(SeriesSpec::Phi0, SeriesSpec::Phi1),
        }
    }

    fn pi_power(&self, s: u32) -> i64 {
        match self {
            Self::Phi0Squared => s as i64 + 1,
            _ => s as i64,
        }
    }
}

/// Exact sup-norm valuation on the critical disc `s` of the given operator part.
pub fn operator_estimate(which: OperatorPart, s: u32, fp: &FieldParams) -> Result<RationalVal> {
    let (sup, _) = disc_sup_val_auto(&which.series(), s, fp)?;
    Ok(sup + rat_int(which.pi_power(s)) - radius_exponent(s, fp.q()))
}

/// Series whose sup norms on critical discs have closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormedSeries {
    Phi0,
    Phi1,
    Phi0Phi1,
}

impl NormedSeries {
    pub const ALL: [NormedSeries; 3] = [Self::Phi0, Self::Phi1, Self::Phi0Phi1];

    pub fn spec(&self) -> SeriesSpec {
        match self {
            Self::Phi0 => SeriesSpec::Phi0,
            Self::Phi1 => SeriesSpec::Phi1,
            Self::Phi0Phi1 => SeriesSpec::product(SeriesSpec::Phi0, SeriesSpec::Phi1),
        }
    }
}

fn qpow(q: u64, e: u32) -> BigInt {
    BigInt::from(q).pow(e)
}

fn frac(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// Closed-form sup-norm exponents of `phi_0`, `phi_1` and `phi_0 phi_1` on
/// the critical disc `s`.
pub fn sup_closed_form(which: NormedSeries, s: u32, q: u64) -> BigRational {
    let one = BigInt::from(1);
    let d = (qpow(q, 2) - &one) * qpow(q, s);
    let even = s % 2 == 0;
    let si = s as i64;
    match (which, even) {
        (NormedSeries::Phi0, true) => rat(-si, 2) + frac(qpow(q, s) - &one, d),
        (NormedSeries::Phi1, true) => rat(-si, 2) + frac(qpow(q, s + 1) - &one, d),
        (NormedSeries::Phi0, false) => rat(-(si + 1), 2) + frac(qpow(q, s + 1) - &one, d),
        (NormedSeries::Phi1, false) => rat(-(si - 1), 2) + frac(qpow(q, s) - &one, d),
        (NormedSeries::Phi0Phi1, _) => {
            rat_int(-si) + rat(1, q as i64 - 1) - frac(BigInt::from(2), d)
        }
    }
}

/// The closed forms for [`operator_estimate`], in the two displayed shapes:
/// the unsimplified sum and the simplified exponent.
pub fn operator_closed_forms(which: OperatorPart, s: u32, q: u64) -> (BigRational, BigRational) {
    let one = BigInt::from(1);
    let qi = q as i64;
    let qs = qpow(q, s);
    let d = (qpow(q, 2) - &one) * &qs;
    let shift = radius_exponent(s, q);
    let tail = frac(one.clone(), BigInt::from(q - 1) * &qs);
    let even = s % 2 == 0;
    let big = |num: BigInt| frac(num, d.clone());
    let two = BigInt::from(2);
    let high = (
        rat_int(1) + big(&two * &qs - &two) - shift.clone(),
        rat(qi * qi + 1, qi * qi - 1) - tail.clone(),
    );
    let low = (
        big(&two * qpow(q, s + 1) - &two) - shift.clone(),
        rat(2 * qi, qi * qi - 1) - tail.clone(),
    );
    match (which, even) {
        (OperatorPart::Phi0Squared, true) | (OperatorPart::Phi1Squared, false) => high,
        (OperatorPart::Phi1Squared, true) | (OperatorPart::Phi0Squared, false) => low,
        (OperatorPart::Phi0Phi1, _) => (
            rat(1, qi - 1) - frac(two, d) - shift,
            rat(1, qi - 1) - tail,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fpq(q: u64) -> FieldParams {
        FieldParams::with_q(q).unwrap()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            rep_decompose(1, 3),
            Some(Representation { k: 0, exponents: vec![0] })
        );
        for q in [2u64, 3, 5] {
            assert_eq!(
                rep_decompose(q + 1, q),
                Some(Representation { k: 1, exponents: vec![0, 1] })
            );
        }
        assert_eq!(rep_decompose(2, 3), None);
        assert_eq!(rep_decompose(0, 3), None);
        // 1 + 9 has exponents (0, 2): the second must be odd.
        assert_eq!(rep_decompose(10, 3), None);
    }

    #[test]
    fn enumerate_examples() {
        assert!(rep_enumerate(0, 3).unwrap().is_empty());
        assert_eq!(rep_enumerate(4, 3).unwrap().len(), 1);
        let thirteen = rep_enumerate(13, 3).unwrap();
        assert_eq!(thirteen, vec![Representation { k: 2, exponents: vec![0, 1, 2] }]);
        assert!(rep_enumerate(2, 3).unwrap().is_empty());
        assert!(rep_enumerate(REP_ENUM_BOUND + 1, 2).is_err());
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coeff_val(CoeffKind::C, 0, 3), Some(0));
        assert_eq!(coeff_val(CoeffKind::C, 4, 3), Some(-1));
        assert_eq!(coeff_val(CoeffKind::D, 1, 3), Some(0));
        assert_eq!(coeff_val(CoeffKind::D, 0, 3), None);
        assert_eq!(coeff_val(CoeffKind::D, 13, 3), Some(-1));
        assert_eq!(coeff_val(CoeffKind::C, 13, 3), None);
    }

    #[test]
    fn series_examples() {
        for q in [2u64, 3, 5] {
            let fp = fpq(q);
            let phi1 = build_series(&SeriesSpec::Phi1, q, &fp).unwrap();
            assert_eq!(phi1.coeffs.len(), 1);
            assert_eq!(phi1.coeff(1), PiScalar::one());
            let phi0 = build_series(&SeriesSpec::Phi0, q + 1, &fp).unwrap();
            let expected: BTreeMap<u64, PiScalar> =
                [(0, PiScalar::one()), (q + 1, PiScalar::pi_pow(-1))].into_iter().collect();
            assert_eq!(phi0.coeffs, expected);
            let eps = build_series(&SeriesSpec::Epsilon, 20, &fp).unwrap();
            assert_eq!(eps.coeff(0), PiScalar::one());
        }
        assert!(build_series(&SeriesSpec::Phi0, 0, &fpq(3)).is_err());
    }

    #[test]
    fn derivative_tracks_integer_factor() {
        let fp = fpq(3);
        let d = build_series(&SeriesSpec::Phi0Prime, 10, &fp).unwrap();
        // phi0 = 1 + pi^-1 u^4 + ..., so phi0' starts 4 pi^-1 u^3.
        assert_eq!(d.coeff(3), PiScalar::monomial(BigInt::from(4), -1));
    }

    #[test]
    fn small_disc_norms() {
        let fp = fpq(3);
        let disc = CriticalDisc::new(0, 3);
        let phi0 = build_series(&SeriesSpec::Phi0, 400, &fp).unwrap();
        assert_eq!(disc_sup_val(&phi0, &disc, &fp).unwrap(), RationalVal::int(0));
        let phi1 = build_series(&SeriesSpec::Phi1, 400, &fp).unwrap();
        assert_eq!(disc_sup_val(&phi1, &disc, &fp).unwrap(), RationalVal::frac(1, 4));
    }

    #[test]
    fn short_truncation_is_rejected() {
        let fp = fpq(2);
        let disc = CriticalDisc::new(4, 2);
        let phi0 = build_series(&SeriesSpec::Phi0, 3, &fp).unwrap();
        match disc_sup_val(&phi0, &disc, &fp) {
            Err(LtvError::InsufficientTruncation { have, suggested }) => {
                assert_eq!(have, 3);
                assert!(suggested > 3);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn operator_examples() {
        for q in [2u64, 3, 5] {
            let fp = fpq(q);
            let qi = q as i64;
            assert_eq!(
                operator_estimate(OperatorPart::Phi0Squared, 0, &fp).unwrap(),
                RationalVal::frac(qi, qi + 1)
            );
            assert_eq!(
                operator_estimate(OperatorPart::Phi1Squared, 0, &fp).unwrap(),
                RationalVal::frac(1, qi + 1)
            );
            let expected = rat(1, qi - 1) - rat(1, (qi - 1) * qi * qi);
            assert_eq!(
                operator_estimate(OperatorPart::Phi0Phi1, 2, &fp).unwrap(),
                RationalVal::Finite(expected)
            );
        }
    }

    #[test]
    fn closed_form_shapes_agree() {
        for q in [2u64, 3, 5, 7] {
            for s in 0..6 {
                for part in OperatorPart::ALL {
                    let (a, b) = operator_closed_forms(part, s, q);
                    assert_eq!(a, b, "{part:?} s={s} q={q}");
                }
            }
        }
    }
}
