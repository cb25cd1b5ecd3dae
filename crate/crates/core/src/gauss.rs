//! Gauss norms of polynomials on closed discs and vanishing orders at `x = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{LtvError, Result};
use crate::params::FieldParams;
use crate::valuation::{rat_int, RationalVal};
use crate::{PiScalar, XPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Center {
    Zero,
    One,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrdMode {
    /// Divisibility in `o_K[x]`.
    Exact,
    /// Divisibility in `F_p[x]` after reducing every coefficient mod `pi`.
    ModPi,
}

/// Valuation of the sup norm of `q` on `|x - center| <= |pi|^radius`.
///
/// The zero polynomial has Gauss valuation `+inf`.
pub fn gauss_val(
    q: &XPoly,
    center: Center,
    radius: &BigRational,
    fp: &FieldParams,
) -> Result<RationalVal> {
    if center == Center::One && radius < &BigRational::zero() {
        return Err(LtvError::Precondition(format!(
            "disc around 1 needs a nonnegative radius exponent, got {radius}"
        )));
    }
    let expanded = match center {
        Center::Zero => q.clone(),
        Center::One => q.shifted_at_one(),
    };
    Ok(gauss_val_expanded(&expanded, radius, fp))
}

/// `min_j (v(a_j) + radius * j)` for a polynomial already expanded around
/// the disc's center.
pub fn gauss_val_expanded(q: &XPoly, radius: &BigRational, fp: &FieldParams) -> RationalVal {
    q.terms()
        .map(|(j, a)| a.scalar_val(fp) + radius * BigRational::from_integer(BigInt::from(j)))
        .min()
        .unwrap_or(RationalVal::Infinite)
}

/// The minimizing term `(j, v(a_j) + radius * j)` of [`gauss_val_expanded`].
pub fn gauss_witness(
    q: &XPoly,
    center: Center,
    radius: &BigRational,
    fp: &FieldParams,
) -> Option<(u32, RationalVal)> {
    let expanded = match center {
        Center::Zero => q.clone(),
        Center::One => q.shifted_at_one(),
    };
    expanded
        .terms()
        .map(|(j, a)| (j, a.scalar_val(fp) + radius * rat_int(j as i64)))
        .min_by(|a, b| a.1.cmp(&b.1))
}

/// Largest `m` with `(x - 1)^m | q` in the chosen mode.
pub fn ord_at_one(q: &XPoly, mode: OrdMode, fp: &FieldParams) -> Result<u32> {
    let shifted = q.shifted_at_one();
    match mode {
        OrdMode::Exact => shifted
            .terms()
            .find(|(_, c)| !c.normalize(fp).is_zero())
            .map(|(j, _)| j)
            .ok_or_else(|| LtvError::ZeroInput("ord_at_one of the zero polynomial".into())),
        OrdMode::ModPi => {
            for (j, c) in shifted.terms() {
                if c.reduce_mod_pi(fp)? != 0 {
                    return Ok(j);
                }
            }
            Err(LtvError::ZeroInput(
                "ord_at_one of a polynomial vanishing mod pi".into(),
            ))
        }
    }
}

/// Whether every coefficient is `pi`-integral.
pub fn is_integral(q: &XPoly, fp: &FieldParams) -> bool {
    q.terms().all(|(_, c)| c.scalar_val(fp).is_nonneg())
}

/// The reduction of `q` mod `pi` as a dense `F_p` coefficient list.
pub fn reduce_poly_mod_pi(q: &XPoly, fp: &FieldParams) -> Result<Vec<u64>> {
    let deg = q.degree().unwrap_or(0);
    (0..=deg)
        .map(|d| q.coeff_ref(d).map_or(Ok(0), |c| c.reduce_mod_pi(fp)))
        .collect()
}

/// Builds an `XPoly` from integer coefficients.
pub fn xpoly_from_ints(terms: impl IntoIterator<Item = (u32, i64)>) -> XPoly {
    XPoly::from_terms(
        terms
            .into_iter()
            .map(|(d, c)| (d, PiScalar::from_integer(BigInt::from(c)))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::rat;
    use crate::Poly;

    fn fp3() -> FieldParams {
        FieldParams::prime(3).unwrap()
    }

    /// `(q + 1)(x - 1)^2 + q(x - 1)` for `q = 3`.
    fn q2_for_q3() -> XPoly {
        Poly::from_shifted([
            (2, PiScalar::from_integer(BigInt::from(4))),
            (1, PiScalar::from_integer(BigInt::from(3))),
        ])
    }

    #[test]
    fn gauss_examples() {
        let x_minus_1 = xpoly_from_ints([(1, 1), (0, -1)]);
        assert_eq!(
            gauss_val(&x_minus_1, Center::One, &rat(1, 1), &fp3()).unwrap(),
            RationalVal::int(1)
        );
        let q2 = q2_for_q3();
        assert_eq!(gauss_val(&q2, Center::One, &rat(1, 1), &fp3()).unwrap(), RationalVal::int(2));
        assert_eq!(gauss_val(&q2, Center::Zero, &rat(0, 1), &fp3()).unwrap(), RationalVal::int(0));
        assert_eq!(
            gauss_val(&XPoly::zero(), Center::Zero, &rat(0, 1), &fp3()).unwrap(),
            RationalVal::Infinite
        );
        assert!(gauss_val(&q2, Center::One, &rat(-1, 2), &fp3()).is_err());
    }

    #[test]
    fn ord_examples() {
        let p =xpoly_from_ints([(1, 1), (0, -1)]).pow(3) * xpoly_from_ints([(1, 1), (0, 2)]);
        assert_eq!(ord_at_one(&p, OrdMode::Exact, &fp3()).unwrap(), 3);
        // x + 2 = (x - 1) + 3 vanishes at 1 mod 3
        assert_eq!(ord_at_one(&p, OrdMode::ModPi, &fp3()).unwrap(), 4);

        for prime in [2u64, 3, 5, 7] {
            let fp = FieldParams::prime(prime).unwrap();
            let q = xpoly_from_ints([(1, 1), (0, -1 + prime as i64)]);
            assert_eq!(ord_at_one(&q, OrdMode::ModPi, &fp).unwrap(), 1);
            assert_eq!(ord_at_one(&q, OrdMode::Exact, &fp).unwrap(), 0);
        }

        assert_eq!(ord_at_one(&q2_for_q3(), OrdMode::Exact, &fp3()).unwrap(), 1);
        assert!(ord_at_one(&XPoly::zero(), OrdMode::Exact, &fp3()).is_err());
        let three = xpoly_from_ints([(0, 3)]);
        assert!(ord_at_one(&three, OrdMode::ModPi, &fp3()).is_err());
    }
}
