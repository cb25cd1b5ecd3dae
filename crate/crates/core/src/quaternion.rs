//! The quaternion layer: the matrix model of the division algebra over the
//! unramified quadratic extension, the co-multiplication of the unit group
//! scheme, membership predicates for the wide-open subgroups, the Lie
//! algebra basis and the lattices acting on the critical discs.
//!
//! Scalars are generic over [`Ring`]. The symbolic identities are run over
//! [`MPoly<BigInt>`] with `pi` and `eta = zeta^2` as free variables, so a
//! passing check is a polynomial identity rather than a sample.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{LtvError, Result};
use crate::mpoly::MPoly;
use crate::params::is_prime;
use crate::report::Finding;
use crate::ring::Ring;
use crate::valuation::{rat, rat_int, RationalVal, Val};

pub type Sym = MPoly<BigInt>;

/// Variable indices of [`Sym`].
pub mod var {
    pub const PI: usize = 0;
    pub const ETA: usize = 1;
    /// `a1, a2, b1, b2` of the first, second and third parameter.
    pub const G: [usize; 3] = [2, 6, 10];
    /// First free index after the parameters.
    pub const FREE: usize = 14;
}

/// The constants `pi` and `eta = zeta^2` in the scalar ring.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatContext<R> {
    pub pi: R,
    pub eta: R,
}

impl QuatContext<Sym> {
    pub fn symbolic() -> Self {
        Self {
            pi: Sym::var(var::PI),
            eta: Sym::var(var::ETA),
        }
    }
}

/// `a + zeta b` in `K_2`, with `zeta^2 = eta` and `conj(zeta) = -zeta`.
#[derive(Debug, Clone, PartialEq)]
pub struct K2Pair<R> {
    pub a: R,
    pub b: R,
}

impl<R: Ring> K2Pair<R> {
    pub fn new(a: R, b: R) -> Self {
        Self { a, b }
    }

    pub fn scalar(a: R) -> Self {
        Self::new(a, R::zero())
    }

    pub fn zeta() -> Self {
        Self::new(R::zero(), R::one())
    }

    pub fn zero() -> Self {
        Self::scalar(R::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    pub fn mul(&self, rhs: &Self, eta: &R) -> Self {
        let mut a = self.a.mul_ref(&rhs.a);
        a += &eta.mul_ref(&self.b.mul_ref(&rhs.b));
        let mut b = self.a.mul_ref(&rhs.b);
        b += &self.b.mul_ref(&rhs.a);
        Self::new(a, b)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.a.mul_ref(c), self.b.mul_ref(c))
    }

    /// `x conj(x) = a^2 - eta b^2`.
    pub fn norm(&self, eta: &R) -> R {
        self.mul(&self.conj(), eta).a
    }
}

impl<R: Ring> Add for K2Pair<R> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self.a += &rhs.a;
        self.b += &rhs.b;
        self
    }
}

impl<R: Ring> Sub for K2Pair<R> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
        self
    }
}

impl<R: Ring> Neg for K2Pair<R> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

/// A 2x2 matrix over `K_2`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<R> {
    pub m: [[K2Pair<R>; 2]; 2],
}

pub type LieElement<R> = Mat2<R>;

impl<R: Ring> Mat2<R> {
    pub fn new(m00: K2Pair<R>, m01: K2Pair<R>, m10: K2Pair<R>, m11: K2Pair<R>) -> Self {
        Self {
            m: [[m00, m01], [m10, m11]],
        }
    }

    pub fn zero() -> Self {
        Self::new(K2Pair::zero(), K2Pair::zero(), K2Pair::zero(), K2Pair::zero())
    }

    pub fn identity() -> Self {
        Self::new(K2Pair::scalar(R::one()), K2Pair::zero(), K2Pair::zero(), K2Pair::scalar(R::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(K2Pair::is_zero)
    }

    pub fn mul(&self, rhs: &Self, eta: &R) -> Self {
        let entry = |i: usize, j: usize| {
            self.m[i][0].mul(&rhs.m[0][j], eta) + self.m[i][1].mul(&rhs.m[1][j], eta)
        };
        Self::new(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
    }

    /// Multiplication by a `K_2` scalar.
    pub fn scale(&self, c: &K2Pair<R>, eta: &R) -> Self {
        let [[m00, m01], [m10, m11]] = &self.m;
        Self::new(m00.mul(c, eta), m01.mul(c, eta), m10.mul(c, eta), m11.mul(c, eta))
    }

    pub fn det(&self, eta: &R) -> K2Pair<R> {
        self.m[0][0].mul(&self.m[1][1], eta) - self.m[0][1].mul(&self.m[1][0], eta)
    }
}

impl<R: Ring> Add for Mat2<R> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let [[a, b], [c, d]] = self.m;
        let [[e, f], [g, h]] = rhs.m;
        Self::new(a + e, b + f, c + g, d + h)
    }
}

impl<R: Ring> Sub for Mat2<R> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + rhs.neg()
    }
}

impl<R: Ring> Neg for Mat2<R> {
    type Output = Self;

    fn neg(self) -> Self {
        let [[a, b], [c, d]] = self.m;
        Self::new(-a, -b, -c, -d)
    }
}

/// Coordinates `(a1, a2, b1, b2)` of a point of the group scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatParam<R> {
    pub a1: R,
    pub a2: R,
    pub b1: R,
    pub b2: R,
}

impl<R: Ring> QuatParam<R> {
    pub fn new(a1: R, a2: R, b1: R, b2: R) -> Self {
        Self { a1, a2, b1, b2 }
    }

    pub fn identity() -> Self {
        Self::new(R::one(), R::zero(), R::zero(), R::zero())
    }

    pub fn alpha(&self) -> K2Pair<R> {
        K2Pair::new(self.a1.clone(), self.a2.clone())
    }

    pub fn beta(&self) -> K2Pair<R> {
        K2Pair::new(self.b1.clone(), self.b2.clone())
    }

    /// `[[alpha, pi conj(beta)], [beta, conj(alpha)]]`.
    pub fn matrix(&self, ctx: &QuatContext<R>) -> Mat2<R> {
        let (alpha, beta) = (self.alpha(), self.beta());
        Mat2::new(alpha.clone(), beta.conj().scale(&ctx.pi), beta, alpha.conj())
    }

    /// `a1^2 - eta a2^2 - pi (b1^2 - eta b2^2)`.
    pub fn delta(&self, ctx: &QuatContext<R>) -> R {
        let sq = |x: &R| x.mul_ref(x);
        let mut out = sq(&self.a1);
        out -= &ctx.eta.mul_ref(&sq(&self.a2));
        let mut b = sq(&self.b1);
        b -= &ctx.eta.mul_ref(&sq(&self.b2));
        out -= &ctx.pi.mul_ref(&b);
        out
    }
}

impl QuatParam<Sym> {
    /// The generic parameter with generators starting at variable `first`.
    pub fn generic(first: usize) -> Self {
        Self::new(
            Sym::var(first),
            Sym::var(first + 1),
            Sym::var(first + 2),
            Sym::var(first + 3),
        )
    }
}

/// The co-multiplication: coordinates of `g g'` in terms of those of `g`
/// and `g'`.
pub fn comult<R: Ring>(g: &QuatParam<R>, h: &QuatParam<R>, ctx: &QuatContext<R>) -> QuatParam<R> {
    let m = |x: &R, y: &R| x.mul_ref(y);
    let (pi, eta) = (&ctx.pi, &ctx.eta);

    let mut a1 = m(&g.a1, &h.a1);
    a1 += &m(eta, &m(&g.a2, &h.a2));
    a1 += &m(pi, &m(&g.b1, &h.b1));
    a1 -= &m(&m(eta, pi), &m(&g.b2, &h.b2));

    let mut a2 = m(&g.a2, &h.a1);
    a2 += &m(&g.a1, &h.a2);
    a2 += &m(pi, &m(&g.b1, &h.b2));
    a2 -= &m(pi, &m(&g.b2, &h.b1));

    let mut b1 = m(&g.a1, &h.b1);
    b1 -= &m(eta, &m(&g.a2, &h.b2));
    b1 += &m(&g.b1, &h.a1);
    b1 += &m(eta, &m(&g.b2, &h.a2));

    let mut b2 = m(&g.a1, &h.b2);
    b2 -= &m(&g.a2, &h.b1);
    b2 += &m(&g.b1, &h.a2);
    b2 += &m(&g.b2, &h.a1);

    QuatParam::new(a1, a2, b1, b2)
}

/// Whether the matrix of `comult(g, h)` is the product of the matrices.
pub fn comult_check<R: Ring>(g: &QuatParam<R>, h: &QuatParam<R>, ctx: &QuatContext<R>) -> bool {
    let prod = g.matrix(ctx).mul(&h.matrix(ctx), &ctx.eta);
    prod == comult(g, h, ctx).matrix(ctx)
}

/// The co-multiplication is associative, as a polynomial identity in three
/// generic parameters.
pub fn comult_associative() -> bool {
    let ctx = QuatContext::symbolic();
    let [g, h, k] = var::G.map(QuatParam::generic);
    comult(&comult(&g, &h, &ctx), &k, &ctx) == comult(&g, &comult(&h, &k, &ctx), &ctx)
}

/// `Delta` equals the determinant of the matrix image.
pub fn delta_check<R: Ring>(g: &QuatParam<R>, ctx: &QuatContext<R>) -> bool {
    g.matrix(ctx).det(&ctx.eta) == K2Pair::scalar(g.delta(ctx))
}

/// The symbolic identity `Delta = det = N(alpha) - pi N(beta)`.
pub fn delta_det_check() -> bool {
    let ctx = QuatContext::symbolic();
    let g = QuatParam::generic(var::G[0]);
    let norms = g.alpha().norm(&ctx.eta) - ctx.pi.clone() * &g.beta().norm(&ctx.eta);
    delta_check(&g, &ctx) && g.delta(&ctx) == norms
}

/// The basis `x1, x2, y1, y2` of the Lie algebra.
pub fn lie_basis<R: Ring>(ctx: &QuatContext<R>) -> [LieElement<R>; 4] {
    let zeta = K2Pair::zeta();
    let pi = K2Pair::scalar(ctx.pi.clone());
    let one = K2Pair::scalar(R::one());
    let zero = K2Pair::zero;
    [
        Mat2::identity(),
        Mat2::new(zeta.clone(), zero(), zero(), -zeta.clone()),
        Mat2::new(zero(), pi.clone(), one, zero()),
        Mat2::new(zero(), -zeta.scale(&ctx.pi), zeta, zero()),
    ]
}

pub fn lie_bracket<R: Ring>(z1: &LieElement<R>, z2: &LieElement<R>, eta: &R) -> LieElement<R> {
    z1.mul(z2, eta) - z2.mul(z1, eta)
}

/// `c1 x1 + c2 x2 + c3 y1 + c4 y2`.
pub fn lie_combination<R: Ring>(c: &[R; 4], ctx: &QuatContext<R>) -> LieElement<R> {
    lie_basis(ctx)
        .iter()
        .zip(c)
        .fold(Mat2::zero(), |acc, (z, ci)| acc + z.scale(&K2Pair::scalar(ci.clone()), &ctx.eta))
}

/// The three displayed bracket relations and centrality of `x1`.
pub fn verify_brackets() -> Vec<Finding> {
    let ctx = QuatContext::symbolic();
    let eta = &ctx.eta;
    let [x1, x2, y1, y2] = lie_basis(&ctx);
    let times = |c: Sym, z: &LieElement<Sym>| z.scale(&K2Pair::scalar(c), eta);
    let rel = |name: &str, lhs: LieElement<Sym>, rhs: LieElement<Sym>| {
        let ok = lhs == rhs;
        Finding::new(name, ok, (!ok).then(|| format!("{lhs:?} != {rhs:?}")))
    };
    let central = [&x1, &x2, &y1, &y2].iter().all(|z| lie_bracket(&x1, z, eta).is_zero());
    vec![
        rel("[x2,y1] = -2 y2", lie_bracket(&x2, &y1, eta), times(Sym::from_int(-2), &y2)),
        rel(
            "[x2,y2] = -2 zeta^2 y1",
            lie_bracket(&x2, &y2, eta),
            times(Sym::from_int(-2) * eta, &y1),
        ),
        rel("[y1,y2] = 2 pi x2", lie_bracket(&y1, &y2, eta), times(Sym::from_int(2) * &ctx.pi, &x2)),
        Finding::new("x1 central", central, None),
    ]
}

fn generic_lie(first: usize, ctx: &QuatContext<Sym>) -> LieElement<Sym> {
    let c = [0, 1, 2, 3].map(|i| Sym::var(first + i));
    lie_combination(&c, ctx)
}

/// Antisymmetry and the Jacobi identity for generic elements of the span of
/// the basis.
pub fn verify_lie_axioms() -> Vec<Finding> {
    let ctx = QuatContext::symbolic();
    let eta = &ctx.eta;
    let [u, v, w] = [0, 4, 8].map(|k| generic_lie(var::FREE + k, &ctx));
    let br = |a: &LieElement<Sym>, b: &LieElement<Sym>| lie_bracket(a, b, eta);
    let antisym = (br(&u, &v) + br(&v, &u)).is_zero();
    let jacobi = (br(&u, &br(&v, &w)) + br(&v, &br(&w, &u)) + br(&w, &br(&u, &v))).is_zero();
    vec![
        Finding::new("bracket antisymmetry", antisym, None),
        Finding::new("Jacobi identity", jacobi, None),
    ]
}

/// Valuations `(v(a1 - 1), v(a2), v(b1), v(b2))`; `+inf` for exact zeros.
pub type ValQuad = [RationalVal; 4];

fn gt(v: &RationalVal, bound: &BigRational) -> bool {
    *v > Val::Finite(bound.clone())
}

/// Membership in the wide-open subgroup of level `s`: all four inequalities
/// strict.
pub fn gso_member(v: &ValQuad, s: u32, q: u64) -> bool {
    let s = rat_int(s as i64);
    let sb = &s - rat(1, q as i64 + 1);
    gt(&v[0], &s) && gt(&v[1], &s) && gt(&v[2], &sb) && gt(&v[3], &sb)
}

/// Membership in the wide-open torus: `|a1 - 1| < 1`, `|a2| < 1` and
/// `b1 = b2 = 0`.
pub fn tso_member(v: &ValQuad) -> bool {
    let zero = BigRational::zero();
    gt(&v[0], &zero) && gt(&v[1], &zero) && v[2].is_infinite() && v[3].is_infinite()
}

/// A small grid of valuations around the thresholds of level `s`.
fn val_grid(s: u32, q: u64) -> Vec<RationalVal> {
    let s = s as i64;
    let d = q as i64 + 1;
    let mut out = vec![Val::Infinite];
    for k in -2..=2 {
        out.push(RationalVal::int(s + k));
        out.push(RationalVal::frac(d * (s + k) - 1, d));
        out.push(RationalVal::frac(2 * d * (s + k) - 1, 2 * d));
    }
    out
}

/// `T_0 = T ∩ G_0` on valuation quadruples, checked on a grid.
pub fn check_torus_intersection(q: u64) -> Finding {
    let grid = val_grid(0, q);
    for v0 in &grid {
        for v1 in &grid {
            for v2 in &grid {
                for v3 in &grid {
                    let v = [v0.clone(), v1.clone(), v2.clone(), v3.clone()];
                    let rhs = gso_member(&v, 0, q) && v2.is_infinite() && v3.is_infinite();
                    if tso_member(&v) != rhs {
                        return Finding::fail("torus = torus ∩ level 0", format!("q={q} v={v:?}"));
                    }
                }
            }
        }
    }
    Finding::check("torus = torus ∩ level 0", true, format!("q={q} grid={}^4", grid.len()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LatticeKind {
    /// The lattice of the analyticity theorem at level `s`.
    H,
    /// The improved level-0 lattice.
    H0Prime,
    /// The conjectural lattice of the injectivity discs.
    G,
}

impl LatticeKind {
    pub const ALL: [LatticeKind; 3] = [LatticeKind::H, LatticeKind::H0Prime, LatticeKind::G];

    pub fn label(self) -> &'static str {
        match self {
            LatticeKind::H => "h_s",
            LatticeKind::H0Prime => "h_0'",
            LatticeKind::G => "g_s",
        }
    }
}

/// `p`-adic valuations of the scalars in front of `x1, x2, y1, y2`.
pub fn lattice_vals(kind: LatticeKind, s: u32, p: u64) -> Result<[BigRational; 4]> {
    if !is_prime(p) {
        return Err(LtvError::Config(format!("lattices need K = Q_p; p = {p} is not prime")));
    }
    let p = p as i64;
    let si = rat_int(s as i64);
    let y_shift = rat(-1, p + 1);
    match kind {
        LatticeKind::H => {
            let ps = p
                .checked_pow(s)
                .and_then(|ps| ps.checked_mul(p - 1))
                .ok_or(LtvError::BoundExceeded {
                    what: "(p-1) p^s",
                    value: s as u64,
                    bound: 62,
                })?;
            let excess = rat(1, ps);
            let y = &si + &y_shift + &excess;
            Ok([si.clone(), &si + &excess, y.clone(), y])
        }
        LatticeKind::H0Prime if s == 0 => {
            let y = &y_shift + rat(1, p - 1);
            Ok([rat_int(0), rat_int(0), y.clone(), y])
        }
        LatticeKind::H0Prime => Err(LtvError::Precondition(format!("h_0' exists only at s = 0 (got s = {s})"))),
        LatticeKind::G => {
            let y = &si + &y_shift;
            Ok([si.clone(), si, y.clone(), y])
        }
    }
}

/// `L1 ⊆ L2` iff every generator valuation of `L1` is at least that of `L2`.
pub fn lattice_subset(l1: LatticeKind, l2: LatticeKind, s: u32, p: u64) -> Result<bool> {
    let (v1, v2) = (lattice_vals(l1, s, p)?, lattice_vals(l2, s, p)?);
    Ok(v1.iter().zip(&v2).all(|(a, b)| a >= b))
}

/// `h_s` is a proper sublattice of `g_s` for `s <= max_s`.
pub fn check_lattice_inclusion(max_s: u32, p: u64) -> Result<Finding> {
    for s in 0..=max_s {
        let sub = lattice_subset(LatticeKind::H, LatticeKind::G, s, p)?;
        let sup = lattice_subset(LatticeKind::G, LatticeKind::H, s, p)?;
        if !sub || sup {
            return Ok(Finding::fail(
                "h_s strictly inside g_s",
                format!("p={p} s={s} h⊆g={sub} g⊆h={sup}"),
            ));
        }
    }
    Ok(Finding::check("h_s strictly inside g_s", true, format!("p={p} s<={max_s}")))
}

/// Whether `g . Phi(u0)` stays in the image of the injectivity disc around
/// `u0` for every `u0` in the level-`s` disc.
pub fn injectivity_predicate(v_alpha_diff: &RationalVal, v_beta: &RationalVal, s: u32, q: u64) -> bool {
    let s = rat_int(s as i64);
    gt(v_alpha_diff, &s) && gt(v_beta, &(&s - rat(1, q as i64 + 1)))
}

/// The injectivity predicate agrees with membership in the level-`s`
/// subgroup on elements with `v(a1 - 1) = inf`, using
/// `v(alpha - conj(alpha)) = v(2 zeta a2) = v(a2)` and
/// `v(beta) = min(v(b1), v(b2))`. `None` for `p = 2`, where `2` is not a
/// unit.
pub fn check_injectivity_consistency(s: u32, p: u64, q: u64) -> Option<Finding> {
    if p == 2 {
        return None;
    }
    let name = "injectivity predicate = level-s membership";
    let grid = val_grid(s, q);
    for va2 in &grid {
        for vb1 in &grid {
            for vb2 in &grid {
                let vbeta = vb1.clone().min(vb2.clone());
                let lhs = injectivity_predicate(va2, &vbeta, s, q);
                let rhs = gso_member(&[Val::Infinite, va2.clone(), vb1.clone(), vb2.clone()], s, q);
                if lhs != rhs {
                    return Some(Finding::fail(name, format!("q={q} s={s} a2={va2} b1={vb1} b2={vb2}")));
                }
            }
        }
    }
    Some(Finding::check(name, true, format!("q={q} s={s}")))
}

/// The symbolic co-multiplication findings: general, unit and diagonal
/// cases, associativity and the determinant.
pub fn verify_group_law() -> Vec<Finding> {
    let ctx = QuatContext::symbolic();
    let g = QuatParam::generic(var::G[0]);
    let h = QuatParam::generic(var::G[1]);
    let unit = comult(&g, &QuatParam::identity(), &ctx) == g;
    let diag = |x: &QuatParam<Sym>| QuatParam::new(x.a1.clone(), x.a2.clone(), Sym::zero(), Sym::zero());
    let (gd, hd) = (diag(&g), diag(&h));
    let prod = gd.alpha().mul(&hd.alpha(), &ctx.eta);
    let diag_ok = comult(&gd, &hd, &ctx) == QuatParam::new(prod.a, prod.b, Sym::zero(), Sym::zero());
    vec![
        Finding::new("co-multiplication = matrix product", comult_check(&g, &h, &ctx), None),
        Finding::new("co-multiplication unit", unit, None),
        Finding::new("co-multiplication on the torus", diag_ok, None),
        Finding::new("co-multiplication associative", comult_associative(), None),
        Finding::new("Delta = determinant", delta_det_check(), None),
    ]
}

impl<R: Ring> Mat2<R> {
    /// Whether `self` has the shape `[[alpha, pi conj(beta)], [beta, conj(alpha)]]`.
    pub fn in_algebra(&self, ctx: &QuatContext<R>) -> bool {
        let [[m00, m01], [m10, m11]] = &self.m;
        *m11 == m00.conj() && *m01 == m10.conj().scale(&ctx.pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn sym(i: usize) -> Sym {
        Sym::var(i)
    }

    #[test]
    fn group_law() {
        for f in verify_group_law() {
            assert!(f.pass, "{f:?}");
        }
    }

    #[test]
    fn delta_examples() {
        let ctx = QuatContext::symbolic();
        let one = QuatParam::<Sym>::identity();
        assert_eq!(one.delta(&ctx), Sym::one());
        let b = QuatParam::new(Sym::zero(), Sym::zero(), Sym::one(), Sym::zero());
        assert_eq!(b.delta(&ctx), -sym(var::PI));
        assert!(delta_check(&b, &ctx));
    }

    #[test]
    fn concrete_comult() {
        let ctx = QuatContext {
            pi: BigInt::from(3),
            eta: BigInt::from(-1),
        };
        let int = |x: [i64; 4]| {
            let [a1, a2, b1, b2] = x.map(BigInt::from);
            QuatParam::new(a1, a2, b1, b2)
        };
        let (g, h) = (int([2, 5, -1, 7]), int([-3, 1, 4, 0]));
        assert!(comult_check(&g, &h, &ctx));
        let gh = comult(&g, &h, &ctx);
        assert_eq!(gh.delta(&ctx), g.delta(&ctx) * h.delta(&ctx));
        assert!(gh.matrix(&ctx).in_algebra(&ctx));
    }

    #[test]
    fn brackets() {
        for f in verify_brackets().into_iter().chain(verify_lie_axioms()) {
            assert!(f.pass, "{f:?}");
        }
        let ctx = QuatContext::symbolic();
        let [x1, _, y1, _] = lie_basis(&ctx);
        assert!(lie_bracket(&x1, &y1, &ctx.eta).is_zero());
    }

    #[test]
    fn membership_examples() {
        let inf = || Val::Infinite;
        assert!(gso_member(&[inf(), inf(), inf(), inf()], 5, 2));
        let one = || RationalVal::int(1);
        assert!(gso_member(&[one(), one(), one(), one()], 0, 3));
        assert!(!gso_member(&[RationalVal::int(0), inf(), inf(), inf()], 0, 3));
        let b = RationalVal::frac(-1, 4);
        assert!(!gso_member(&[one(), one(), b.clone(), inf()], 0, 3));
        assert!(gso_member(&[one(), one(), b, inf()], 0, 2));
        assert!(tso_member(&[one(), one(), inf(), inf()]));
        assert!(!tso_member(&[one(), one(), RationalVal::int(9), inf()]));
        for q in [2, 3, 4, 5, 7] {
            assert!(check_torus_intersection(q).pass);
        }
    }

    #[test]
    fn lattices() {
        for p in [2, 3, 5, 7] {
            let h = lattice_vals(LatticeKind::H, 0, p).unwrap();
            assert_eq!(h[1], rat(1, p as i64 - 1));
            let h0 = lattice_vals(LatticeKind::H0Prime, 0, p).unwrap();
            assert_eq!(h0[1], rat_int(0));
            let g = lattice_vals(LatticeKind::G, 3, p).unwrap();
            assert_eq!(g[2], rat(3 * (p as i64 + 1) - 1, p as i64 + 1));
            assert!(lattice_subset(LatticeKind::H, LatticeKind::H0Prime, 0, p).unwrap());
            assert!(check_lattice_inclusion(6, p).unwrap().pass);
            for s in 0..=6 {
                let h = lattice_vals(LatticeKind::H, s, p).unwrap();
                let g = lattice_vals(LatticeKind::G, s, p).unwrap();
                let excess = rat(1, (p as i64 - 1) * (p as i64).pow(s));
                assert_eq!(h[0], g[0]);
                for i in 1..4 {
                    assert_eq!(&h[i] - &g[i], excess);
                }
            }
        }
        assert!(lattice_vals(LatticeKind::H0Prime, 1, 3).is_err());
        assert!(lattice_vals(LatticeKind::G, 0, 4).is_err());
    }

    #[test]
    fn injectivity() {
        let inf = Val::Infinite;
        for s in 0..4 {
            assert!(injectivity_predicate(&inf, &inf, s, 3));
            assert!(!injectivity_predicate(&RationalVal::int(s as i64), &inf, s, 3));
        }
        assert!(check_injectivity_consistency(1, 2, 2).is_none());
        for (p, q) in [(3, 3), (5, 5), (3, 9)] {
            for s in 0..4 {
                assert!(check_injectivity_consistency(s, p, q).unwrap().pass);
            }
        }
    }

    fn small_lie() -> impl Strategy<Value = [i64; 4]> {
        prop::array::uniform4(-20i64..20)
    }

    proptest! {
        #[test]
        fn jacobi_on_integer_points(a in small_lie(), b in small_lie(), c in small_lie(),
                                    pi in 1i64..10, eta in -10i64..10) {
            let ctx = QuatContext { pi: BigInt::from(pi), eta: BigInt::from(eta) };
            let el = |c: [i64; 4]| lie_combination(&c.map(BigInt::from), &ctx);
            let (u, v, w) = (el(a), el(b), el(c));
            let br = |x: &LieElement<BigInt>, y: &LieElement<BigInt>| lie_bracket(x, y, &ctx.eta);
            prop_assert!((br(&u, &v) + br(&v, &u)).is_zero());
            let j = br(&u, &br(&v, &w)) + br(&v, &br(&w, &u)) + br(&w, &br(&u, &v));
            prop_assert!(j.is_zero());
        }

        #[test]
        fn comult_on_integer_points(g in prop::array::uniform4(-50i64..50),
                                    h in prop::array::uniform4(-50i64..50),
                                    pi in 1i64..10, eta in -10i64..10) {
            let ctx = QuatContext { pi: BigInt::from(pi), eta: BigInt::from(eta) };
            let qp = |x: [i64; 4]| {
                let [a1, a2, b1, b2] = x.map(BigInt::from);
                QuatParam::new(a1, a2, b1, b2)
            };
            let (g, h) = (qp(g), qp(h));
            prop_assert!(comult_check(&g, &h, &ctx));
            prop_assert_eq!(comult(&g, &h, &ctx).delta(&ctx), g.delta(&ctx) * h.delta(&ctx));
        }
    }
}
