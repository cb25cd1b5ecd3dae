use serde::Serialize;

use crate::error::{LtvError, Result};

/// The local field data: residue characteristic `p`, residue degree `f`
/// (so `q = p^f`) and ramification index `e` (so `v_pi(p) = e`).
///
/// Valuations are computed in the model `pi^e = p`, i.e. in
/// `K = Q_q(p^{1/e})`; with the default `e = 1` this is `K = Q_q`, `pi = p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FieldParams {
    p: u64,
    f: u32,
    e: u32,
}

impl FieldParams {
    pub fn new(p: u64, f: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(LtvError::Config(format!("p = {p} is not prime")));
        }
        if f == 0 || e == 0 {
            return Err(LtvError::Config(format!(
                "f and e must be positive (got f = {f}, e = {e})"
            )));
        }
        if p.checked_pow(f).map_or(true, |q| q > 1 << 20) {
            return Err(LtvError::Config(format!("q = {p}^{f} is too large")));
        }
        Ok(Self { p, f, e })
    }

    /// Parameters with `f = e = 1`, the setting `K = Q_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, 1)
    }

    /// Parameters for residue field size `q`, unramified (`e = 1`).
    pub fn with_q(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q)
            .ok_or_else(|| LtvError::Config(format!("q = {q} is not a prime power")))?;
        Self::new(p, f, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^f` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let (mut rest, mut f) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_is_derived() {
        let fp = FieldParams::new(2, 3, 1).unwrap();
        assert_eq!(fp.q(), 8);
        assert_eq!(FieldParams::with_q(9).unwrap(), FieldParams::new(3, 2, 1).unwrap());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldParams::new(4, 1, 1).is_err());
        assert!(FieldParams::new(3, 0, 1).is_err());
        assert!(FieldParams::new(3, 1, 0).is_err());
        assert!(FieldParams::with_q(6).is_err());
        assert!(FieldParams::with_q(1).is_err());
    }
}
