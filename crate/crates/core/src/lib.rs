//! Exact computation of the torus action on the height-2 Lubin-Tate
//! deformation space, with machine-checked verification of the formulas,
//! vanishing-order bounds and norm estimates that govern its analyticity.
//!
//! The algebraic core ([`Poly`], [`Laurent`], [`MPoly`], [`quaternion::K2Pair`]) is
//! generic over the coefficient ring; the aliases below fix the concrete
//! arbitrary-precision instances used by the higher layers.

pub mod cert;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod gauss;
pub mod laurent;
pub mod mpoly;
pub mod params;
pub mod partition;
pub mod period;
pub mod poly;
pub mod quaternion;
pub mod report;
pub mod rfunc;
pub mod ring;
pub mod suite;
pub mod torus;
pub mod valuation;

use num_bigint::BigInt;

pub use error::{LtvError, Result};
pub use laurent::Laurent;
pub use mpoly::MPoly;
pub use params::FieldParams;
pub use poly::Poly;
pub use ring::{IntegerRing, Ring};
pub use valuation::{RationalVal, Val};

/// Element of `Z[pi, 1/pi]`, the universal coefficient ring.
pub type PiScalar = Laurent<BigInt>;
/// Polynomial in `x = E^(q+1)` over [`PiScalar`].
pub type XPoly = Poly<PiScalar>;
/// Polynomial in the torus parameter `E` over [`PiScalar`].
pub type EPoly = Poly<PiScalar>;
