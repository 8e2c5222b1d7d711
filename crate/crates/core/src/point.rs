//! Projective points with a canonical integer representative.
//!
//! Homogeneous coordinates are scaled to a primitive integer triple whose
//! first nonzero entry is positive, so equality, ordering and hashing are
//! structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// A point of the projective plane, stored canonically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: [BigInt; 3],
}

impl ProjPoint {
    /// Build from homogeneous rational coordinates; `(0, 0, 0)` is rejected.
    pub fn new(x: Rat, y: Rat, z: Rat) -> Result<Self> {
        let lcm = x.denom().lcm(y.denom()).lcm(z.denom());
        let ints = [&x, &y, &z].map(|c| c.numer() * (&lcm / c.denom()));
        Self::from_bigints(ints)
    }

    /// Build from integer coordinates.
    pub fn from_integers(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::from_bigints([x, y, z].map(BigInt::from))
    }

    pub(crate) fn from_bigints(coords: [BigInt; 3]) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::Parse("point (0, 0, 0) is not projective".into()));
        }
        Ok(Self { coords: canonicalize(coords) })
    }

    /// The canonical primitive integer triple.
    pub fn coords(&self) -> &[BigInt; 3] {
        &self.coords
    }
}

fn canonicalize(coords: [BigInt; 3]) -> [BigInt; 3] {
    let gcd = coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out = coords.map(|c| &c / &gcd);
    if out.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
        out = out.map(|c| -c);
    }
    out
}

impl std::fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}
