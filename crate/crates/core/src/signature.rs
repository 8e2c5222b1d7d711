//! The symmetric five-point signature (a, b).
//!
//! Over all 120 index orderings of five points, `a` sums the squares and `b`
//! the fourth powers of the c-invariants; the pair is invariant under both
//! relabeling and projective maps. Thirty explicit rational functions of
//! just two c-values reproduce the whole invariant multiset, giving a fast
//! path `a = 4*A(X, Y)`, `b = 4*B(X, Y)` with `X = c[1,2,3,4,5]` and
//! `Y = c[2,1,3,4,5]`.

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::invariants::{all_c_values, c_value};
use crate::rational::Rat;

/// Which pair of symmetric functions a `Signature` carries.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SignatureMode {
    /// Sums of squares and fourth powers over all 120 orderings.
    PowerSum,
    /// Second and fourth elementary symmetric functions of the 30 canonical
    /// values.
    ElemSym,
}

/// Invariant pair of a five-point configuration.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Signature {
    pub a: Rat,
    pub b: Rat,
    pub mode: SignatureMode,
}

fn one() -> Rat {
    Rat::one()
}

/// The 30 rational functions of (X, Y) that evaluate to the full c-multiset
/// of a five-point configuration, returned sorted.
///
/// Base functions `X`, `Y`, `X/Y`, `(X-1)/(Y-1)`, `X(1-Y)/(X-Y)`, each
/// closed under `f -> 1/f, 1-f, 1/(1-f), (f-1)/f, f/(f-1)`.
pub fn m_values(x: &Rat, y: &Rat) -> Result<Vec<Rat>> {
    for (name, v) in [("X", x), ("Y", y)] {
        if v.is_zero() {
            return Err(Error::DegenerateDenominator(format!(
                "{name} = 0 leaves 1/f undefined for f = {name}"
            )));
        }
        if v.is_one() {
            return Err(Error::DegenerateDenominator(format!(
                "{name} = 1 leaves 1/(1-f) undefined for f = {name}"
            )));
        }
    }
    if x == y {
        return Err(Error::DegenerateDenominator(
            "X = Y leaves X(1-Y)/(X-Y) undefined".into(),
        ));
    }
    let base = [
        x.clone(),
        y.clone(),
        x / y,
        (x - one()) / (y - one()),
        x * (one() - y) / (x - y),
    ];
    let mut out = Vec::with_capacity(30);
    for f in base {
        // Given X, Y outside {0, 1} and X != Y, no base value hits 0 or 1.
        debug_assert!(!f.is_zero() && !f.is_one());
        out.push(f.clone());
        out.push(one() / &f);
        out.push(one() - &f);
        out.push(one() / (one() - &f));
        out.push((&f - one()) / &f);
        out.push(&f / (&f - one()));
    }
    out.sort();
    Ok(out)
}

/// Power-sum signature from the two generating c-values.
pub fn signature_from_xy(x: &Rat, y: &Rat) -> Result<Signature> {
    let values = m_values(x, y)?;
    let a: Rat = values.iter().map(|f| f * f).sum();
    let b: Rat = values.iter().map(|f| f * f * f * f).sum();
    Ok(Signature { a: a * Rat::from_integer(4.into()), b: b * Rat::from_integer(4.into()), mode: SignatureMode::PowerSum })
}

fn require_five_generic(config: &Configuration) -> Result<()> {
    if config.n() != 5 {
        return Err(Error::DegenerateInput(format!(
            "five-point signature needs exactly 5 points, got {}",
            config.n()
        )));
    }
    if let Some((i, j, k)) = config.first_collinear_triple() {
        return Err(Error::DegenerateDenominator(format!(
            "points {i}, {j}, {k} are collinear"
        )));
    }
    Ok(())
}

/// Power-sum signature by the defining 120-term sums.
pub fn signature_direct(config: &Configuration) -> Result<Signature> {
    require_five_generic(config)?;
    let mut a = Rat::from_integer(0.into());
    let mut b = Rat::from_integer(0.into());
    for t in (1..=5usize).permutations(5) {
        let c = c_value(config, t[0], t[1], t[2], t[3], t[4])?;
        let sq = &c * &c;
        b += &sq * &sq;
        a += sq;
    }
    Ok(Signature { a, b, mode: SignatureMode::PowerSum })
}

/// Power-sum signature; contractually equal to `signature_direct`.
///
/// Uses the two-value fast path. The fallback to the direct sums cannot
/// trigger for points in general position (every degenerate m-set
/// denominator forces a collinear triple) but stays as a guard.
pub fn signature(config: &Configuration) -> Result<Signature> {
    require_five_generic(config)?;
    let x = c_value(config, 1, 2, 3, 4, 5)?;
    let y = c_value(config, 2, 1, 3, 4, 5)?;
    match signature_from_xy(&x, &y) {
        Ok(sig) => Ok(sig),
        Err(Error::DegenerateDenominator(_)) => signature_direct(config),
        Err(e) => Err(e),
    }
}

/// Elementary-symmetric signature: (e2, e4) of the 30 canonical values.
pub fn esym_signature(config: &Configuration) -> Result<Signature> {
    require_five_generic(config)?;
    let table = all_c_values(config)?;
    let zero = || Rat::from_integer(0.into());
    let mut e = [one(), zero(), zero(), zero(), zero()];
    for v in table.values() {
        for j in (1..=4).rev() {
            let add = &e[j - 1] * v;
            e[j] += add;
        }
    }
    let [_, _, e2, _, e4] = e;
    Ok(Signature { a: e2, b: e4, mode: SignatureMode::ElemSym })
}
