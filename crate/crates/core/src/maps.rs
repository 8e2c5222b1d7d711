//! Invertible projective maps as exact matrices modulo scalars.
//!
//! A `ProjMap` stores the unique primitive integer matrix (first nonzero
//! entry positive, row-major) in its scalar class, so equality is
//! structural. `frame_map` sends four points in general position to the
//! standard frame; it is the workhorse behind labeled equivalence testing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::point::ProjPoint;
use crate::rational::Rat;

/// Determinant of three coordinate rows.
pub(crate) fn det3(rows: [&[BigInt; 3]; 3]) -> BigInt {
    let [a, b, c] = rows;
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// An element of the projective group, canonically scaled.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjMap {
    m: [[BigInt; 3]; 3],
}

impl ProjMap {
    /// Build from rational entries; the matrix must be invertible.
    pub fn new(entries: [[Rat; 3]; 3]) -> Result<Self> {
        let mut lcm = BigInt::one();
        for row in &entries {
            for e in row {
                lcm = lcm.lcm(e.denom());
            }
        }
        let ints = entries.map(|row| row.map(|e| e.numer() * (&lcm / e.denom())));
        Self::from_bigints(ints)
    }

    /// Build from integer entries; the matrix must be invertible.
    pub fn from_integers(entries: [[i64; 3]; 3]) -> Result<Self> {
        Self::from_bigints(entries.map(|row| row.map(BigInt::from)))
    }

    fn from_bigints(m: [[BigInt; 3]; 3]) -> Result<Self> {
        let map = Self { m: canonicalize(m) };
        if map.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(map)
    }

    pub fn identity() -> Self {
        Self::from_integers([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).expect("identity is invertible")
    }

    /// Canonical integer entries.
    pub fn entries(&self) -> &[[BigInt; 3]; 3] {
        &self.m
    }

    fn det(&self) -> BigInt {
        det3([&self.m[0], &self.m[1], &self.m[2]])
    }

    /// Image of a point under the induced action on the plane.
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let v = p.coords();
        let image = self.m.clone().map(|row| &row[0] * &v[0] + &row[1] * &v[1] + &row[2] * &v[2]);
        ProjPoint::from_bigints(image).expect("invertible map never sends a point to zero")
    }

    /// Apply to every point of a configuration.
    pub fn apply_config(&self, config: &Configuration) -> Configuration {
        let points = config.points().iter().map(|p| self.apply(p)).collect();
        Configuration::new(points).expect("configuration stays nonempty")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ProjMap) -> ProjMap {
        let mut product = [[BigInt::zero(), BigInt::zero(), BigInt::zero()],
            [BigInt::zero(), BigInt::zero(), BigInt::zero()],
            [BigInt::zero(), BigInt::zero(), BigInt::zero()]];
        for (r, row) in product.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|t| &self.m[r][t] * &other.m[t][c]).sum();
            }
        }
        Self::from_bigints(product).expect("product of invertible maps is invertible")
    }

    /// Inverse map, via the adjugate.
    pub fn invert(&self) -> ProjMap {
        let m = &self.m;
        let cof = |r: usize, c: usize| -> BigInt {
            let rows: Vec<usize> = (0..3).filter(|&x| x != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&x| x != c).collect();
            let minor = &m[rows[0]][cols[0]] * &m[rows[1]][cols[1]]
                - &m[rows[0]][cols[1]] * &m[rows[1]][cols[0]];
            if (r + c) % 2 == 0 {
                minor
            } else {
                -minor
            }
        };
        let mut adj = [[BigInt::zero(), BigInt::zero(), BigInt::zero()],
            [BigInt::zero(), BigInt::zero(), BigInt::zero()],
            [BigInt::zero(), BigInt::zero(), BigInt::zero()]];
        for (r, row) in adj.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = cof(c, r);
            }
        }
        Self::from_bigints(adj).expect("adjugate of an invertible matrix is invertible")
    }
}

fn canonicalize(m: [[BigInt; 3]; 3]) -> [[BigInt; 3]; 3] {
    let mut gcd = BigInt::zero();
    for row in &m {
        for e in row {
            gcd = gcd.gcd(e);
        }
    }
    if gcd.is_zero() {
        return m;
    }
    let mut out = m.map(|row| row.map(|e| &e / &gcd));
    let negative_lead = out
        .iter()
        .flatten()
        .find(|e| !e.is_zero())
        .is_some_and(Signed::is_negative);
    if negative_lead {
        out = out.map(|row| row.map(|e| -e));
    }
    out
}

/// The unique map sending the quadruple to the standard projective frame
/// `(1:0:0), (0:1:0), (0:0:1), (1:1:1)`.
///
/// Writing the fourth point in the basis of the first three fixes the
/// column scales; the map is the inverse of the rescaled column matrix.
pub fn frame_map(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint, p4: &ProjPoint) -> Result<ProjMap> {
    let [v1, v2, v3, v4] = [p1, p2, p3, p4].map(ProjPoint::coords);
    if det3([v1, v2, v3]).is_zero() {
        return Err(Error::ThreeCollinear(1, 2, 3));
    }
    let a1 = det3([v4, v2, v3]);
    if a1.is_zero() {
        return Err(Error::ThreeCollinear(2, 3, 4));
    }
    let a2 = det3([v1, v4, v3]);
    if a2.is_zero() {
        return Err(Error::ThreeCollinear(1, 3, 4));
    }
    let a3 = det3([v1, v2, v4]);
    if a3.is_zero() {
        return Err(Error::ThreeCollinear(1, 2, 4));
    }
    // Columns a_i * v_i; the scales solve v4 = a1*v1 + a2*v2 + a3*v3 up to
    // the common factor det[v1 v2 v3].
    let scales = [a1, a2, a3];
    let mut columns = [[BigInt::zero(), BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero(), BigInt::zero()]];
    let basis = [v1, v2, v3];
    for (r, row) in columns.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = &scales[c] * &basis[c][r];
        }
    }
    let map = ProjMap::from_bigints(columns)
        .expect("independent scaled columns form an invertible matrix")
        .invert();
    debug_assert_eq!(map.apply(p1), ProjPoint::from_integers(1, 0, 0).unwrap());
    debug_assert_eq!(map.apply(p4), ProjPoint::from_integers(1, 1, 1).unwrap());
    Ok(map)
}

/// Witness for label-preserving projective equivalence.
///
/// Returns the unique `g` with `g(P_i) = Q_i` for every label, or `None` if
/// the configurations lie in different orbits. Needs at least four points of
/// `P` in general position to pin the map down.
pub fn labeled_equivalent(p: &Configuration, q: &Configuration) -> Result<Option<ProjMap>> {
    if p.n() != q.n() {
        return Err(Error::DegenerateInput(format!(
            "size mismatch: {} vs {} points",
            p.n(),
            q.n()
        )));
    }
    if p.n() < 4 {
        return Err(Error::DegenerateInput(
            "equivalence testing needs at least four points".into(),
        ));
    }
    let Some(labels) = first_frame_quadruple(p) else {
        return Err(Error::DegenerateInput(
            "no four points of the first configuration are in general position".into(),
        ));
    };
    let [l1, l2, l3, l4] = labels;
    let phi_p = frame_map(p.point(l1)?, p.point(l2)?, p.point(l3)?, p.point(l4)?)
        .expect("quadruple chosen in general position");
    // If the same-labeled points of q are degenerate, no projective map can
    // relate the configurations.
    let Ok(phi_q) = frame_map(q.point(l1)?, q.point(l2)?, q.point(l3)?, q.point(l4)?) else {
        return Ok(None);
    };
    let g = phi_q.invert().compose(&phi_p);
    for i in 1..=p.n() {
        if g.apply(p.point(i)?) != *q.point(i)? {
            return Ok(None);
        }
    }
    Ok(Some(g))
}

/// Lexicographically first label quadruple of `p` in general position.
pub(crate) fn first_frame_quadruple(p: &Configuration) -> Option<[usize; 4]> {
    use itertools::Itertools;
    (1..=p.n()).combinations(4).find_map(|q| {
        let quad = [q[0], q[1], q[2], q[3]];
        let gp = quad
            .iter()
            .copied()
            .combinations(3)
            .all(|t| !p.bracket_int(t[0], t[1], t[2]).is_zero());
        gp.then_some(quad)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::random_generic_config;
    use crate::testutil::frame5;

    fn pt(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_integers(x, y, z).unwrap()
    }

    #[test]
    fn apply_identity_and_diagonal() {
        let id = ProjMap::identity();
        assert_eq!(id.apply(&pt(1, 2, 3)), pt(1, 2, 3));
        let diag = ProjMap::from_integers([[6, 0, 0], [0, 3, 0], [0, 0, 2]]).unwrap();
        assert_eq!(diag.apply(&pt(1, 2, 3)), pt(1, 1, 1));
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let g = ProjMap::from_integers([[2, 1, 0], [0, 1, 5], [3, 0, 1]]).unwrap();
        assert_eq!(g.compose(&g.invert()), ProjMap::identity());
        assert_eq!(g.invert().compose(&g), ProjMap::identity());
    }

    #[test]
    fn canonical_scaling_identifies_scalar_multiples() {
        let a = ProjMap::from_integers([[2, 0, 0], [0, 2, 0], [0, 0, 2]]).unwrap();
        assert_eq!(a, ProjMap::identity());
        let b = ProjMap::from_integers([[-2, 4, 0], [0, 2, 0], [0, 0, 2]]).unwrap();
        let c = ProjMap::from_integers([[1, -2, 0], [0, -1, 0], [0, 0, -1]]).unwrap();
        assert_eq!(b, c);
    }

    #[test]
    fn singular_matrix_rejected() {
        assert!(matches!(
            ProjMap::from_integers([[1, 2, 3], [2, 4, 6], [0, 0, 1]]),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn frame_map_fixes_the_standard_frame() {
        let g = frame_map(&pt(1, 0, 0), &pt(0, 1, 0), &pt(0, 0, 1), &pt(1, 1, 1)).unwrap();
        assert_eq!(g, ProjMap::identity());
    }

    #[test]
    fn frame_map_on_scaled_fourth_point() {
        let g = frame_map(&pt(1, 0, 0), &pt(0, 1, 0), &pt(0, 0, 1), &pt(1, 2, 3)).unwrap();
        assert_eq!(g, ProjMap::from_integers([[6, 0, 0], [0, 3, 0], [0, 0, 2]]).unwrap());
    }

    #[test]
    fn frame_map_reports_collinear_triples() {
        let err = frame_map(&pt(1, 0, 0), &pt(0, 1, 0), &pt(1, 1, 0), &pt(0, 0, 1)).unwrap_err();
        assert_eq!(err, Error::ThreeCollinear(1, 2, 3));
        let err = frame_map(&pt(1, 0, 0), &pt(0, 1, 0), &pt(0, 0, 1), &pt(1, 1, 0)).unwrap_err();
        assert_eq!(err, Error::ThreeCollinear(1, 2, 4));
    }

    #[test]
    fn frame_map_hits_all_four_frame_points() {
        let quad = [pt(3, 1, 1), pt(-1, 2, 1), pt(0, 1, -4), pt(5, 5, 1)];
        let g = frame_map(&quad[0], &quad[1], &quad[2], &quad[3]).unwrap();
        assert_eq!(g.apply(&quad[0]), pt(1, 0, 0));
        assert_eq!(g.apply(&quad[1]), pt(0, 1, 0));
        assert_eq!(g.apply(&quad[2]), pt(0, 0, 1));
        assert_eq!(g.apply(&quad[3]), pt(1, 1, 1));
    }

    #[test]
    fn labeled_equivalence_recovers_the_map() {
        let p = frame5();
        assert_eq!(labeled_equivalent(&p, &p).unwrap(), Some(ProjMap::identity()));
        let g = ProjMap::from_integers([[1, 2, 0], [0, 1, 1], [2, 0, 3]]).unwrap();
        let q = g.apply_config(&p);
        assert_eq!(labeled_equivalent(&p, &q).unwrap(), Some(g));
    }

    #[test]
    fn labeled_equivalence_separates_orbits() {
        let p = frame5();
        let mut rows = vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 4]];
        let q = Configuration::from_integer_rows(&rows).unwrap();
        assert_eq!(labeled_equivalent(&p, &q).unwrap(), None);
        rows[4] = [1, 2, 3];
        let back = Configuration::from_integer_rows(&rows).unwrap();
        assert!(labeled_equivalent(&p, &back).unwrap().is_some());
    }

    #[test]
    fn labeled_equivalence_rejects_small_or_mismatched_input() {
        let p = frame5();
        let q = random_generic_config(6, 1, 10).unwrap();
        assert!(labeled_equivalent(&p, &q).is_err());
        let tri = p.subconfig(&[1, 2, 3]).unwrap();
        assert!(labeled_equivalent(&tri, &tri).is_err());
    }

    #[test]
    fn labeled_equivalence_none_when_target_quadruple_degenerates() {
        let p = frame5();
        // Same labels, but q's first four points contain a collinear triple.
        let q = Configuration::from_integer_rows(&[
            [1, 0, 0],
            [0, 1, 0],
            [1, 1, 0],
            [1, 1, 1],
            [1, 2, 3],
        ])
        .unwrap();
        assert_eq!(labeled_equivalent(&p, &q).unwrap(), None);
    }
}
