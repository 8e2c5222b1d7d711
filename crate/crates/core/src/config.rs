//! Ordered, labeled point configurations and bracket determinants.
//!
//! Labels are 1-based positions in the list. The bracket `[i, j, k]` is the
//! determinant of the canonical coordinate rows of three points; it vanishes
//! exactly when the points are collinear.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::maps::det3;
use crate::point::ProjPoint;
use crate::rational::Rat;
use crate::signature::signature;

/// An ordered list of projective points, labeled `1..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Configuration {
    points: Vec<ProjPoint>,
}

impl Configuration {
    /// Wrap a nonempty point list.
    pub fn new(points: Vec<ProjPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::DegenerateInput("configuration needs at least one point".into()));
        }
        Ok(Self { points })
    }

    /// Convenience constructor from integer coordinate rows.
    pub fn from_integer_rows(rows: &[[i64; 3]]) -> Result<Self> {
        let points = rows
            .iter()
            .map(|&[x, y, z]| ProjPoint::from_integers(x, y, z))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// The point with 1-based label `i`.
    pub fn point(&self, i: usize) -> Result<&ProjPoint> {
        self.check_labels(&[i])?;
        Ok(&self.points[i - 1])
    }

    /// Validate that labels are in `1..=n` and pairwise distinct.
    pub fn check_labels(&self, labels: &[usize]) -> Result<()> {
        for (pos, &l) in labels.iter().enumerate() {
            if l == 0 || l > self.n() {
                return Err(Error::InvalidLabels(format!(
                    "label {l} out of range 1..={}",
                    self.n()
                )));
            }
            if labels[..pos].contains(&l) {
                return Err(Error::InvalidLabels(format!("label {l} repeated in {labels:?}")));
            }
        }
        Ok(())
    }

    /// Bracket determinant `[i, j, k]` of three distinct labels.
    pub fn bracket(&self, i: usize, j: usize, k: usize) -> Result<Rat> {
        self.check_labels(&[i, j, k])?;
        Ok(Rat::from_integer(self.bracket_int(i, j, k)))
    }

    /// Integer bracket without label validation; callers validate up front.
    pub(crate) fn bracket_int(&self, i: usize, j: usize, k: usize) -> BigInt {
        det3([
            self.points[i - 1].coords(),
            self.points[j - 1].coords(),
            self.points[k - 1].coords(),
        ])
    }

    /// True iff every label triple spans the plane.
    pub fn no_three_collinear(&self) -> bool {
        self.first_collinear_triple().is_none()
    }

    /// The lexicographically first collinear triple, if any.
    pub fn first_collinear_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.n();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    if self.bracket_int(i, j, k).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// The configuration `(P_{perm(1)}, ..., P_{perm(n)})`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n() {
            return Err(Error::InvalidLabels(format!(
                "permutation length {} does not match n = {}",
                perm.len(),
                self.n()
            )));
        }
        self.check_labels(perm)?;
        let points = perm.iter().map(|&l| self.points[l - 1].clone()).collect();
        Ok(Self { points })
    }

    /// The sub-configuration on the given labels, in the given order.
    pub fn subconfig(&self, labels: &[usize]) -> Result<Self> {
        self.check_labels(labels)?;
        if labels.is_empty() {
            return Err(Error::DegenerateInput("empty label set".into()));
        }
        let points = labels.iter().map(|&l| self.points[l - 1].clone()).collect();
        Ok(Self { points })
    }
}

/// Retry cap per point before the whole configuration is resampled.
const POINT_RETRIES: usize = 1000;
/// Full restarts before giving up.
const CONFIG_RESTARTS: usize = 64;

/// Deterministic rejection sampler for generic configurations.
///
/// Coordinates are integers in `[-coord_bound, coord_bound]`. The result has
/// no three collinear points, and for `n >= 5` all five-point signatures are
/// pairwise distinct, so every invariant in this crate is defined on it.
/// Identical `(n, seed, coord_bound)` always yield the identical output.
pub fn random_generic_config(n: usize, seed: u64, coord_bound: i64) -> Result<Configuration> {
    if n == 0 {
        return Err(Error::DegenerateInput("n must be at least 1".into()));
    }
    if coord_bound < 2 {
        return Err(Error::DegenerateInput("coord_bound must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'restart: for _ in 0..CONFIG_RESTARTS {
        let mut points: Vec<ProjPoint> = Vec::with_capacity(n);
        for _ in 0..n {
            let mut placed = false;
            'attempt: for _ in 0..POINT_RETRIES {
                let coords = [(); 3].map(|_| BigInt::from(rng.gen_range(-coord_bound..=coord_bound)));
                let Ok(candidate) = ProjPoint::from_bigints(coords) else {
                    continue;
                };
                if points.contains(&candidate) {
                    continue;
                }
                for a in 0..points.len() {
                    for b in a + 1..points.len() {
                        let det = det3([points[a].coords(), points[b].coords(), candidate.coords()]);
                        if det.is_zero() {
                            continue 'attempt;
                        }
                    }
                }
                points.push(candidate);
                placed = true;
                break;
            }
            if !placed {
                continue 'restart;
            }
        }
        let config = Configuration { points };
        if n >= 5 && !distinct_subset_signatures(&config) {
            continue 'restart;
        }
        return Ok(config);
    }
    Err(Error::ResamplingExhausted {
        n,
        bound: coord_bound,
        attempts: CONFIG_RESTARTS * POINT_RETRIES,
    })
}

fn distinct_subset_signatures(config: &Configuration) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    for labels in crate::invariants::label_subsets(config.n(), 5) {
        let Ok(sub) = config.subconfig(&labels) else {
            return false;
        };
        let Ok(sig) = signature(&sub) else {
            return false;
        };
        if !seen.insert((sig.a, sig.b)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use crate::testutil::frame5;

    #[test]
    fn bracket_of_identity_rows_is_one() {
        let c = Configuration::from_integer_rows(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(c.bracket(1, 2, 3).unwrap(), rat_int(1));
    }

    #[test]
    fn bracket_matches_cofactor_expansion() {
        let c = Configuration::from_integer_rows(&[[1, 0, 0], [0, 1, 0], [1, 2, 3]]).unwrap();
        assert_eq!(c.bracket(1, 2, 3).unwrap(), rat_int(3));
    }

    #[test]
    fn repeated_projective_point_gives_zero_bracket() {
        let c = Configuration::from_integer_rows(&[[1, 0, 0], [2, 0, 0], [0, 0, 1]]).unwrap();
        assert_eq!(c.bracket(1, 2, 3).unwrap(), rat_int(0));
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let c = frame5();
        for (i, j, k) in [(1, 2, 4), (2, 3, 5), (1, 4, 5)] {
            let b = c.bracket(i, j, k).unwrap();
            assert_eq!(c.bracket(j, i, k).unwrap(), -b.clone());
            assert_eq!(c.bracket(i, k, j).unwrap(), -b.clone());
            assert_eq!(c.bracket(k, i, j).unwrap(), b.clone());
        }
    }

    #[test]
    fn bracket_validates_labels() {
        let c = frame5();
        assert!(matches!(c.bracket(0, 1, 2), Err(Error::InvalidLabels(_))));
        assert!(matches!(c.bracket(1, 2, 6), Err(Error::InvalidLabels(_))));
        assert!(matches!(c.bracket(1, 2, 2), Err(Error::InvalidLabels(_))));
    }

    #[test]
    fn collinearity_detection() {
        assert!(frame5().no_three_collinear());
        let line = Configuration::from_integer_rows(&[
            [1, 0, 0],
            [0, 1, 0],
            [1, 1, 0],
            [0, 0, 1],
        ])
        .unwrap();
        assert!(!line.no_three_collinear());
        assert_eq!(line.first_collinear_triple(), Some((1, 2, 3)));
        let duplicated = Configuration::from_integer_rows(&[
            [1, 0, 0],
            [2, 0, 0],
            [0, 1, 0],
        ])
        .unwrap();
        assert!(!duplicated.no_three_collinear());
    }

    #[test]
    fn permuted_reorders_points() {
        let c = frame5();
        let p = c.permuted(&[2, 1, 3, 4, 5]).unwrap();
        assert_eq!(p.point(1).unwrap(), c.point(2).unwrap());
        assert_eq!(p.point(2).unwrap(), c.point(1).unwrap());
        assert!(c.permuted(&[1, 1, 2, 3, 4]).is_err());
        assert!(c.permuted(&[1, 2, 3]).is_err());
    }

    #[test]
    fn generator_is_deterministic_and_generic() {
        let a = random_generic_config(5, 7, 10).unwrap();
        let b = random_generic_config(5, 7, 10).unwrap();
        assert_eq!(a, b);
        assert!(a.no_three_collinear());
        let c = random_generic_config(8, 3, 50).unwrap();
        assert!(c.no_three_collinear());
        let unique: std::collections::BTreeSet<_> = c.points().iter().cloned().collect();
        assert_eq!(unique.len(), 8);
    }

    #[test]
    fn generator_rejects_bad_arguments() {
        assert!(random_generic_config(0, 1, 10).is_err());
        assert!(random_generic_config(5, 1, 1).is_err());
    }

    #[test]
    fn generator_exhausts_on_tiny_bound() {
        // 2 is a legal bound but cannot host 40 points in general position.
        let err = random_generic_config(40, 1, 2).unwrap_err();
        assert!(matches!(err, Error::ResamplingExhausted { .. }));
    }
}
