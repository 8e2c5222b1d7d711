//! Distributions of m-subsets under a pluggable congruence signature.
//!
//! A signature stands in for a group orbit: subsets with equal signature are
//! congruent under the group action. The multiset of signatures over all
//! m-subsets generalizes the five-point fingerprint to other groups; the
//! shipped instances are the projective (a, b) pair and one-dimensional
//! translation invariants. The 2-subset translation signature is blind to
//! reflection, which the demo reproduces as a counterexample: pair
//! distributions cannot tell a set from its negation.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::point::ProjPoint;
use crate::rational::{rat, rat_int, Rat};
use crate::signature::signature;

/// Congruence signature for m-element subsets of a domain.
///
/// The function must be symmetric in its input: reordering the subset cannot
/// change the key.
pub struct SubsetSignature<T> {
    m: usize,
    sig: Box<dyn Fn(&[T]) -> Result<Vec<Rat>> + Send + Sync>,
}

impl<T> SubsetSignature<T> {
    pub fn new(
        m: usize,
        sig: impl Fn(&[T]) -> Result<Vec<Rat>> + Send + Sync + 'static,
    ) -> Self {
        Self { m, sig: Box::new(sig) }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The canonical key of one m-element subset.
    pub fn eval(&self, subset: &[T]) -> Result<Vec<Rat>> {
        if subset.len() != self.m {
            return Err(Error::DegenerateInput(format!(
                "signature takes {} points, got {}",
                self.m,
                subset.len()
            )));
        }
        (self.sig)(subset)
    }
}

/// Multiset of signature keys with their multiplicities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistributionMultiset {
    counts: BTreeMap<Vec<Rat>, usize>,
}

impl DistributionMultiset {
    pub fn counts(&self) -> &BTreeMap<Vec<Rat>, usize> {
        &self.counts
    }

    /// Number of subsets counted; equals C(|points|, m).
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

/// The signature distribution over all m-subsets of a point set.
pub fn mu<T: Clone + Ord>(
    points: &[T],
    signature: &SubsetSignature<T>,
) -> Result<DistributionMultiset> {
    if points.len() < signature.m() {
        return Err(Error::TooFewPoints { need: signature.m(), got: points.len() });
    }
    let distinct: BTreeSet<&T> = points.iter().collect();
    if distinct.len() != points.len() {
        return Err(Error::DegenerateInput(
            "subset distributions need pairwise distinct points".into(),
        ));
    }
    let mut counts = BTreeMap::new();
    for subset in points.iter().cloned().combinations(signature.m()) {
        *counts.entry(signature.eval(&subset)?).or_insert(0usize) += 1;
    }
    Ok(DistributionMultiset { counts })
}

/// Translation-invariant key of an unordered pair: (x - y)^2.
///
/// Squaring keeps the value rational and symmetric; it is also invariant
/// under reflection, which is exactly the defect the counterexample
/// exploits.
pub fn translation2_sig(x: &Rat, y: &Rat) -> Rat {
    let d = x - y;
    &d * &d
}

/// Translation-invariant key of an unordered triple.
///
/// The two symmetric polynomials vanish on shifted copies' differences:
/// f1 = x^2 + y^2 + z^2 - xy - xz - yz and
/// f2 = (2x - y - z)(2y - x - z)(2z - x - y).
pub fn translation3_sig(x: &Rat, y: &Rat, z: &Rat) -> (Rat, Rat) {
    let f1 = x * x + y * y + z * z - x * y - x * z - y * z;
    let two = rat_int(2);
    let f2 = (&two * x - y - z) * (&two * y - x - z) * (&two * z - x - y);
    (f1, f2)
}

/// [`translation2_sig`] packaged for [`mu`].
pub fn translation2_signature() -> SubsetSignature<Rat> {
    SubsetSignature::new(2, |pts: &[Rat]| Ok(vec![translation2_sig(&pts[0], &pts[1])]))
}

/// [`translation3_sig`] packaged for [`mu`].
pub fn translation3_signature() -> SubsetSignature<Rat> {
    SubsetSignature::new(3, |pts: &[Rat]| {
        let (f1, f2) = translation3_sig(&pts[0], &pts[1], &pts[2]);
        Ok(vec![f1, f2])
    })
}

/// The five-point (a, b) signature packaged for [`mu`]; its distribution
/// carries the same content as the fingerprint.
pub fn five_point_ab_signature() -> SubsetSignature<ProjPoint> {
    SubsetSignature::new(5, |pts: &[ProjPoint]| {
        let config = Configuration::new(pts.to_vec())?;
        let sig = signature(&config)?;
        Ok(vec![sig.a, sig.b])
    })
}

/// Ground truth for the demo: the shift t with D = C + t, if one exists.
pub fn is_translate(c: &[Rat], d: &[Rat]) -> Option<Rat> {
    if c.len() != d.len() {
        return None;
    }
    if c.is_empty() {
        return Some(Rat::zero());
    }
    let mut cs = c.to_vec();
    let mut ds = d.to_vec();
    cs.sort();
    ds.sort();
    let t = &ds[0] - &cs[0];
    cs.iter()
        .zip(&ds)
        .all(|(a, b)| &(a + &t) == b)
        .then_some(t)
}

/// Outcome of one translation-group demonstration run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TranslationDemoReport {
    pub n: usize,
    pub seed: u64,
    /// The sampled base set C.
    pub points: Vec<Rat>,
    /// Pair distributions of C and -C agree (holds for every C).
    pub mu2_negation_equal: bool,
    /// C and -C are not translates; false flags a symmetric C, which makes
    /// the counterexample clause inapplicable.
    pub negation_not_translate: bool,
    /// Shift used to build the translated copy.
    pub translate_shift: Rat,
    /// Triple distributions of C and the translate agree.
    pub translate_mu3_equal: bool,
    /// The shift was recovered exactly from the point sets.
    pub translate_recovered: bool,
    /// Triple distributions of C and an independent sample differ.
    pub independent_mu3_differ: bool,
}

impl TranslationDemoReport {
    /// The counterexample clause only applies when C lacks the reflection
    /// symmetry.
    pub fn counterexample_applicable(&self) -> bool {
        self.negation_not_translate
    }

    /// Every assertion that applies to this run holds.
    pub fn all_applicable_hold(&self) -> bool {
        self.mu2_negation_equal
            && self.translate_mu3_equal
            && self.translate_recovered
            && self.independent_mu3_differ
    }
}

/// Resampling attempts for the independent set before giving up.
const INDEPENDENT_RETRIES: usize = 64;

/// Run the translation-group demonstration on a random n-point subset of
/// the rationals.
///
/// Checks that pair distributions cannot separate C from -C, that triple
/// distributions are translation-invariant with the shift recoverable, and
/// that an independent sample is separated.
pub fn demo_translation(n: usize, seed: u64) -> Result<TranslationDemoReport> {
    if n < 3 {
        return Err(Error::TooFewPoints { need: 3, got: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = random_rational_set(&mut rng, n);
    run_demo(points, n, seed, &mut rng)
}

fn run_demo(
    points: Vec<Rat>,
    n: usize,
    seed: u64,
    rng: &mut ChaCha8Rng,
) -> Result<TranslationDemoReport> {
    let mu2 = translation2_signature();
    let mu3 = translation3_signature();

    let negated: Vec<Rat> = points.iter().map(|p| -p).collect();
    let mu2_negation_equal = mu(&points, &mu2)? == mu(&negated, &mu2)?;
    let negation_not_translate = is_translate(&points, &negated).is_none();

    let mut shift = random_rational(rng);
    while shift.is_zero() {
        shift = random_rational(rng);
    }
    let mut translated: Vec<Rat> = points.iter().map(|p| p + &shift).collect();
    translated.shuffle(rng);
    let translate_mu3_equal = mu(&points, &mu3)? == mu(&translated, &mu3)?;
    let translate_recovered = is_translate(&points, &translated) == Some(shift.clone());

    let mut independent = random_rational_set(rng, n);
    let mut attempts = 0;
    while is_translate(&points, &independent).is_some() {
        attempts += 1;
        if attempts > INDEPENDENT_RETRIES {
            return Err(Error::ResamplingExhausted { n, bound: 999, attempts });
        }
        independent = random_rational_set(rng, n);
    }
    let independent_mu3_differ = mu(&points, &mu3)? != mu(&independent, &mu3)?;

    Ok(TranslationDemoReport {
        n,
        seed,
        points,
        mu2_negation_equal,
        negation_not_translate,
        translate_shift: shift,
        translate_mu3_equal,
        translate_recovered,
        independent_mu3_differ,
    })
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-999..=999), rng.gen_range(1..=9))
}

fn random_rational_set(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let r = random_rational(rng);
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::random_generic_config;
    use crate::fingerprint::fingerprint;

    fn rats(values: &[i64]) -> Vec<Rat> {
        values.iter().map(|&v| rat_int(v)).collect()
    }

    #[test]
    fn frozen_signature_values() {
        assert_eq!(translation2_sig(&rat_int(3), &rat_int(5)), rat_int(4));
        let (f1, f2) = translation3_sig(&rat_int(0), &rat_int(1), &rat_int(2));
        assert_eq!((f1, f2), (rat_int(3), rat_int(0)));
        let (f1, f2) = translation3_sig(&rat_int(0), &rat_int(0), &rat_int(0));
        assert!(f1.is_zero() && f2.is_zero());
    }

    #[test]
    fn signatures_are_symmetric_and_translation_invariant() {
        let (x, y, z) = (rat(7, 3), rat_int(-4), rat(1, 2));
        let t = rat(5, 9);
        assert_eq!(translation2_sig(&x, &y), translation2_sig(&y, &x));
        assert_eq!(
            translation2_sig(&(&x + &t), &(&y + &t)),
            translation2_sig(&x, &y)
        );
        let base = translation3_sig(&x, &y, &z);
        assert_eq!(translation3_sig(&z, &x, &y), base);
        assert_eq!(translation3_sig(&y, &x, &z), base);
        assert_eq!(
            translation3_sig(&(&x + &t), &(&y + &t), &(&z + &t)),
            base
        );
    }

    #[test]
    fn pair_distribution_cannot_see_negation() {
        let c = rats(&[0, 1, 4]);
        let negated = rats(&[0, -1, -4]);
        let sig = translation2_signature();
        assert_eq!(mu(&c, &sig).unwrap(), mu(&negated, &sig).unwrap());
        assert_eq!(is_translate(&c, &negated), None);
    }

    #[test]
    fn negation_law_holds_for_every_sampled_set() {
        let sig = translation2_signature();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for size in 2..=6 {
            let c = random_rational_set(&mut rng, size);
            let negated: Vec<Rat> = c.iter().map(|p| -p).collect();
            assert_eq!(mu(&c, &sig).unwrap(), mu(&negated, &sig).unwrap());
        }
    }

    #[test]
    fn translate_detection() {
        assert_eq!(is_translate(&rats(&[0, 1, 4]), &rats(&[10, 11, 14])), Some(rat_int(10)));
        let c = rats(&[0, 1, 4]);
        assert_eq!(is_translate(&c, &c), Some(rat_int(0)));
        // A symmetric set is its own negation shifted by zero.
        let sym = rats(&[-1, 0, 1]);
        let neg: Vec<Rat> = sym.iter().map(|p| -p).collect();
        assert_eq!(is_translate(&sym, &neg), Some(rat_int(0)));
        assert_eq!(is_translate(&rats(&[0, 1]), &rats(&[0, 1, 2])), None);
    }

    #[test]
    fn single_subset_distribution_is_one_entry() {
        let c = rats(&[2, 9, 11]);
        let d = mu(&c, &translation3_signature()).unwrap();
        assert_eq!(d.total(), 1);
        assert_eq!(d.counts().len(), 1);
    }

    #[test]
    fn totals_count_all_subsets() {
        let c = rats(&[1, 3, 9, 27, 81]);
        assert_eq!(mu(&c, &translation2_signature()).unwrap().total(), 10);
        assert_eq!(mu(&c, &translation3_signature()).unwrap().total(), 10);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let sig = translation3_signature();
        assert!(matches!(
            mu(&rats(&[1, 2]), &sig),
            Err(Error::TooFewPoints { need: 3, got: 2 })
        ));
        assert!(mu(&rats(&[1, 1, 2]), &sig).is_err());
        assert!(sig.eval(&rats(&[1, 2])).is_err());
    }

    #[test]
    fn ab_distribution_matches_the_fingerprint() {
        let config = random_generic_config(6, 14, 25).unwrap();
        let d = mu(config.points(), &five_point_ab_signature()).unwrap();
        let fp = fingerprint(&config).unwrap();
        let mut from_fp: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
        for (a, b) in fp.entries() {
            *from_fp.entry(vec![a.clone(), b.clone()]).or_insert(0) += 1;
        }
        assert_eq!(d.counts(), &from_fp);
        assert_eq!(d.total(), 6);
    }

    #[test]
    fn demo_passes_at_small_sizes() {
        for (n, seed) in [(3usize, 5u64), (4, 6), (6, 7)] {
            let report = demo_translation(n, seed).unwrap();
            assert!(report.all_applicable_hold());
            assert!(report.counterexample_applicable());
            assert!(!report.translate_shift.is_zero());
            assert_eq!(report.points.len(), n);
        }
        assert!(matches!(
            demo_translation(2, 1),
            Err(Error::TooFewPoints { need: 3, got: 2 })
        ));
    }

    #[test]
    fn symmetric_base_set_flags_the_counterexample_clause() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let report = run_demo(rats(&[-1, 0, 1]), 3, 9, &mut rng).unwrap();
        assert!(!report.counterexample_applicable());
        assert!(!report.negation_not_translate);
        // The distribution equality holds for every base set; only the
        // not-a-translate clause needs asymmetry.
        assert!(report.all_applicable_hold());
    }
}
