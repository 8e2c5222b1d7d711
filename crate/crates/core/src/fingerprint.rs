//! The joint distribution of five-point signatures over all 5-subsets.
//!
//! Sorted with multiplicities, the (a, b) pairs form a canonical fingerprint
//! of the configuration up to projective maps and relabeling. Generic
//! configurations are reconstructible from it.

use std::collections::BTreeSet;

use sha2::{Digest, Sha256};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::invariants::label_subsets;
use crate::maps::first_frame_quadruple;
use crate::rational::{format_rat_explicit, Rat};
use crate::signature::signature;

/// Canonically sorted multiset of (a, b) pairs, one per 5-subset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fingerprint {
    n: usize,
    entries: Vec<(Rat, Rat)>,
}

impl Fingerprint {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries in ascending lexicographic (a, b) order.
    pub fn entries(&self) -> &[(Rat, Rat)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Canonical text form: the point count, then one `a_num/a_den,b_num/b_den`
    /// line per entry, each line newline-terminated.
    pub fn serialize(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (a, b) in &self.entries {
            out.push_str(&format_rat_explicit(a));
            out.push(',');
            out.push_str(&format_rat_explicit(b));
            out.push('\n');
        }
        out
    }

    /// SHA-256 of the canonical text form, lowercase hex.
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(self.serialize().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Signature multiset over all 5-subsets, canonically sorted.
///
/// Fewer than five points have no 5-subsets and give an empty fingerprint.
/// Degenerate subsets are reported with their labels.
pub fn fingerprint(config: &Configuration) -> Result<Fingerprint> {
    let entries = subset_signatures(config)?
        .into_iter()
        .map(|(_, sig)| sig)
        .collect::<Vec<_>>();
    let mut entries = entries;
    entries.sort();
    Ok(Fingerprint { n: config.n(), entries })
}

/// Every 5-subset with its signature pair, subsets in lexicographic order.
pub(crate) fn subset_signatures(config: &Configuration) -> Result<Vec<(Vec<usize>, (Rat, Rat))>> {
    let mut out = Vec::new();
    if config.n() < 5 {
        return Ok(out);
    }
    for labels in label_subsets(config.n(), 5) {
        let sub = config.subconfig(&labels)?;
        let sig = signature(&sub).map_err(|e| {
            Error::DegenerateDenominator(format!("5-subset {labels:?}: {e}"))
        })?;
        out.push((labels, (sig.a, sig.b)));
    }
    Ok(out)
}

/// Structural equality of canonical forms.
pub fn fingerprints_equal(f1: &Fingerprint, f2: &Fingerprint) -> bool {
    f1 == f2
}

/// The four open conditions behind the reconstruction guarantee.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GenericityReport {
    pub points_distinct: bool,
    pub no_three_collinear: bool,
    pub subset_signatures_distinct: bool,
    pub frame_exists: bool,
}

impl GenericityReport {
    /// All four conditions hold.
    pub fn all(&self) -> bool {
        self.points_distinct
            && self.no_three_collinear
            && self.subset_signatures_distinct
            && self.frame_exists
    }
}

/// Evaluate the genericity predicates; degeneracies yield false flags, not
/// errors.
pub fn genericity_report(config: &Configuration) -> GenericityReport {
    let distinct_points: BTreeSet<_> = config.points().iter().collect();
    let points_distinct = distinct_points.len() == config.n();
    let no_three_collinear = config.no_three_collinear();
    let subset_signatures_distinct = match subset_signatures(config) {
        Ok(sigs) => {
            let distinct: BTreeSet<_> = sigs.iter().map(|(_, s)| s).collect();
            distinct.len() == sigs.len()
        }
        Err(_) => false,
    };
    let frame_exists = config.n() >= 4 && first_frame_quadruple(config).is_some();
    GenericityReport { points_distinct, no_three_collinear, subset_signatures_distinct, frame_exists }
}
