//! Unlabeled equivalence of configurations.
//!
//! Two configurations match when some relabeling followed by a projective map
//! carries one onto the other. The guided search anchors on a 5-subset whose
//! signature appears exactly once in the fingerprint, pins the map down from
//! frame coordinates on four anchor points, and extends to the remaining
//! labels by exact image lookup. Every returned witness is re-verified point
//! by point before it leaves this module.
//!
//! Everything runs in a single worker, so the returned witness is
//! deterministic: anchors, candidate subsets, and bijections are scanned in
//! lexicographic order and the first verified witness wins.

use std::collections::HashMap;

use itertools::Itertools;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::fingerprint::subset_signatures;
use crate::invariants::all_c_values;
use crate::maps::{first_frame_quadruple, frame_map, labeled_equivalent, ProjMap};
use crate::point::ProjPoint;
use crate::rational::Rat;

/// Largest point count for the factorial search paths.
pub const BRUTE_FORCE_MAX_N: usize = 7;

/// Witness for unlabeled equivalence: `Q_i = map(P_{perm[i-1]})` for all i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchResult {
    /// 1-based label bijection; entry i-1 names the P point sent to Q_i.
    pub perm: Vec<usize>,
    pub map: ProjMap,
}

/// Search effort counters for the guided stage.
#[derive(Clone, Copy, Default, Debug)]
pub struct MatchStats {
    /// Anchor bijections examined, filter hits and misses alike. Fallback
    /// paths do not count here.
    pub bijection_tests: usize,
}

/// Recompute every image equality of a claimed witness exactly.
pub fn verify_match(p: &Configuration, q: &Configuration, result: &MatchResult) -> bool {
    if p.n() != q.n() || result.perm.len() != p.n() {
        return false;
    }
    if p.check_labels(&result.perm).is_err() {
        return false;
    }
    (1..=p.n()).all(|i| {
        let src = &p.points()[result.perm[i - 1] - 1];
        result.map.apply(src) == q.points()[i - 1]
    })
}

/// Decide unlabeled equivalence and produce a verified witness.
///
/// Needs at least five points per side and a non-degenerate first
/// configuration. Inputs so symmetric that no 5-subset signature is unique
/// fall back to exhaustive search, which is capped at
/// [`BRUTE_FORCE_MAX_N`] points.
pub fn match_configs(p: &Configuration, q: &Configuration) -> Result<Option<MatchResult>> {
    match_configs_with_stats(p, q).map(|(result, _)| result)
}

/// [`match_configs`] plus search effort counters.
pub fn match_configs_with_stats(
    p: &Configuration,
    q: &Configuration,
) -> Result<(Option<MatchResult>, MatchStats)> {
    let mut stats = MatchStats::default();
    if p.n() != q.n() {
        return Err(Error::DegenerateInput(format!(
            "size mismatch: {} vs {} points",
            p.n(),
            q.n()
        )));
    }
    if p.n() < 5 {
        return Err(Error::DegenerateInput(
            "unlabeled matching needs at least five points".into(),
        ));
    }
    let p_subsets = subset_signatures(p)
        .map_err(|e| Error::DegenerateInput(format!("first configuration: {e}")))?;
    // A degenerate second configuration cannot be equivalent to one whose
    // subset signatures are all defined, since degeneracies are preserved by
    // projective maps.
    let Ok(q_subsets) = subset_signatures(q) else {
        return Ok((None, stats));
    };
    if sorted_signatures(&p_subsets) != sorted_signatures(&q_subsets) {
        return Ok((None, stats));
    }

    let mut sig_count: HashMap<&(Rat, Rat), usize> = HashMap::new();
    for (_, sig) in &p_subsets {
        *sig_count.entry(sig).or_insert(0) += 1;
    }
    let anchor = p_subsets.iter().find(|(_, sig)| sig_count[sig] == 1);
    let Some((s_labels, anchor_sig)) = anchor else {
        // Every 5-subset signature repeats, so no anchor can start the
        // guided search; only exhaustive search remains.
        if p.n() <= BRUTE_FORCE_MAX_N {
            return Ok((brute_force_match(p, q)?, stats));
        }
        return Err(Error::DegenerateInput(format!(
            "no 5-subset has a unique signature and exhaustive matching is \
             capped at {BRUTE_FORCE_MAX_N} points"
        )));
    };

    let p_buckets = per_label_multisets(&p.subconfig(s_labels)?)?;
    let phi_p = frame_map(
        p.point(s_labels[0])?,
        p.point(s_labels[1])?,
        p.point(s_labels[2])?,
        p.point(s_labels[3])?,
    )?;
    let q_index: HashMap<&ProjPoint, usize> = q
        .points()
        .iter()
        .enumerate()
        .map(|(k, pt)| (pt, k + 1))
        .collect();

    for (t_labels, sig) in &q_subsets {
        if sig != anchor_sig {
            continue;
        }
        let q_buckets = per_label_multisets(&q.subconfig(t_labels)?)?;
        for bij in (1..=5usize).permutations(5) {
            stats.bijection_tests += 1;
            if (0..5).any(|a| p_buckets[a] != q_buckets[bij[a] - 1]) {
                continue;
            }
            if let Some(result) =
                extend_bijection(p, q, s_labels, t_labels, &bij, &phi_p, &q_index)?
            {
                return Ok((Some(result), stats));
            }
        }
    }

    // With a unique-signature anchor the scan above is exhaustive, so for
    // generic inputs reaching this point proves inequivalence. Crafted
    // equal-fingerprint inputs get a second, assignment-level search at
    // small n.
    if p.n() <= BRUTE_FORCE_MAX_N {
        return Ok((backtrack_match(p, q)?, stats));
    }
    Ok((None, stats))
}

/// Try all n! relabelings against the labeled-equivalence test.
///
/// Oracle for the guided search; capped at [`BRUTE_FORCE_MAX_N`] points.
pub fn brute_force_match(p: &Configuration, q: &Configuration) -> Result<Option<MatchResult>> {
    if p.n() != q.n() {
        return Err(Error::DegenerateInput(format!(
            "size mismatch: {} vs {} points",
            p.n(),
            q.n()
        )));
    }
    if p.n() < 4 {
        return Err(Error::DegenerateInput(
            "exhaustive matching needs at least four points".into(),
        ));
    }
    if p.n() > BRUTE_FORCE_MAX_N {
        return Err(Error::DegenerateInput(format!(
            "exhaustive matching is capped at {BRUTE_FORCE_MAX_N} points, got {}",
            p.n()
        )));
    }
    if first_frame_quadruple(p).is_none() {
        return Err(Error::DegenerateInput(
            "no four points of the first configuration are in general position".into(),
        ));
    }
    for perm in (1..=p.n()).permutations(p.n()) {
        if let Some(g) = labeled_equivalent(&p.permuted(&perm)?, q)? {
            let result = MatchResult { perm, map: g };
            debug_assert!(verify_match(p, q, &result));
            return Ok(Some(result));
        }
    }
    Ok(None)
}

fn sorted_signatures(subsets: &[(Vec<usize>, (Rat, Rat))]) -> Vec<&(Rat, Rat)> {
    let mut sigs: Vec<_> = subsets.iter().map(|(_, sig)| sig).collect();
    sigs.sort();
    sigs
}

/// Sorted multiset of c-values led by each label, one bucket per point.
fn per_label_multisets(config: &Configuration) -> Result<Vec<Vec<Rat>>> {
    let table = all_c_values(config)?;
    let mut buckets = vec![Vec::new(); config.n()];
    for (index, value) in table.iter() {
        buckets[index.labels()[0] - 1].push(value.clone());
    }
    for bucket in &mut buckets {
        bucket.sort();
    }
    Ok(buckets)
}

/// Grow one anchor bijection into a full verified witness, or reject it.
///
/// `bij[a]` names the 1-based position within `t_labels` that anchor
/// position a maps to. The map is pinned by the first four anchor points,
/// checked on the fifth, and the rest of the permutation is read off by
/// exact image lookup.
fn extend_bijection(
    p: &Configuration,
    q: &Configuration,
    s_labels: &[usize],
    t_labels: &[usize],
    bij: &[usize],
    phi_p: &ProjMap,
    q_index: &HashMap<&ProjPoint, usize>,
) -> Result<Option<MatchResult>> {
    let t = |a: usize| t_labels[bij[a] - 1];
    let Ok(phi_q) = frame_map(q.point(t(0))?, q.point(t(1))?, q.point(t(2))?, q.point(t(3))?)
    else {
        return Ok(None);
    };
    let g = phi_q.invert().compose(phi_p);
    if g.apply(p.point(s_labels[4])?) != *q.point(t(4))? {
        return Ok(None);
    }
    let mut perm = vec![0usize; p.n()];
    for a in 0..5 {
        perm[t(a) - 1] = s_labels[a];
    }
    for x in 1..=p.n() {
        if s_labels.contains(&x) {
            continue;
        }
        let image = g.apply(p.point(x)?);
        let Some(&y) = q_index.get(&image) else {
            return Ok(None);
        };
        if perm[y - 1] != 0 {
            return Ok(None);
        }
        perm[y - 1] = x;
    }
    let result = MatchResult { perm, map: g };
    Ok(verify_match(p, q, &result).then_some(result))
}

/// Assignment-level search: fill the permutation label by label, pruning by
/// equality of whole-configuration per-label c-multisets, and hand complete
/// assignments to the labeled-equivalence test.
fn backtrack_match(p: &Configuration, q: &Configuration) -> Result<Option<MatchResult>> {
    let n = p.n();
    let p_buckets = per_label_multisets(p)?;
    let q_buckets = per_label_multisets(q)?;
    // compat[i-1] lists the P labels whose c-multiset matches Q label i.
    let compat: Vec<Vec<usize>> = (1..=n)
        .map(|i| {
            (1..=n)
                .filter(|&x| p_buckets[x - 1] == q_buckets[i - 1])
                .collect()
        })
        .collect();
    let mut perm = vec![0usize; n];
    let mut used = vec![false; n + 1];
    assign(p, q, &compat, 0, &mut perm, &mut used)
}

fn assign(
    p: &Configuration,
    q: &Configuration,
    compat: &[Vec<usize>],
    pos: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Result<Option<MatchResult>> {
    if pos == p.n() {
        if let Some(g) = labeled_equivalent(&p.permuted(perm)?, q)? {
            let result = MatchResult { perm: perm.clone(), map: g };
            debug_assert!(verify_match(p, q, &result));
            return Ok(Some(result));
        }
        return Ok(None);
    }
    for &x in &compat[pos] {
        if used[x] {
            continue;
        }
        used[x] = true;
        perm[pos] = x;
        if let Some(result) = assign(p, q, compat, pos + 1, perm, used)? {
            return Ok(Some(result));
        }
        used[x] = false;
    }
    perm[pos] = 0;
    Ok(None)
}
