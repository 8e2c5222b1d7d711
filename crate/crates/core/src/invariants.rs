//! The five-index cross-ratio invariants `c[i,j,k,l,m]`, their canonical
//! labeling, and the relation checker.
//!
//! `c[i,j,k,l,m] = ([i,j,k][i,l,m]) / ([i,j,l][i,k,m])` is invariant under
//! projective maps and under rescaling any single point. Four index orders
//! always give the same value; the canonical representative of that orbit
//! puts the minimum of the last four labels in the second slot.
//!
//! The relation checker evaluates every index instance directly from bracket
//! determinants. It deliberately does not read values back from a `CTable`,
//! where the symmetry family would hold by construction; the table-backed
//! variant exists as a fault-injection target for tests of the checker
//! itself.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Canonical five-index label of a c-invariant.
///
/// The orbit `{(j,k,l,m), (k,j,m,l), (l,m,j,k), (m,l,k,j)}` (first index
/// fixed) yields equal values; exactly one member has the minimal second
/// label, and that member is stored.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CIndex([usize; 5]);

impl CIndex {
    /// Canonicalize an index tuple; labels must be positive and distinct.
    pub fn new(i: usize, j: usize, k: usize, l: usize, m: usize) -> Result<Self> {
        let labels = [i, j, k, l, m];
        if labels.contains(&0) {
            return Err(Error::InvalidLabels(format!("labels must be positive: {labels:?}")));
        }
        for (pos, l) in labels.iter().enumerate() {
            if labels[..pos].contains(l) {
                return Err(Error::InvalidLabels(format!("repeated label {l} in {labels:?}")));
            }
        }
        let orbit = [
            [i, j, k, l, m],
            [i, k, j, m, l],
            [i, l, m, j, k],
            [i, m, l, k, j],
        ];
        let least = *[j, k, l, m].iter().min().expect("nonempty");
        let canonical = orbit.into_iter().find(|t| t[1] == least).expect("unique orbit member");
        Ok(Self(canonical))
    }

    pub fn labels(&self) -> [usize; 5] {
        self.0
    }
}

impl std::fmt::Display for CIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [i, j, k, l, m] = self.0;
        write!(f, "c[{i},{j},{k},{l},{m}]")
    }
}

/// Canonical representative of the index orbit of `c[i,j,k,l,m]`.
pub fn canonical_cindex(i: usize, j: usize, k: usize, l: usize, m: usize) -> Result<CIndex> {
    CIndex::new(i, j, k, l, m)
}

/// Number of canonical indices for an n-point configuration.
pub fn canonical_count(n: usize) -> usize {
    if n < 5 {
        0
    } else {
        n * (n - 1) * (n - 2) * (n - 3) * (n - 4) / 4
    }
}

/// All k-element label subsets of `1..=n`, ascending, in lexicographic order.
pub(crate) fn label_subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=n).combinations(k)
}

/// Map from every canonical index to its exact value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CTable {
    n: usize,
    entries: BTreeMap<CIndex, Rat>,
}

impl CTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value at a canonical index.
    pub fn get(&self, index: &CIndex) -> Option<&Rat> {
        self.entries.get(index)
    }

    /// Value at an arbitrary index order.
    pub fn value(&self, i: usize, j: usize, k: usize, l: usize, m: usize) -> Result<&Rat> {
        let idx = CIndex::new(i, j, k, l, m)?;
        self.entries
            .get(&idx)
            .ok_or_else(|| Error::InvalidLabels(format!("{idx} not in table (n = {})", self.n)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CIndex, &Rat)> {
        self.entries.iter()
    }

    pub fn values(&self) -> impl Iterator<Item = &Rat> {
        self.entries.values()
    }

    /// Overwrite one entry. This exists so checker tests can inject faults;
    /// a table built by `all_c_values` never needs it.
    pub fn set(&mut self, index: CIndex, value: Rat) {
        self.entries.insert(index, value);
    }
}

/// Memoizing direct evaluator: brackets and ordered c-values from one config.
struct CEval<'a> {
    config: &'a Configuration,
    brackets: HashMap<[usize; 3], BigInt>,
    cache: HashMap<[usize; 5], Rat>,
}

impl<'a> CEval<'a> {
    fn new(config: &'a Configuration) -> Self {
        Self { config, brackets: HashMap::new(), cache: HashMap::new() }
    }

    fn bracket(&mut self, i: usize, j: usize, k: usize) -> BigInt {
        self.brackets
            .entry([i, j, k])
            .or_insert_with(|| self.config.bracket_int(i, j, k))
            .clone()
    }

    fn c(&mut self, t: [usize; 5]) -> Result<Rat> {
        if let Some(v) = self.cache.get(&t) {
            return Ok(v.clone());
        }
        let [i, j, k, l, m] = t;
        let d1 = self.bracket(i, j, l);
        if d1.is_zero() {
            return Err(degenerate(i, j, l));
        }
        let d2 = self.bracket(i, k, m);
        if d2.is_zero() {
            return Err(degenerate(i, k, m));
        }
        let n1 = self.bracket(i, j, k);
        let n2 = self.bracket(i, l, m);
        let value = Rat::new(n1 * n2, d1 * d2);
        self.cache.insert(t, value.clone());
        Ok(value)
    }
}

fn degenerate(a: usize, b: usize, c: usize) -> Error {
    Error::DegenerateDenominator(format!("bracket [{a},{b},{c}] is zero"))
}

/// Exact value of `c[i,j,k,l,m]` on a configuration.
pub fn c_value(config: &Configuration, i: usize, j: usize, k: usize, l: usize, m: usize) -> Result<Rat> {
    config.check_labels(&[i, j, k, l, m])?;
    CEval::new(config).c([i, j, k, l, m])
}

/// Every canonical c-value of the configuration.
///
/// Fewer than five points have no five-index invariants; the table is empty.
pub fn all_c_values(config: &Configuration) -> Result<CTable> {
    let n = config.n();
    let mut entries = BTreeMap::new();
    if n >= 5 {
        let mut eval = CEval::new(config);
        for i in 1..=n {
            for subset in (1..=n).filter(|&x| x != i).combinations(4) {
                let j = subset[0];
                for rest in subset[1..].iter().copied().permutations(3) {
                    let (k, l, m) = (rest[0], rest[1], rest[2]);
                    let value = eval.c([i, j, k, l, m])?;
                    entries.insert(CIndex([i, j, k, l, m]), value);
                }
            }
        }
    }
    debug_assert_eq!(entries.len(), canonical_count(n));
    Ok(CTable { n, entries })
}

/// True iff all table values are pairwise distinct.
///
/// Holds for generic configurations and serves as a genericity certificate;
/// special positions may legitimately collide.
pub fn generic_distinctness(table: &CTable) -> bool {
    let distinct: BTreeSet<&Rat> = table.values().collect();
    distinct.len() == table.len()
}

/// The five relation families among the c-invariants.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RelationFamily {
    /// `c[i,j,k,l,m] = c[i,k,j,m,l] = c[i,l,m,j,k] = c[i,m,l,k,j]`
    Symmetry,
    /// `c[i,j,k,l,m] * c[i,j,l,k,m] = 1`
    Inverse,
    /// `c[i,j,k,l,m] + c[i,j,m,l,k] = 1`
    SumToOne,
    /// `c[i,j,k,l,m] = c[m,j,k,l,i] * c[j,i,k,l,m]`
    TriadFive,
    /// `c[i,j,k,l,m] = c[i,r,k,l,m] * c[i,j,k,l,r]`, six distinct labels
    TriadSix,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 5] = [
        RelationFamily::Symmetry,
        RelationFamily::Inverse,
        RelationFamily::SumToOne,
        RelationFamily::TriadFive,
        RelationFamily::TriadSix,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            RelationFamily::Symmetry => "symmetry",
            RelationFamily::Inverse => "inverse",
            RelationFamily::SumToOne => "sum_to_one",
            RelationFamily::TriadFive => "triad_five",
            RelationFamily::TriadSix => "triad_six",
        }
    }
}

/// One evaluated relation instance; zero residual means the relation holds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationResidual {
    pub family: RelationFamily,
    /// The defining index tuple: five labels, six for `TriadSix`.
    pub indices: Vec<usize>,
    /// Left side minus right side.
    pub residual: Rat,
}

fn residuals_for_tuple(
    c: &mut dyn FnMut([usize; 5]) -> Result<Rat>,
    t: [usize; 5],
    out: &mut Vec<RelationResidual>,
) -> Result<()> {
    let [i, j, k, l, m] = t;
    let base = c(t)?;
    for other in [[i, k, j, m, l], [i, l, m, j, k], [i, m, l, k, j]] {
        out.push(RelationResidual {
            family: RelationFamily::Symmetry,
            indices: t.to_vec(),
            residual: base.clone() - c(other)?,
        });
    }
    out.push(RelationResidual {
        family: RelationFamily::Inverse,
        indices: t.to_vec(),
        residual: base.clone() * c([i, j, l, k, m])? - Rat::one(),
    });
    out.push(RelationResidual {
        family: RelationFamily::SumToOne,
        indices: t.to_vec(),
        residual: base.clone() + c([i, j, m, l, k])? - Rat::one(),
    });
    out.push(RelationResidual {
        family: RelationFamily::TriadFive,
        indices: t.to_vec(),
        residual: base.clone() - c([m, j, k, l, i])? * c([j, i, k, l, m])?,
    });
    Ok(())
}

fn triad_six_residual(
    c: &mut dyn FnMut([usize; 5]) -> Result<Rat>,
    t: [usize; 6],
    out: &mut Vec<RelationResidual>,
) -> Result<()> {
    let [i, j, k, l, m, r] = t;
    out.push(RelationResidual {
        family: RelationFamily::TriadSix,
        indices: t.to_vec(),
        residual: c([i, j, k, l, m])? - c([i, r, k, l, m])? * c([i, j, k, l, r])?,
    });
    Ok(())
}

fn enumerate_residuals(
    n: usize,
    c: &mut dyn FnMut([usize; 5]) -> Result<Rat>,
) -> Result<Vec<RelationResidual>> {
    let mut out = Vec::new();
    if n < 5 {
        return Ok(out);
    }
    for t in (1..=n).permutations(5) {
        residuals_for_tuple(c, [t[0], t[1], t[2], t[3], t[4]], &mut out)?;
    }
    for t in (1..=n).permutations(6) {
        triad_six_residual(c, [t[0], t[1], t[2], t[3], t[4], t[5]], &mut out)?;
    }
    Ok(out)
}

/// Configurations of eight or more points switch to sampling; this many
/// instances are drawn per family, from a fixed internal seed so the check
/// is reproducible.
pub const SAMPLED_INSTANCES_PER_FAMILY: usize = 10_000;
const SAMPLE_SEED: u64 = 0x5eed_c0de;

/// Cutoff for full enumeration of relation instances.
pub const FULL_ENUMERATION_MAX_N: usize = 7;

/// Evaluate relation instances directly from brackets and return residuals.
///
/// Up to seven points every instance of every family is enumerated; from
/// eight points on, `SAMPLED_INSTANCES_PER_FAMILY` random instances per
/// family are checked instead.
pub fn relation_residuals(config: &Configuration) -> Result<Vec<RelationResidual>> {
    let n = config.n();
    let mut eval = CEval::new(config);
    let mut c = |t: [usize; 5]| eval.c(t);
    if n <= FULL_ENUMERATION_MAX_N {
        enumerate_residuals(n, &mut c)
    } else {
        sample_residuals(n, &mut c, SAMPLED_INSTANCES_PER_FAMILY)
    }
}

/// Sampled variant with an explicit per-family instance count.
pub fn relation_residuals_sampled(
    config: &Configuration,
    per_family: usize,
) -> Result<Vec<RelationResidual>> {
    let mut eval = CEval::new(config);
    let mut c = |t: [usize; 5]| eval.c(t);
    sample_residuals(config.n(), &mut c, per_family)
}

fn sample_residuals(
    n: usize,
    c: &mut dyn FnMut([usize; 5]) -> Result<Rat>,
    per_family: usize,
) -> Result<Vec<RelationResidual>> {
    let mut out = Vec::new();
    if n < 5 {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let draw = |len: usize, rng: &mut ChaCha8Rng| -> Vec<usize> {
        rand::seq::index::sample(rng, n, len).iter().map(|x| x + 1).collect()
    };
    // One five-tuple feeds all four five-index families, so a quarter of the
    // budget in tuples reaches the per-family target.
    for _ in 0..per_family {
        let t = draw(5, &mut rng);
        residuals_for_tuple(c, [t[0], t[1], t[2], t[3], t[4]], &mut out)?;
    }
    if n >= 6 {
        for _ in 0..per_family {
            let t = draw(6, &mut rng);
            triad_six_residual(c, [t[0], t[1], t[2], t[3], t[4], t[5]], &mut out)?;
        }
    }
    Ok(out)
}

/// Evaluate every relation instance by looking indices up in a table.
///
/// On an honest table the symmetry family is zero by construction here, so
/// this variant proves nothing about it; its purpose is fault injection:
/// perturb one table entry and the residuals must light up.
pub fn relation_residuals_from_table(table: &CTable) -> Result<Vec<RelationResidual>> {
    let mut c = |t: [usize; 5]| -> Result<Rat> {
        table.value(t[0], t[1], t[2], t[3], t[4]).cloned()
    };
    enumerate_residuals(table.n(), &mut c)
}

/// Expected instance counts per family under full enumeration.
pub fn expected_instance_count(family: RelationFamily, n: usize) -> usize {
    if n < 5 {
        return 0;
    }
    let perm5: usize = (n - 4..=n).product();
    match family {
        RelationFamily::Symmetry => 3 * perm5,
        RelationFamily::Inverse | RelationFamily::SumToOne | RelationFamily::TriadFive => perm5,
        RelationFamily::TriadSix => perm5 * n.saturating_sub(5),
    }
}
