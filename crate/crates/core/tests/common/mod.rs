//! Helpers shared by the integration suites; everything goes through the
//! public API.

use pentad::{Configuration, ProjMap};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random invertible map with small integer entries.
pub fn random_map(rng: &mut impl Rng) -> ProjMap {
    loop {
        let entries: [[i64; 3]; 3] =
            core::array::from_fn(|_| core::array::from_fn(|_| rng.gen_range(-9..=9)));
        if let Ok(map) = ProjMap::from_integers(entries) {
            return map;
        }
    }
}

/// Uniform random relabeling of 1..=n.
pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    perm
}

/// The configuration with points `g(P_{perm[i-1]})`.
pub fn transformed(config: &Configuration, g: &ProjMap, perm: &[usize]) -> Configuration {
    g.apply_config(&config.permuted(perm).expect("valid permutation"))
}
