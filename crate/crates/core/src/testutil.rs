//! Shared fixtures for the unit tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::config::Configuration;
use crate::maps::ProjMap;

/// Standard frame plus (1:2:3); the worked example used across the crate.
pub(crate) fn frame5() -> Configuration {
    Configuration::from_integer_rows(&[
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 1],
        [1, 2, 3],
    ])
    .unwrap()
}

/// Random invertible integer matrix with small entries.
pub(crate) fn random_map(rng: &mut impl Rng) -> ProjMap {
    loop {
        let entries = [(); 3].map(|_| [(); 3].map(|_| rng.gen_range(-9i64..=9)));
        if let Ok(map) = ProjMap::from_integers(entries) {
            return map;
        }
    }
}

/// Uniform random permutation of `1..=n`.
pub(crate) fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    perm
}
