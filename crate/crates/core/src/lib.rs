//! Exact projective invariants of plane point configurations.
//!
//! Configurations of n labeled points in the projective plane, with rational
//! coordinates and all arithmetic exact, are compared up to projective maps
//! and relabeling. The tools: the c-invariants built from 3x3 brackets with
//! their canonical index form and relation families, the symmetric
//! five-point signature (a, b), the fingerprint collecting signatures over
//! all 5-subsets, a matcher that turns equal fingerprints into an explicit
//! witness (permutation, map), and a generalization of the fingerprint to
//! other subset sizes and group actions.
//!
//! Every computation is deterministic: exact rationals, ordered
//! enumeration, seeded sampling.

pub mod config;
pub mod distribution;
pub mod error;
pub mod fingerprint;
pub mod invariants;
pub mod io;
pub mod maps;
pub mod matcher;
pub mod point;
pub mod rational;
pub mod signature;

#[cfg(test)]
mod testutil;

pub use config::{random_generic_config, Configuration};
pub use distribution::{
    demo_translation, five_point_ab_signature, is_translate, mu, translation2_sig,
    translation2_signature, translation3_sig, translation3_signature, DistributionMultiset,
    SubsetSignature, TranslationDemoReport,
};
pub use error::{Error, Result};
pub use fingerprint::{
    fingerprint, fingerprints_equal, genericity_report, Fingerprint, GenericityReport,
};
pub use invariants::{
    all_c_values, c_value, canonical_cindex, canonical_count, expected_instance_count,
    generic_distinctness, relation_residuals, relation_residuals_from_table,
    relation_residuals_sampled, CIndex, CTable, RelationFamily, RelationResidual,
};
pub use io::{config_from_json, config_to_json};
pub use maps::{frame_map, labeled_equivalent, ProjMap};
pub use matcher::{
    brute_force_match, match_configs, match_configs_with_stats, verify_match, MatchResult,
    MatchStats, BRUTE_FORCE_MAX_N,
};
pub use point::ProjPoint;
pub use rational::{format_rat, format_rat_explicit, parse_rat, rat, rat_int, Rat};
pub use signature::{
    esym_signature, m_values, signature, signature_direct, signature_from_xy, Signature,
    SignatureMode,
};
