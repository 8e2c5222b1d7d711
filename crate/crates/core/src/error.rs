use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// All arithmetic is exact, so these describe structural problems with the
/// input, never numerical ones.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A point label is outside `1..=n` or appears twice where distinct
    /// labels are required.
    #[error("invalid labels: {0}")]
    InvalidLabels(String),

    /// A bracket in the denominator of an invariant vanished, i.e. three of
    /// the points involved are collinear.
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),

    /// Three specific points are collinear where general position is needed.
    #[error("points {0}, {1}, {2} are collinear")]
    ThreeCollinear(usize, usize, usize),

    /// The configuration is too degenerate for the requested operation
    /// (size mismatch, no frame quadruple, unsupported size).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Rejection sampling gave up; the coordinate bound is too small for
    /// the requested number of points.
    #[error("resampling exhausted after {attempts} attempts (n = {n}, coord_bound = {bound})")]
    ResamplingExhausted { n: usize, bound: i64, attempts: usize },

    /// Fewer points than the subset size requested from a distribution.
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },

    /// Malformed textual input: a fraction, a point triple or a whole
    /// configuration failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A matrix expected to be invertible has zero determinant.
    #[error("singular matrix")]
    SingularMatrix,
}

pub type Result<T> = std::result::Result<T, Error>;
