//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An angle or size argument fell outside its documented domain.
    #[error("{name} = {value} outside [{min}, {max}]")]
    ParameterRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// A payoff matrix failed one of the dilemma inequalities.
    /// The message names the violated inequality, e.g. "b > c violated".
    #[error("payoff constraint: {0}")]
    Constraint(&'static str),

    /// A state vector is not normalized within tolerance.
    #[error("state norm {norm} is not 1 within tolerance {tol}")]
    InvalidState { norm: f64, tol: f64 },

    /// The cooperation gap has no zero on [0, pi/2]; `sign` is the constant
    /// sign of the gap on the interval (+1.0 or -1.0).
    #[error("cooperation gap has no zero on [0, pi/2]; gap sign is {sign:+}")]
    NoGapRoot { sign: f64 },

    /// The Nash status of a profile flipped more than once along gamma,
    /// so a single barrier value is not well defined.
    #[error("nash status of {profile} is not single-crossing in gamma")]
    NonMonotoneBarrier { profile: &'static str },

    /// A dataset operation received no games.
    #[error("no games")]
    EmptyDataset,

    /// Ranking requires all records to come from one experiment.
    #[error("records span more than one experiment")]
    MixedExperiments,

    /// Observed ranks within an experiment must be the permutation 1..n
    /// ordered by strictly descending cooperation percentage.
    #[error("observed ranks of experiment '{experiment}' are not 1..n ordered by descending cp")]
    BadObservedRanks { experiment: String },

    /// Pairwise indicator comparisons were inconsistent at the given
    /// tolerances, so no ranking can be assigned.
    #[error("indicator comparisons are not transitive at the given tolerances")]
    IntransitiveComparison,

    /// A dataset file failed to parse; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
