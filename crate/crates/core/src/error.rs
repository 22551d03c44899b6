//! Error type shared across the engine.

use thiserror::Error;

/// Everything that can go wrong in the engine.
///
/// Precondition violations and cap overruns come from caller input.
/// `Internal` signals a broken invariant inside the engine itself and is
/// always a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An enumeration or expansion was asked to run past its safety cap.
    #[error("size {n} exceeds cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    /// One-line data that is not a permutation of 1..=n.
    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    /// A letter argument does not occur in the word or permutation.
    #[error("letter {0} is absent")]
    LetterAbsent(u32),

    /// A positional index is outside the valid range.
    #[error("position {0} is out of range")]
    PositionOutOfRange(usize),

    /// The cell is not a maximal unresolved crossing of the configuration.
    #[error("cell ({0},{1}) is not a maximal crossing")]
    NotMaximalCrossing(usize, usize),

    /// The two chords handed to an expansion step do not cross.
    #[error("chords do not cross")]
    NotACrossing,

    /// Pair data that is not a perfect matching of its ground set.
    #[error("not a perfect matching: {0}")]
    NotAMatching(String),

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(&'static str),

    /// The polynomial is not a nonnegative combination of the basis
    /// x^i (1+x)^(n-1-2i).
    #[error("polynomial is not in the gamma basis span")]
    NotInGammaBasis,

    /// An internal invariant failed; this is a bug in the engine.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
