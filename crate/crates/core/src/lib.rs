//! Exact-arithmetic engine for web permutations and their relatives.
//!
//! The crate has no floating point anywhere: counting uses big integers,
//! the analytic series uses big rationals, and every identity check is an
//! exact comparison.
//!
//! Module map:
//! * [`perm`]: words, permutations, statistics, membership predicates;
//! * [`seq`]: Seidel triangle, Genocchi, Entringer, Euler numbers;
//! * [`grid`]: wiring-grid resolution and boundary matchings;
//! * [`chord`]: chord diagram expansion and necklace multiplicities;
//! * [`actions`]: valley exchanges, block exchanges, min-max trees;
//! * [`poly`]: generating polynomials, gamma expansion, series oracle.

pub mod actions;
pub mod chord;
pub mod error;
pub mod grid;
pub mod perm;
pub mod poly;
pub mod seq;

pub use error::{Error, Result};
pub use perm::{Permutation, StatRecord, Word};

/// Re-exported arithmetic types used in public signatures.
pub use num::{BigInt, BigRational, BigUint};

/// Which candidate to take when a resolution or expansion step has a
/// choice. Results never depend on it; it exists so tests can prove that.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Selection {
    First,
    Last,
}
