//! Exact enumeration of grid classes of signed permutations.
//!
//! Given a finite set `Π` of signed permutations, [`gridclass::enumerate`]
//! returns the polynomial `P(n) = |Grid(Π) ∩ B_n|`, valid for every `n ≥ 1`,
//! with exact rational coefficients. [`distance`] builds the generating sets
//! for the classes of signed permutations within a fixed prefix-reversal or
//! block-reversal distance of the identity, and [`oracle`] checks the
//! resulting polynomials against breadth-first search over `B_n`.
//!
//! ```
//! use signed_grid::{enumerate, PermSet, SignedPerm};
//!
//! let pi: SignedPerm = "-2 1 3".parse().unwrap();
//! let poly = enumerate(&PermSet::singleton(pi));
//! assert_eq!(poly.to_string(), "[1, 1/2, 1/2]");
//! ```

pub mod distance;
pub mod error;
pub mod gridclass;
pub mod oracle;
mod packed;
pub mod perm;
pub mod polynomial;

pub use distance::{DistanceFamily, Generators, Move};
pub use error::{Error, PermError, Result};
pub use gridclass::{complete_and_compact, enumerate, grid_member, LengthHistogram, PermSet};
pub use perm::{InflationVector, SignedPerm, SignedWord};
pub use polynomial::{Polynomial, Rational, Style};

/// Resource ceilings for the expensive operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest prefix-reversal distance class that will be built.
    pub max_pancake_k: usize,
    /// Largest block-reversal distance class that will be built.
    pub max_reversal_k: usize,
    /// Largest `n` for which the oracle will search all of `B_n`.
    pub max_oracle_n: usize,
}

impl Limits {
    /// Oracle ceiling when large searches are explicitly requested
    /// (`|B_8| = 10,321,920`).
    pub const LARGE_ORACLE_N: usize = 8;
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_pancake_k: 10,
            max_reversal_k: 5,
            max_oracle_n: 7,
        }
    }
}
