//! Garside normal forms, summit sets and conjugacy for braid groups `B_n`.
//!
//! Elements are stored as [`CanonicalBraid`] values: `Δ^u x₁⋯x_k` with
//! permutation-braid factors. Start from [`normalize`] or the `examples/`
//! directory.

pub mod canonical;
pub mod cli;
pub mod conjugacy;
pub mod error;
pub mod format;
pub mod perm;
pub mod stats;
pub mod summit;

pub use canonical::{normalize, BraidWord, CanonicalBraid, Letter};
pub use error::{Error, Result};
pub use perm::{GeneratorIndex, PermutationBraid, Side};
