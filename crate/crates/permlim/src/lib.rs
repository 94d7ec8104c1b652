//! Permutation limit theory as a library: pattern densities, rectangular
//! (cut-style) distances, weak regularity partitions, grid permutons with
//! exact and Monte-Carlo densities, permuton-random sampling, and
//! convergence diagnostics for permutation sequences.
//!
//! Finite objects compute in exact rational arithmetic throughout, so the
//! structural identities of the theory — t(τ, σ) = t(τ, Q_σ), the equality
//! of the three rectangular distances on permutations, Σ_τ t(τ, σ) = 1 —
//! hold exactly, not approximately. Large-instance metric paths and
//! Monte-Carlo estimators use f64 with stated error bounds.

pub mod convergence;
pub mod error;
pub mod io;
pub mod matrix;
pub mod metric;
pub mod numeric;
pub mod perm;
pub mod permuton;
pub mod sampler;
pub mod stats;
pub mod weighted;

pub use error::{Error, Result};
pub use matrix::{GeneralMatrix, MatrixF64};
pub use perm::{Pattern, Permutation};
pub use permuton::{GridKind, GridPermuton};
pub use sampler::RandomStream;
pub use weighted::{IntervalPartition, WeightedPermutation};
