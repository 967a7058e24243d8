//! Colored partitions constrained by difference conditions read off the energy
//! function of a (perfect) affine crystal, together with the machinery needed to
//! check partition identities against Euler products numerically.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: colors, weights, colored partitions and the `⊕` staircase rule.
//! - [`crystal`]: crystal graphs, weight propagation, the tensor-square energy
//!   solver and the built-in catalog.
//! - [`rules`]: forbidden-pattern sets, the partition-ideal predicate and the
//!   structural checks on an energy matrix.
//! - [`paths`]: ground-state-tailed paths, `part_D` and its inverse.
//! - [`qseries`]: exact truncated series, Euler products, specializations and
//!   the generating-function enumerators.
//! - [`harness`]: identity catalog, verification reports and bijection audits.

pub mod crystal;
pub mod error;
pub mod harness;
pub mod partitions;
pub mod paths;
pub mod qseries;
pub mod rules;

pub use error::{Error, Result};
