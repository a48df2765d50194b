//! Exact combinatorics for modulo-`t` Capparelli-type partition identities.
//!
//! - [`partitions`]: the distinct-part [`Partition`] type, the semigroup
//!   `<s, t>` and membership in `C_t`, `D_t`, `C_st`, `D_st`.
//! - [`enumeration`]: exhaustive generators and counters for those families.
//! - [`bijection`]: the class-preserving map `C_st(n) -> D_st(n)`, its inverse
//!   and a trace of every intermediate stage.
//! - [`jagged`]: `k`-jagged partitions, staircases and maximal blocks.
//! - [`qseries`]: exact truncated series and both sides of the analytic
//!   identity, including the bivariate block-product derivation.

pub mod bijection;
pub mod enumeration;
pub mod error;
pub mod jagged;
pub mod partitions;
pub mod qseries;

pub use bijection::{forward, inverse, t_fold_conjugate, BijectionTrace};
pub use enumeration::{count_table, enumerate, refined_counts, Family, FamilySpec};
pub use error::{Error, Result};
pub use jagged::{JaggedPartition, MaximalBlock};
pub use partitions::{ClassVector, Condition, Conditions, Partition, SemigroupParams, Side};
pub use qseries::{BivariateSeries, QtForm, TruncatedSeries};
