//! Flipclasses of paths in the Bruhat graph of the symmetric group.
//!
//! The crate enumerates paths of the Bruhat graph, partitions them into
//! orbits under the flip operators, extracts support and time-support graphs
//! with their ι-polynomials, and computes coefficients of the
//! Kazhdan–Lusztig R̃-polynomials three independent ways: a descent
//! recurrence, Dyer's increasing-path count, and a flipclass-invariant recipe
//! valid for `h ≤ 6`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classify;
pub mod error;
pub mod flips;
pub mod invariants;
pub mod paths;
pub mod perm;
pub mod probe;
pub mod reduction;
pub mod reforder;
pub mod rtilde;

pub use error::{Error, Result};
pub use flips::{flip2, flipclass_of, flipclasses, FlipRule, Flipclass};
pub use invariants::{invariant_equivalent, IotaPolynomial, SupportGraph, TVector, TimeSupportGraph};
pub use paths::{enumerate_paths, BruhatPath, PackedPath};
pub use perm::{LabeledEdge, Permutation, Transposition, MAX_N};
pub use reforder::ReflectionOrdering;
pub use rtilde::{RTildeOracle, RTildePolynomial};
