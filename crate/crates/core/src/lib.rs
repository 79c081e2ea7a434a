//! Hypertree posets on labeled vertices, the symmetric-group representation
//! on their homology, and the cycle-index algebra that predicts it.
//!
//! The crate computes everything twice: directly from chain complexes and
//! chain counts, and from functional equations on truncated cycle indices.
//! [`verify`] compares the two.

pub mod error;
pub mod homology;
pub mod hypertree;
pub mod perm;
pub mod poset;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
