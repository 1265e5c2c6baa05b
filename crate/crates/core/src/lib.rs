//! Exact-arithmetic constructions for intrinsic linking.
//!
//! The crate builds the complexes `F_{k,l}`, `F_{k,l,-}`, `F'_{k,l}` and `K_n`,
//! maps them piecewise-linearly into `R^d` with rational coordinates, counts
//! intersections and linking numbers exactly, and verifies the combinatorics of
//! simplicial deleted products and joins together with the equivariant
//! degree bookkeeping on their top cells.

pub mod deleted;
pub mod error;
pub mod geometry;
pub mod ledger;
pub mod linking;
pub mod signed_graph;
pub mod simplicial;
pub mod vk;

pub use error::{Error, Result};
pub use geometry::{Point, PlMap};

pub use simplicial::{Complex, Face, FamilySelector, OrientedSimplex};

/// Version tag written into every JSON document produced by this crate.
pub const FORMAT_VERSION: u32 = 1;
