//! Combinatorial cell complexes: graded posets satisfying a small set of
//! axioms, with flag orientations, integer cellular (co)homology, stellar and
//! barycentric subdivision, and dual complexes.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

mod bitset;
pub mod cell_id;
pub mod chains;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod flags;
pub mod poset;
pub mod subdivision;

pub use cell_id::CellId;
pub use error::Error;
pub use flags::{Flag, Orientation, Sign, SignTable};
pub use poset::Ccc;
