//! Cellular chains, boundary matrices, Smith normal form and homology.

mod chain;
mod complex;
mod matrix;
mod snf;

pub use chain::Chain;
pub use complex::{
    boundary, cells_acyclic, coboundary, h0_components, small_torsion, ChainComplex, Generators, HomologyGroup,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, smith_with_transforms, SmithForm, SmithTransforms};
