//! Exact integer linear algebra: normal forms and coordinate twists.

mod hnf;
mod matrix;
mod snf;
mod twist;

pub use hnf::{hnf, HnfDecomposition};
pub(crate) use hnf::solve_in_lattice;
pub use matrix::{IntMatrix, UnimodularMatrix};
pub use snf::{snf, SnfDecomposition};
pub use twist::{
    affine_dim, bottom_row_unimodular, flatten_affine, twist_to_coordinates, AffinePointSet,
    Twist,
};
