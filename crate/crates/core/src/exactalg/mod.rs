//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers and reduced
//! rationals. No floating point is used anywhere.

mod det;
mod matrix;
mod signature;
mod snf;

pub use det::{det, det_cofactor, inverse};
pub use matrix::{IntMatrix, RationalMatrix};
pub use signature::{inertia, signature, Inertia};
pub use snf::{smith_normal_form, SnfResult};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("rows of differing length")]
    Ragged,
    #[error("shape mismatch: {left:?} times {right:?}")]
    Shape {
        left: (usize, usize),
        right: (usize, usize),
    },
}
