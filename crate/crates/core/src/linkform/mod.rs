//! Homology of the double branched cover and its linking form.

mod form;
mod group;
mod obstruct;
mod qz;

pub use form::{generator_values, linking_form, LinkingForm};
pub use group::{homology, FiniteAbelianGroup};
pub use obstruct::{
    definiteness_consistency, klein_discriminant, metabolic_test, metabolizer, mobius_obstruction_cyclic,
    mobius_obstruction_p2q, p2q_split, ObstructionVerdict, Test, Verdict,
};
pub use qz::QmodZ;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("Goeritz matrix is singular")]
    Singular,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("invariant factors {0:?} do not form a divisibility chain of entries > 1")]
    BadFactors(Vec<u64>),
    #[error("group {0} is not cyclic")]
    NotCyclic(FiniteAbelianGroup),
    #[error("malformed linking form: {0}")]
    Malformed(String),
    #[error("linking form is degenerate on element {0:?}")]
    Degenerate(Vec<u64>),
    #[error("group order exceeds 64 bits")]
    TooLarge,
}
