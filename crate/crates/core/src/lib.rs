//! Lower and upper bounds on the non-orientable 4-genus of knots.
//!
//! The pipeline runs from planar diagram codes to Goeritz matrices, from
//! there to the linking form of the double branched cover, and finally
//! combines linking-form obstructions, classical invariants and band-move
//! certificates into an interval for γ₄ per knot.

pub mod bounds;
pub mod exactalg;
pub mod knotio;
pub mod linkform;
pub mod planar;
pub mod report;

pub use bounds::{classify, classify_all, GammaBounds, Status};
pub use exactalg::{IntMatrix, RationalMatrix};
pub use knotio::{BandMoveCertificate, KnotRecord, PdCode};
pub use linkform::{FiniteAbelianGroup, LinkingForm, ObstructionVerdict, Verdict};
pub use planar::GoeritzData;
