//! Faces, checkerboard colourings and Goeritz matrices of planar diagrams.

mod faces;
mod goeritz;

pub use faces::{faces, Corner, Face, FaceSet, Side};
pub use goeritz::{
    checkerboard, goeritz, goeritz_with, signature_via_goeritz, Coloring, Convention, CrossingData, CrossingType,
    GoeritzData, OuterChoice,
};

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::AlgError;
use crate::knotio::KnotRecord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("diagram has no crossings")]
    EmptyDiagram,
    #[error("inconsistent planar structure: {0}")]
    Nonplanar(String),
    #[error("crossing {crossing} is nugatory")]
    Nugatory { crossing: usize },
    #[error("no face with index {0}")]
    NoSuchFace(usize),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// Outcome of matching `sig(G) - μ` against ingested signatures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Calibration {
    pub convention: Convention,
    /// Knots with a usable diagram that were compared.
    pub checked: usize,
    /// Knots whose computed signature disagrees under the chosen convention.
    pub mismatches: Vec<String>,
}

impl Calibration {
    pub fn is_exact(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `sig(G) - μ` with the ingested signature under one convention.
pub fn check_convention(records: &[KnotRecord], conv: Convention) -> Calibration {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for rec in records {
        let Some(pd) = &rec.pd else { continue };
        let Ok(gd) = goeritz_with(pd, OuterChoice::Auto, conv) else {
            continue;
        };
        let Ok(sig) = signature_via_goeritz(&gd) else { continue };
        checked += 1;
        if sig != rec.signature {
            mismatches.push(rec.name.clone());
        }
    }
    Calibration {
        convention: conv,
        checked,
        mismatches,
    }
}

/// Picks the convention under which the most records reproduce their
/// ingested signature. Earlier entries of [`Convention::all`] win ties.
pub fn calibrate(records: &[KnotRecord]) -> Calibration {
    let mut best: Option<Calibration> = None;
    for conv in Convention::all() {
        let cand = check_convention(records, conv);
        if best.as_ref().is_none_or(|b| cand.mismatches.len() < b.mismatches.len()) {
            best = Some(cand);
        }
    }
    best.expect("at least one convention")
}
