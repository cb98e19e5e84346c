use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::faces::{faces, two_colour, FaceSet};
use super::PlanarError;
use crate::exactalg::{signature, IntMatrix};
use crate::knotio::PdCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingType {
    I,
    II,
}

/// Sign and type conventions for the incidence numbers.
///
/// The raw rule: at `X[a,b,c,d]` the corners are `(a,b), (b,c), (c,d), (d,a)`;
/// `η = +1` when the white corners are `(b,c)` and `(d,a)`, `-1` otherwise.
/// A crossing is type II when both strands run through the white corners in
/// the same direction, type I otherwise. `eta_sign` and `swap_types` adjust
/// the raw rule after calibration against known signatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Convention {
    pub eta_sign: i8,
    pub swap_types: bool,
}

impl Convention {
    pub const RAW: Convention = Convention {
        eta_sign: 1,
        swap_types: false,
    };

    /// The convention that reproduces the ingested signatures of the bundled
    /// knot table; see [`super::calibrate`].
    pub const CALIBRATED: Convention = Convention {
        eta_sign: -1,
        swap_types: true,
    };

    pub fn all() -> [Convention; 4] {
        [
            Convention {
                eta_sign: 1,
                swap_types: false,
            },
            Convention {
                eta_sign: -1,
                swap_types: false,
            },
            Convention {
                eta_sign: 1,
                swap_types: true,
            },
            Convention {
                eta_sign: -1,
                swap_types: true,
            },
        ]
    }
}

impl Default for Convention {
    fn default() -> Self {
        Convention::CALIBRATED
    }
}

/// How to choose the white class and the deleted region `R₀`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OuterChoice {
    /// White is the smaller colour class (ties: the class holding the face
    /// with most corners); `R₀` is its face with most corners.
    #[default]
    Auto,
    /// Colour the given face white and use it as `R₀`.
    Face(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingData {
    /// Indices into the white-region list `R₀..R_m`.
    pub regions: (usize, usize),
    pub eta: i8,
    pub kind: CrossingType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    /// `true` for white faces.
    pub white: Vec<bool>,
    /// Face ids of `R₀, R₁, …`; `R₀` plays the unbounded region.
    pub regions: Vec<usize>,
    pub crossings: Vec<CrossingData>,
}

/// Checkerboard colouring with incidence numbers and crossing types.
pub fn checkerboard(pd: &PdCode, fs: &FaceSet, outer: OuterChoice, conv: Convention) -> Result<Coloring, PlanarError> {
    let class = two_colour(fs)?;
    let size = |f: &usize| fs.faces[*f].corners.len();
    let white_class = match outer {
        OuterChoice::Face(f) => {
            if f >= fs.len() {
                return Err(PlanarError::NoSuchFace(f));
            }
            class[f]
        }
        OuterChoice::Auto => {
            let count_true = class.iter().filter(|&&c| c).count();
            let count_false = class.len() - count_true;
            if count_true != count_false {
                count_true < count_false
            } else {
                let largest = (0..fs.len())
                    .max_by_key(|f| (size(f), std::cmp::Reverse(*f)))
                    .unwrap_or(0);
                class[largest]
            }
        }
    };
    let white: Vec<bool> = class.iter().map(|&c| c == white_class).collect();
    let r0 = match outer {
        OuterChoice::Face(f) => f,
        OuterChoice::Auto => (0..fs.len())
            .filter(|&f| white[f])
            .max_by_key(|f| (size(f), std::cmp::Reverse(*f)))
            .expect("both colour classes are nonempty"),
    };
    let mut regions = vec![r0];
    regions.extend((0..fs.len()).filter(|&f| white[f] && f != r0));
    let mut region_of = vec![usize::MAX; fs.len()];
    for (r, &f) in regions.iter().enumerate() {
        region_of[f] = r;
    }

    let mut crossings = Vec::with_capacity(pd.len());
    for k in 0..pd.len() {
        let cf = fs.corner_face[k];
        if cf[0] == cf[2] || cf[1] == cf[3] {
            return Err(PlanarError::Nugatory { crossing: k });
        }
        let (pair, raw_eta) = if white[cf[1]] && white[cf[3]] {
            ((cf[1], cf[3]), 1i8)
        } else if white[cf[0]] && white[cf[2]] {
            ((cf[0], cf[2]), -1i8)
        } else {
            return Err(PlanarError::Nonplanar(format!(
                "crossing {k} has no opposite white corners"
            )));
        };
        // over-strand entering at slot 3 (d -> b) runs parallel to the under
        // strand through the white corners (b,c),(d,a); entering at slot 1
        // runs parallel through (a,b),(c,d)
        let over_in = pd.over_incoming_slot(k);
        let parallel = if raw_eta == 1 { over_in == 3 } else { over_in == 1 };
        let kind = if parallel != conv.swap_types {
            CrossingType::II
        } else {
            CrossingType::I
        };
        crossings.push(CrossingData {
            regions: (region_of[pair.0], region_of[pair.1]),
            eta: raw_eta * conv.eta_sign,
            kind,
        });
    }
    Ok(Coloring {
        white,
        regions,
        crossings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoeritzData {
    /// `G′`, indexed by white regions `R₀..R_m`.
    pub gfull: IntMatrix,
    /// `G′` with row and column 0 deleted.
    pub g: IntMatrix,
    /// Sum of `η` over type II crossings.
    pub mu: i64,
}

impl GoeritzData {
    pub fn unknot() -> Self {
        GoeritzData {
            gfull: IntMatrix::zeros(1, 1),
            g: IntMatrix::zeros(0, 0),
            mu: 0,
        }
    }

    /// Assembles `G′` and `G` from a colouring.
    pub fn from_coloring(col: &Coloring) -> Self {
        let m = col.regions.len();
        let mut gfull = IntMatrix::zeros(m, m);
        for c in &col.crossings {
            let (i, j) = c.regions;
            let eta = BigInt::from(c.eta);
            gfull[(i, j)] -= &eta;
            gfull[(j, i)] -= &eta;
        }
        for i in 0..m {
            let off: BigInt = (0..m).filter(|&k| k != i).map(|k| gfull[(i, k)].clone()).sum();
            gfull[(i, i)] = -off;
        }
        let mu = col
            .crossings
            .iter()
            .filter(|c| c.kind == CrossingType::II)
            .map(|c| c.eta as i64)
            .sum();
        let g = gfull.minor_deleting(0);
        GoeritzData { gfull, g, mu }
    }
}

/// Goeritz matrix of a diagram with the default region choice.
pub fn goeritz(pd: &PdCode) -> Result<GoeritzData, PlanarError> {
    goeritz_with(pd, OuterChoice::Auto, Convention::default())
}

pub fn goeritz_with(pd: &PdCode, outer: OuterChoice, conv: Convention) -> Result<GoeritzData, PlanarError> {
    if pd.is_empty() {
        return Ok(GoeritzData::unknot());
    }
    let fs = faces(pd)?;
    let col = checkerboard(pd, &fs, outer, conv)?;
    Ok(GoeritzData::from_coloring(&col))
}

/// Knot signature as `sig(G) - μ`.
pub fn signature_via_goeritz(gd: &GoeritzData) -> Result<i64, PlanarError> {
    Ok(signature(&gd.g)? - gd.mu)
}
