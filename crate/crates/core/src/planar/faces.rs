use std::collections::VecDeque;

use serde::Serialize;

use super::PlanarError;
use crate::knotio::PdCode;

/// Which side of an oriented edge a face lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Corner `(crossing, i)` is the sector between slots `i` and `i + 1 (mod 4)`.
pub type Corner = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub corners: Vec<Corner>,
    /// Boundary edges in traversal order, with the side the face occupies.
    pub edges: Vec<(u32, Side)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    /// `corner_face[k][i]` is the face containing corner `(k, i)`.
    pub corner_face: Vec<[usize; 4]>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// The two faces bordering `edge`, as (left, right).
    pub fn edge_faces(&self, edge: u32) -> Option<(usize, usize)> {
        let mut left = None;
        let mut right = None;
        for (f, face) in self.faces.iter().enumerate() {
            for &(e, side) in &face.edges {
                if e == edge {
                    match side {
                        Side::Left => left = Some(f),
                        Side::Right => right = Some(f),
                    }
                }
            }
        }
        left.zip(right)
    }
}

/// Slots where each edge label occurs.
fn edge_slots(pd: &PdCode) -> Vec<Vec<(usize, usize)>> {
    let mut slots = vec![Vec::with_capacity(2); pd.edge_count() as usize + 1];
    for (k, x) in pd.crossings().iter().enumerate() {
        for (s, &e) in x.iter().enumerate() {
            slots[e as usize].push((k, s));
        }
    }
    slots
}

/// Traces the faces of the diagram's rotation system.
///
/// Leaving corner `(k, i)` along the edge in slot `i + 1`, the face continues
/// at corner `(k', j)` where `(k', j)` is the other end of that edge.
pub fn faces(pd: &PdCode) -> Result<FaceSet, PlanarError> {
    let n = pd.len();
    if n == 0 {
        return Err(PlanarError::EmptyDiagram);
    }
    let slots = edge_slots(pd);
    let mut corner_face = vec![[usize::MAX; 4]; n];
    let mut faces = Vec::new();
    for k0 in 0..n {
        for i0 in 0..4 {
            if corner_face[k0][i0] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut face = Face {
                corners: Vec::new(),
                edges: Vec::new(),
            };
            let (mut k, mut i) = (k0, i0);
            loop {
                if corner_face[k][i] != usize::MAX {
                    if (k, i) == (k0, i0) {
                        break;
                    }
                    return Err(PlanarError::Nonplanar(format!(
                        "corner ({k},{i}) reached twice while tracing face {id}"
                    )));
                }
                corner_face[k][i] = id;
                face.corners.push((k, i));
                let out = (i + 1) % 4;
                let e = pd.crossings()[k][out];
                let side = if pd.is_incoming(k, out) {
                    Side::Left
                } else {
                    Side::Right
                };
                face.edges.push((e, side));
                let other = slots[e as usize]
                    .iter()
                    .copied()
                    .find(|&slot| slot != (k, out))
                    .ok_or_else(|| PlanarError::Nonplanar(format!("edge {e} has a single end")))?;
                (k, i) = other;
            }
            faces.push(face);
        }
    }
    if faces.len() != n + 2 {
        return Err(PlanarError::Nonplanar(format!(
            "{} faces traced, expected {} for {n} crossings",
            faces.len(),
            n + 2
        )));
    }
    Ok(FaceSet { faces, corner_face })
}

/// Proper two-colouring of the faces: `false`/`true` for the two classes,
/// with face 0 in class `false`. Adjacent faces share an edge.
pub(crate) fn two_colour(fs: &FaceSet) -> Result<Vec<bool>, PlanarError> {
    let m = fs.len();
    let mut adj = vec![Vec::new(); m];
    let mut by_edge: std::collections::HashMap<u32, Vec<usize>> = Default::default();
    for (f, face) in fs.faces.iter().enumerate() {
        for &(e, _) in &face.edges {
            by_edge.entry(e).or_default().push(f);
        }
    }
    for (e, fs_) in by_edge {
        if fs_.len() != 2 {
            return Err(PlanarError::Nonplanar(format!("edge {e} borders {} faces", fs_.len())));
        }
        adj[fs_[0]].push(fs_[1]);
        adj[fs_[1]].push(fs_[0]);
    }
    let mut colour: Vec<Option<bool>> = vec![None; m];
    let mut queue = VecDeque::new();
    colour[0] = Some(false);
    queue.push_back(0);
    while let Some(f) = queue.pop_front() {
        let c = colour[f].expect("queued faces are coloured");
        for &g in &adj[f] {
            match colour[g] {
                None => {
                    colour[g] = Some(!c);
                    queue.push_back(g);
                }
                Some(cg) if cg == c => {
                    return Err(PlanarError::Nonplanar(format!("faces {f} and {g} cannot be coloured")))
                }
                _ => {}
            }
        }
    }
    colour
        .into_iter()
        .map(|c| c.ok_or_else(|| PlanarError::Nonplanar("disconnected face graph".into())))
        .collect()
}
