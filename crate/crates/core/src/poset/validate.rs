use serde::Serialize;

use super::{vertex_link, FaceId, FacePoset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    /// Two local vertices of the face map to the same global vertex.
    RepeatedVertex,
    /// `∂_i ∂_j F != ∂_{j-1} ∂_i F`.
    SimplicialIdentity { i: usize, j: usize },
    /// Boundary entry `i` does not carry the vertex tuple with vertex `i` removed.
    VertexMismatch { i: usize },
    /// Two proper subfaces of the face coincide.
    BooleanInterval,
    /// A codimension-one face not lying in exactly two top faces.
    OpenFace { incidence: usize },
    /// A vertex whose link is not a connected closed surface with χ = 2.
    VertexLink { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub dim: usize,
    pub face: FaceId,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub is_simplicial_poset: bool,
    pub is_closed: bool,
    pub is_connected: bool,
    pub is_closed_3_manifold: bool,
    pub violations: Vec<Violation>,
}

pub fn validate(p: &FacePoset) -> ValidationReport {
    let mut violations = Vec::new();
    for k in 1..=p.dim() {
        for id in 0..p.count(k) {
            check_face(p, k, id, &mut violations);
        }
    }
    let is_simplicial_poset = violations.is_empty();

    let d = p.dim();
    let mut is_closed = d >= 1;
    if d >= 1 {
        for f in 0..p.count(d - 1) {
            let incidence = p.cofaces(d - 1, f).len();
            if incidence != 2 {
                is_closed = false;
                violations.push(Violation {
                    dim: d - 1,
                    face: f,
                    kind: ViolationKind::OpenFace { incidence },
                });
            }
        }
    }
    let is_connected = p.components() == 1;

    let mut is_closed_3_manifold = d == 3 && is_simplicial_poset && is_closed;
    if is_closed_3_manifold {
        for v in 0..p.n_vertices() {
            if let Err(reason) = link_is_sphere(p, v) {
                is_closed_3_manifold = false;
                violations.push(Violation {
                    dim: 0,
                    face: v,
                    kind: ViolationKind::VertexLink { reason },
                });
            }
        }
    }

    ValidationReport {
        is_simplicial_poset,
        is_closed,
        is_connected,
        is_closed_3_manifold,
        violations,
    }
}

fn check_face(p: &FacePoset, k: usize, id: FaceId, out: &mut Vec<Violation>) {
    let face = p.face(k, id);
    let push = |out: &mut Vec<Violation>, kind| out.push(Violation { dim: k, face: id, kind });

    let mut sorted = face.vertices.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        push(out, ViolationKind::RepeatedVertex);
    }

    for (i, &b) in face.boundary.iter().enumerate() {
        let mut expected = face.vertices.clone();
        expected.remove(i);
        if p.face(k - 1, b).vertices != expected {
            push(out, ViolationKind::VertexMismatch { i });
        }
    }

    if k >= 2 {
        for j in 1..=k {
            for i in 0..j {
                let lhs = p.face(k - 1, face.boundary[j]).boundary[i];
                let rhs = p.face(k - 1, face.boundary[i]).boundary[j - 1];
                if lhs != rhs {
                    push(out, ViolationKind::SimplicialIdentity { i, j });
                }
            }
        }
    }

    let full = (1u32 << (k + 1)) - 1;
    let mut subfaces: Vec<(usize, FaceId)> = (1..full).map(|m| p.subface(k, id, m)).collect();
    subfaces.sort_unstable();
    if subfaces.windows(2).any(|w| w[0] == w[1]) {
        push(out, ViolationKind::BooleanInterval);
    }
}

/// Checks that the link of `v` is a connected closed surface with χ = 2 in
/// which every vertex link is a single cycle.
fn link_is_sphere(p: &FacePoset, v: usize) -> Result<(), String> {
    let link = vertex_link(p, v).map_err(|e| e.to_string())?;
    if !link.is_closed() {
        return Err("link is not closed".into());
    }
    if link.components() != 1 {
        return Err(format!("link has {} components", link.components()));
    }
    let chi = link.euler_char();
    if chi != 2 {
        return Err(format!("link has Euler characteristic {chi}"));
    }
    for x in 0..link.n_vertices() {
        let circle = vertex_link(&link, x).map_err(|e| e.to_string())?;
        if !circle.is_closed() || circle.components() != 1 {
            return Err(format!("link is singular at its vertex {x}"));
        }
    }
    Ok(())
}
