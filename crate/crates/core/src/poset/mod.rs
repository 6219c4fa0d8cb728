//! Simplicial posets: regular cell complexes whose closed cells are simplices.
//!
//! A [`FacePoset`] stores, for every dimension `k`, the list of `k`-faces.
//! Each face carries an ordered tuple of `k + 1` boundary faces (entry `i` is
//! the face obtained by deleting local vertex `i`) and the matching tuple of
//! global vertex ids. Unlike an abstract simplicial complex, two different
//! faces may share a vertex set.

mod gluing;
mod link;
mod quotient;
mod validate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub use gluing::{build_complex, FaceGluing, GluingSpec};
pub use link::vertex_link;
pub use quotient::quotient_by_group;
pub use validate::{validate, ValidationReport, Violation, ViolationKind};

pub type FaceId = usize;
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("gluing of facet {facet} face {face} is not involutive")]
    NonInvolutiveGluing { facet: usize, face: usize },
    #[error("facet {facet} face {face} is glued to itself")]
    SelfGluedFace { facet: usize, face: usize },
    #[error("invalid gluing permutation at facet {facet} face {face}")]
    InvalidPermutation { facet: usize, face: usize },
    #[error("gluing at facet {facet} face {face} refers to a facet out of range")]
    FacetOutOfRange { facet: usize, face: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("complex is not vertex-determined: two {dim}-faces share vertex set {vertices:?}")]
    NotVertexDetermined { dim: usize, vertices: Vec<VertexId> },
    #[error("vertex map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("group action fixes {dim}-face {face}")]
    FixedFace { dim: usize, face: FaceId },
    #[error("quotient identifies two vertices of {dim}-face {face}")]
    DegenerateQuotient { dim: usize, face: FaceId },
    #[error("complex is not a simplicial poset")]
    NotSimplicialPoset,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{dim}-face {face} lies in {incidence} top-dimensional faces")]
    NonManifoldFace {
        dim: usize,
        face: FaceId,
        incidence: usize,
    },
}

/// A single `k`-face: its boundary faces and global vertices, both in local
/// vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    pub boundary: Vec<FaceId>,
    pub vertices: Vec<VertexId>,
}

/// Content hash of a complex's face lattice. Two complexes with identical
/// face tables share an id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexId(pub u64);

impl fmt::Display for ComplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl Serialize for ComplexId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Face counts `(f_0, ..., f_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn dim(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn get(&self, j: usize) -> u64 {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn euler_char(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &f)| if j % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, x) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone)]
pub struct FacePoset {
    faces: Vec<Vec<Face>>,
    /// `cofaces[k][id]` lists `(coface id, slot)` pairs in dimension `k + 1`.
    cofaces: Vec<Vec<Vec<(FaceId, u8)>>>,
    components: usize,
    id: ComplexId,
    gluing: Option<GluingSpec>,
}

impl PartialEq for FacePoset {
    fn eq(&self, other: &Self) -> bool {
        self.faces == other.faces
    }
}

impl Eq for FacePoset {}

impl FacePoset {
    /// Assembles a poset from raw face tables, checking only index ranges and
    /// tuple lengths. Combinatorial validity is the job of [`validate`].
    pub fn from_faces(
        faces: Vec<Vec<Face>>,
        gluing: Option<GluingSpec>,
    ) -> Result<FacePoset, PosetError> {
        if faces.is_empty() {
            return Err(PosetError::Malformed("no vertex table".into()));
        }
        let n = faces[0].len();
        for (i, v) in faces[0].iter().enumerate() {
            if !v.boundary.is_empty() || v.vertices != [i] {
                return Err(PosetError::Malformed(format!(
                    "vertex {i} must have empty boundary and vertex tuple [{i}]"
                )));
            }
        }
        for k in 1..faces.len() {
            let below = faces[k - 1].len();
            for (id, face) in faces[k].iter().enumerate() {
                if face.boundary.len() != k + 1 || face.vertices.len() != k + 1 {
                    return Err(PosetError::Malformed(format!(
                        "{k}-face {id} must have {} boundary entries and vertices",
                        k + 1
                    )));
                }
                if let Some(&b) = face.boundary.iter().find(|&&b| b >= below) {
                    return Err(PosetError::Malformed(format!(
                        "{k}-face {id} has boundary {b} out of range"
                    )));
                }
                if let Some(&v) = face.vertices.iter().find(|&&v| v >= n) {
                    return Err(PosetError::Malformed(format!(
                        "{k}-face {id} has vertex {v} out of range"
                    )));
                }
            }
        }

        let mut cofaces: Vec<Vec<Vec<(FaceId, u8)>>> =
            faces.iter().map(|fs| vec![Vec::new(); fs.len()]).collect();
        for k in 1..faces.len() {
            for (id, face) in faces[k].iter().enumerate() {
                for (slot, &b) in face.boundary.iter().enumerate() {
                    cofaces[k - 1][b].push((id, slot as u8));
                }
            }
        }

        let mut uf = UnionFind::<usize>::new(n);
        if faces.len() > 1 {
            for e in &faces[1] {
                uf.union(e.vertices[0], e.vertices[1]);
            }
        }
        let mut roots: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();

        let id = hash_faces(&faces);
        Ok(FacePoset {
            faces,
            cofaces,
            components: roots.len(),
            id,
            gluing,
        })
    }

    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn id(&self) -> ComplexId {
        self.id
    }

    pub fn faces(&self, k: usize) -> &[Face] {
        self.faces.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn face(&self, k: usize, id: FaceId) -> &Face {
        &self.faces[k][id]
    }

    pub fn count(&self, k: usize) -> usize {
        self.faces(k).len()
    }

    pub fn n_vertices(&self) -> usize {
        self.faces[0].len()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn gluing_spec(&self) -> Option<&GluingSpec> {
        self.gluing.as_ref()
    }

    pub(crate) fn with_gluing(mut self, gluing: Option<GluingSpec>) -> Self {
        self.gluing = gluing;
        self
    }

    /// `(coface, slot)` pairs of the `k`-face `id` in dimension `k + 1`.
    pub fn cofaces(&self, k: usize, id: FaceId) -> &[(FaceId, u8)] {
        self.cofaces
            .get(k)
            .and_then(|c| c.get(id))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces.iter().map(|f| f.len() as u64).collect())
    }

    pub fn euler_char(&self) -> i64 {
        self.f_vector().euler_char()
    }

    /// The subface of the `k`-face `id` spanned by the local vertices in
    /// `mask` (bit `i` = local vertex `i`). Returns `(dimension, id)`.
    pub fn subface(&self, k: usize, id: FaceId, mask: u32) -> (usize, FaceId) {
        debug_assert!(mask != 0 && mask < 1 << (k + 1));
        let (mut dim, mut cur) = (k, id);
        for i in (0..=k).rev() {
            if mask & (1 << i) == 0 {
                cur = self.faces[dim][cur].boundary[i];
                dim -= 1;
            }
        }
        (dim, cur)
    }

    /// Edge between local vertices `a` and `b` of the `k`-face `id`.
    pub fn edge_of(&self, k: usize, id: FaceId, a: usize, b: usize) -> FaceId {
        self.subface(k, id, (1 << a) | (1 << b)).1
    }

    /// Every `(k - 1)`-face of the top dimension lies in exactly two
    /// top-dimensional face slots.
    pub fn is_closed(&self) -> bool {
        let d = self.dim();
        d >= 1 && (0..self.count(d - 1)).all(|f| self.cofaces(d - 1, f).len() == 2)
    }

    /// Component label for each vertex, numbered by lowest vertex id.
    pub fn vertex_components(&self) -> Vec<usize> {
        let n = self.n_vertices();
        let mut uf = UnionFind::<usize>::new(n);
        for e in self.faces(1) {
            uf.union(e.vertices[0], e.vertices[1]);
        }
        let mut label = HashMap::new();
        (0..n)
            .map(|v| {
                let next = label.len();
                *label.entry(uf.find(v)).or_insert(next)
            })
            .collect()
    }

    /// Re-derives a facet gluing description from a 3-dimensional poset in
    /// which every triangle lies in at most two tetrahedron slots.
    pub fn to_gluing_spec(&self) -> Result<GluingSpec, PosetError> {
        if self.dim() != 3 {
            return Err(PosetError::DimensionMismatch {
                expected: 3,
                found: self.dim(),
            });
        }
        let mut gluings = vec![[None; 4]; self.count(3)];
        for tri in 0..self.count(2) {
            match self.cofaces(2, tri) {
                [] | [_] => {}
                &[(t, i), (u, j)] => {
                    let perm = slot_permutation(i as usize, j as usize);
                    gluings[t][i as usize] = Some(FaceGluing {
                        facet: u,
                        face: j,
                        perm,
                    });
                    gluings[u][j as usize] = Some(FaceGluing {
                        facet: t,
                        face: i,
                        perm: invert(perm),
                    });
                }
                more => {
                    return Err(PosetError::NonManifoldFace {
                        dim: 2,
                        face: tri,
                        incidence: more.len(),
                    })
                }
            }
        }
        GluingSpec::new(gluings)
    }

    /// Disjoint union of two posets of equal dimension. Ids of `other` are
    /// shifted past those of `self`.
    pub fn disjoint_union(&self, other: &FacePoset) -> Result<FacePoset, PosetError> {
        if self.dim() != other.dim() {
            return Err(PosetError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let nv = self.n_vertices();
        let mut faces = self.faces.clone();
        for k in 0..=self.dim() {
            let shift_b = if k == 0 { 0 } else { self.count(k - 1) };
            faces[k].extend(other.faces(k).iter().map(|f| Face {
                boundary: f.boundary.iter().map(|b| b + shift_b).collect(),
                vertices: f.vertices.iter().map(|v| v + nv).collect(),
            }));
        }
        FacePoset::from_faces(faces, None)
    }

    /// Builds the abstract simplicial complex generated by `facets`, each a
    /// set of vertex ids in `0..n_vertices`. Faces of each dimension are
    /// numbered in lexicographic order of their sorted vertex tuples.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<VertexId>]) -> Result<FacePoset, PosetError> {
        let dim = facets
            .iter()
            .map(|f| f.len())
            .max()
            .ok_or_else(|| PosetError::Malformed("no facets".into()))?
            - 1;
        let mut by_dim: Vec<BTreeMap<Vec<VertexId>, FaceId>> = vec![BTreeMap::new(); dim + 1];
        for v in 0..n_vertices {
            by_dim[0].insert(vec![v], 0);
        }
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) || f.iter().any(|&v| v >= n_vertices) {
                return Err(PosetError::Malformed(format!("bad facet {facet:?}")));
            }
            let m = f.len();
            for mask in 1u32..(1 << m) {
                let sub: Vec<VertexId> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                by_dim[sub.len() - 1].insert(sub, 0);
            }
        }
        for table in &mut by_dim {
            for (i, id) in table.values_mut().enumerate() {
                *id = i;
            }
        }
        let mut faces = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            let layer = by_dim[k]
                .keys()
                .map(|verts| Face {
                    boundary: if k == 0 {
                        Vec::new()
                    } else {
                        (0..=k)
                            .map(|i| {
                                let mut sub = verts.clone();
                                sub.remove(i);
                                by_dim[k - 1][&sub]
                            })
                            .collect()
                    },
                    vertices: verts.clone(),
                })
                .collect();
            faces.push(layer);
        }
        FacePoset::from_faces(faces, None)
    }
}

/// Permutation of `{0..3}` that carries tetrahedron slot `i` onto slot `j`,
/// matching the remaining local vertices in increasing order.
fn slot_permutation(i: usize, j: usize) -> [u8; 4] {
    let src = (0..4).filter(|&x| x != i);
    let dst: Vec<u8> = (0..4u8).filter(|&x| x as usize != j).collect();
    let mut perm = [0u8; 4];
    perm[i] = j as u8;
    for (s, &d) in src.zip(&dst) {
        perm[s] = d;
    }
    perm
}

pub(crate) fn invert(perm: [u8; 4]) -> [u8; 4] {
    let mut inv = [0u8; 4];
    for (i, &p) in perm.iter().enumerate() {
        inv[p as usize] = i as u8;
    }
    inv
}

fn hash_faces(faces: &[Vec<Face>]) -> ComplexId {
    let mut h = Sha256::new();
    h.update((faces.len() as u64).to_le_bytes());
    for layer in faces {
        h.update((layer.len() as u64).to_le_bytes());
        for face in layer {
            for &b in &face.boundary {
                h.update((b as u64).to_le_bytes());
            }
            for &v in &face.vertices {
                h.update((v as u64).to_le_bytes());
            }
        }
    }
    let digest = h.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    ComplexId(u64::from_be_bytes(bytes))
}
