//! Facet gluing input and its realization as a face poset.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::{invert, Face, FacePoset, PosetError};

/// Gluing of one tetrahedron face slot onto another.
///
/// `perm` is a permutation of `{0,1,2,3}` with `perm[i] == face` for the
/// source slot `i`; it sends the three remaining local vertices of the
/// source tetrahedron to those of the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FaceGluing {
    pub facet: usize,
    pub face: u8,
    pub perm: [u8; 4],
}

/// Face-pairing description of a 3-dimensional complex. `None` marks a
/// boundary slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GluingSpec {
    gluings: Vec<[Option<FaceGluing>; 4]>,
}

impl GluingSpec {
    pub fn new(gluings: Vec<[Option<FaceGluing>; 4]>) -> Result<GluingSpec, PosetError> {
        let spec = GluingSpec { gluings };
        spec.check()?;
        Ok(spec)
    }

    pub fn n_facets(&self) -> usize {
        self.gluings.len()
    }

    pub fn slot(&self, facet: usize, face: usize) -> Option<FaceGluing> {
        self.gluings[facet][face]
    }

    pub fn slots(&self) -> &[[Option<FaceGluing>; 4]] {
        &self.gluings
    }

    fn check(&self) -> Result<(), PosetError> {
        let n = self.gluings.len();
        for (t, slots) in self.gluings.iter().enumerate() {
            for (i, g) in slots.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.facet >= n || g.face > 3 {
                    return Err(PosetError::FacetOutOfRange { facet: t, face: i });
                }
                let mut seen = [false; 4];
                for &x in &g.perm {
                    if x > 3 || std::mem::replace(&mut seen[x as usize], true) {
                        return Err(PosetError::InvalidPermutation { facet: t, face: i });
                    }
                }
                if g.perm[i] != g.face {
                    return Err(PosetError::InvalidPermutation { facet: t, face: i });
                }
                if g.facet == t && g.face as usize == i {
                    return Err(PosetError::SelfGluedFace { facet: t, face: i });
                }
                let back = self.gluings[g.facet][g.face as usize];
                let expected = FaceGluing {
                    facet: t,
                    face: i as u8,
                    perm: invert(g.perm),
                };
                if back != Some(expected) {
                    return Err(PosetError::NonInvolutiveGluing { facet: t, face: i });
                }
            }
        }
        Ok(())
    }
}

const SUBSETS: usize = 16;

fn local_vertices(mask: usize) -> impl Iterator<Item = usize> {
    (0..4).filter(move |i| mask & (1 << i) != 0)
}

/// Realizes a gluing spec as a face poset.
///
/// Every nonempty local vertex subset of every tetrahedron is a candidate
/// face; gluings merge candidates by union-find, and the resulting classes
/// are numbered by `(dimension, smallest representative)`. A face whose
/// vertices are pairwise distinct lists them in increasing global id order,
/// which makes the simplicial identities automatic. Faces with repeated
/// vertices keep the local order of their representative and are flagged
/// later by validation.
pub fn build_complex(spec: &GluingSpec) -> Result<FacePoset, PosetError> {
    spec.check()?;
    let n = spec.n_facets();
    if n == 0 {
        return Err(PosetError::Malformed("gluing spec has no facets".into()));
    }
    let key = |t: usize, mask: usize| t * SUBSETS + mask;
    let mut uf = UnionFind::<usize>::new(n * SUBSETS);
    for (t, slots) in spec.gluings.iter().enumerate() {
        for (i, g) in slots.iter().enumerate() {
            let Some(g) = g else { continue };
            for mask in 1..SUBSETS {
                if mask & (1 << i) != 0 {
                    continue;
                }
                let image: usize = local_vertices(mask).map(|x| 1 << g.perm[x]).sum();
                uf.union(key(t, mask), key(g.facet, image));
            }
        }
    }

    // smallest representative of each class, scanned in key order
    let mut rep_of_root: HashMap<usize, usize> = HashMap::new();
    let mut reps: Vec<Vec<usize>> = vec![Vec::new(); 4];
    for t in 0..n {
        for mask in 1..SUBSETS {
            let k = key(t, mask);
            let root = uf.find(k);
            if let std::collections::hash_map::Entry::Vacant(e) = rep_of_root.entry(root) {
                e.insert(k);
                reps[mask.count_ones() as usize - 1].push(k);
            }
        }
    }
    for layer in &mut reps {
        layer.sort_unstable();
    }
    let mut class_id: HashMap<usize, usize> = HashMap::new();
    for layer in &reps {
        for (id, &k) in layer.iter().enumerate() {
            class_id.insert(uf.find(k), id);
        }
    }
    let id_of = |uf: &UnionFind<usize>, t: usize, mask: usize| class_id[&uf.find(key(t, mask))];

    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); 4];
    for (dim, layer) in reps.iter().enumerate() {
        for &k in layer {
            let (t, mask) = (k / SUBSETS, k % SUBSETS);
            let mut local: Vec<usize> = local_vertices(mask).collect();
            let global: Vec<usize> = local.iter().map(|&x| id_of(&uf, t, 1 << x)).collect();
            let mut distinct = global.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() == global.len() {
                local.sort_by_key(|&x| id_of(&uf, t, 1 << x));
            }
            let vertices: Vec<usize> = local.iter().map(|&x| id_of(&uf, t, 1 << x)).collect();
            let boundary = if dim == 0 {
                Vec::new()
            } else {
                local
                    .iter()
                    .map(|&x| id_of(&uf, t, mask & !(1 << x)))
                    .collect()
            };
            faces[dim].push(Face { boundary, vertices });
        }
    }
    Ok(FacePoset::from_faces(faces, None)?.with_gluing(Some(spec.clone())))
}
