use std::collections::HashMap;

use super::{validate, Face, FaceId, FacePoset, PosetError, VertexId};

/// Quotient of a vertex-determined complex by the cyclic group generated by
/// the vertex permutation `g` of order `order`.
///
/// Faces of the result are the orbits of faces of `p`; the action must be
/// free on faces of every dimension. Orbits are numbered by their smallest
/// member, and every quotient face lists its vertices in increasing order.
pub fn quotient_by_group(p: &FacePoset, g: &[VertexId], order: usize) -> Result<FacePoset, PosetError> {
    let n = p.n_vertices();
    if g.len() != n {
        return Err(PosetError::NotAnAutomorphism(format!(
            "permutation has {} entries for {n} vertices",
            g.len()
        )));
    }
    let mut seen = vec![false; n];
    for &x in g {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(PosetError::NotAnAutomorphism("not a permutation".into()));
        }
    }
    if order == 0 {
        return Err(PosetError::NotAnAutomorphism("order must be positive".into()));
    }
    let power = |v: VertexId, m: usize| (0..m).fold(v, |x, _| g[x]);
    if (0..n).any(|v| power(v, order) != v) {
        return Err(PosetError::NotAnAutomorphism(format!(
            "g^{order} is not the identity"
        )));
    }
    if order == 1 {
        return Ok(p.clone());
    }

    // vertex set -> face id, per dimension
    let mut lookup: Vec<HashMap<Vec<VertexId>, FaceId>> = Vec::with_capacity(p.dim() + 1);
    for k in 0..=p.dim() {
        let mut table = HashMap::with_capacity(p.count(k));
        for (id, face) in p.faces(k).iter().enumerate() {
            let mut key = face.vertices.clone();
            key.sort_unstable();
            if table.insert(key.clone(), id).is_some() {
                return Err(PosetError::NotVertexDetermined { dim: k, vertices: key });
            }
        }
        lookup.push(table);
    }

    // image of every face under g
    let mut image: Vec<Vec<FaceId>> = Vec::with_capacity(p.dim() + 1);
    for k in 0..=p.dim() {
        let mut layer = Vec::with_capacity(p.count(k));
        for (id, face) in p.faces(k).iter().enumerate() {
            let mut key: Vec<VertexId> = face.vertices.iter().map(|&v| g[v]).collect();
            key.sort_unstable();
            match lookup[k].get(&key) {
                Some(&img) => layer.push(img),
                None => {
                    return Err(PosetError::NotAnAutomorphism(format!(
                        "{k}-face {id} is not mapped onto a face"
                    )))
                }
            }
        }
        image.push(layer);
    }

    // orbits, numbered by smallest member; freeness = every orbit has `order` members
    let mut orbit_of: Vec<Vec<usize>> = Vec::with_capacity(p.dim() + 1);
    for k in 0..=p.dim() {
        let mut label = vec![usize::MAX; p.count(k)];
        let mut next = 0;
        for start in 0..p.count(k) {
            if label[start] != usize::MAX {
                continue;
            }
            let mut cur = start;
            let mut size = 0;
            loop {
                label[cur] = next;
                size += 1;
                cur = image[k][cur];
                if cur == start {
                    break;
                }
                if size > order {
                    break;
                }
            }
            if size != order {
                return Err(PosetError::FixedFace { dim: k, face: start });
            }
            next += 1;
        }
        orbit_of.push(label);
    }

    let mut faces: Vec<Vec<Face>> = Vec::with_capacity(p.dim() + 1);
    for k in 0..=p.dim() {
        let mut layer: Vec<Face> = Vec::new();
        for (id, face) in p.faces(k).iter().enumerate() {
            if orbit_of[k][id] != layer.len() {
                continue;
            }
            let mut local: Vec<(VertexId, usize)> = face
                .vertices
                .iter()
                .enumerate()
                .map(|(i, &v)| (orbit_of[0][v], i))
                .collect();
            local.sort_unstable();
            if local.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(PosetError::DegenerateQuotient { dim: k, face: id });
            }
            let vertices = local.iter().map(|&(q, _)| q).collect();
            let boundary = if k == 0 {
                Vec::new()
            } else {
                local
                    .iter()
                    .map(|&(_, i)| orbit_of[k - 1][face.boundary[i]])
                    .collect()
            };
            layer.push(Face { boundary, vertices });
        }
        faces.push(layer);
    }
    let q = FacePoset::from_faces(faces, None)?;
    if !validate(&q).is_simplicial_poset {
        return Err(PosetError::NotSimplicialPoset);
    }
    Ok(q)
}
