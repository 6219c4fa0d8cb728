use super::{Face, FacePoset, PosetError, VertexId};

/// Link of a vertex: the `(d - 1)`-dimensional poset whose `k`-faces are the
/// `(k + 1)`-faces containing `v`. Link vertex ids correspond to the edges at
/// `v`, so parallel edges give distinct link vertices.
///
/// Faces in which `v` occurs more than once (invalid posets) are linked
/// through the first occurrence.
pub fn vertex_link(p: &FacePoset, v: VertexId) -> Result<FacePoset, PosetError> {
    if v >= p.n_vertices() {
        return Err(PosetError::UnknownVertex(v));
    }
    if p.dim() == 0 {
        return Err(PosetError::Malformed("vertex link of a 0-dimensional complex".into()));
    }
    let mut index: Vec<Vec<Option<usize>>> = Vec::with_capacity(p.dim() + 1);
    index.push(Vec::new());
    let mut faces: Vec<Vec<Face>> = Vec::with_capacity(p.dim());
    for k in 1..=p.dim() {
        let mut map = vec![None; p.count(k)];
        let mut layer = Vec::new();
        for (id, face) in p.faces(k).iter().enumerate() {
            let Some(j) = face.vertices.iter().position(|&w| w == v) else {
                continue;
            };
            let lid = layer.len();
            map[id] = Some(lid);
            let others = (0..=k).filter(|&i| i != j);
            let new_face = if k == 1 {
                Face { boundary: Vec::new(), vertices: vec![lid] }
            } else {
                Face {
                    boundary: others
                        .clone()
                        .map(|i| index[k - 1][face.boundary[i]].expect("boundary contains v"))
                        .collect(),
                    vertices: others
                        .map(|i| index[1][p.edge_of(k, id, i, j)].expect("edge contains v"))
                        .collect(),
                }
            };
            layer.push(new_face);
        }
        index.push(map);
        faces.push(layer);
    }
    FacePoset::from_faces(faces, None)
}
