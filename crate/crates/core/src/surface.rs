//! Discrete normal surfaces dual to ℤ/2 1-cocycles.
//!
//! A cocycle restricted to a tetrahedron is the cut function of a 2-coloring
//! of its four vertices, so each tetrahedron meets the dual surface in
//! nothing, one triangle (3 + 1 split) or one quadrilateral (2 + 2 split).
//! The surface is assembled combinatorially: one point per odd edge, one arc
//! per triangle with two odd edges, one piece per nonempty tetrahedron.

use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::cohomology::{is_cocycle, Cochain, CohomologyError};
use crate::poset::{ComplexId, FaceId, FacePoset};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("cochain restricted to tetrahedron {0} is not a cut function")]
    NotACutFunction(FaceId),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("complex is not closed: triangle {triangle} lies in {incidence} tetrahedron slots")]
    NotClosed { triangle: FaceId, incidence: usize },
    #[error("surfaces need a 3-dimensional complex, got dimension {0}")]
    WrongDimension(usize),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// Intersection type of a tetrahedron with the dual surface, in local
/// vertex labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TetPattern {
    Empty,
    /// The three odd edges meet at `apex`.
    Triangle { apex: u8 },
    /// The odd edges are the four crossing `{sides[0]} | {sides[1]}`;
    /// `sides[0]` contains local vertex 0 and each side is sorted.
    Quad { sides: [[u8; 2]; 2] },
}

impl TetPattern {
    /// Classifies the cut `{v : color bit v set}` of a tetrahedron.
    pub fn from_coloring(color: u8) -> TetPattern {
        let color = if color & 1 == 1 { !color & 0xf } else { color & 0xf };
        match color.count_ones() {
            0 => TetPattern::Empty,
            1 => TetPattern::Triangle { apex: color.trailing_zeros() as u8 },
            3 => TetPattern::Triangle { apex: (!color & 0xf).trailing_zeros() as u8 },
            _ => {
                let zero: Vec<u8> = (0..4).filter(|i| color & (1 << i) == 0).collect();
                let one: Vec<u8> = (0..4).filter(|i| color & (1 << i) != 0).collect();
                TetPattern::Quad { sides: [[zero[0], zero[1]], [one[0], one[1]]] }
            }
        }
    }

    /// Local edges `(a, b)` with `a < b` that the pattern crosses.
    pub fn odd_edges(self) -> Vec<(u8, u8)> {
        let mut out: Vec<(u8, u8)> = match self {
            TetPattern::Empty => Vec::new(),
            TetPattern::Triangle { apex } => (0..4)
                .filter(|&x| x != apex)
                .map(|x| (apex.min(x), apex.max(x)))
                .collect(),
            TetPattern::Quad { sides: [[x, y], [z, w]] } => {
                vec![(x.min(z), x.max(z)), (x.min(w), x.max(w)), (y.min(z), y.max(z)), (y.min(w), y.max(w))]
            }
        };
        out.sort_unstable();
        out
    }

    /// Boundary cycle of the piece as a list of crossed local edges.
    /// Triangles run through the apex edges in increasing order of the far
    /// vertex; quads for `{x,y} | {z,w}` run `xz → xw → yw → yz`.
    pub fn boundary_cycle(self) -> Vec<(u8, u8)> {
        let e = |a: u8, b: u8| (a.min(b), a.max(b));
        match self {
            TetPattern::Empty => Vec::new(),
            TetPattern::Triangle { apex } => {
                (0..4).filter(|&x| x != apex).map(|x| e(apex, x)).collect()
            }
            TetPattern::Quad { sides: [[x, y], [z, w]] } => {
                vec![e(x, z), e(x, w), e(y, w), e(y, z)]
            }
        }
    }
}

const LOCAL_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Pattern cut out of tetrahedron `t` by `psi`.
pub fn tet_pattern(p: &FacePoset, psi: &Cochain, t: FaceId) -> Result<TetPattern, SurfaceError> {
    psi.check_on(p, 1)?;
    if p.dim() != 3 {
        return Err(SurfaceError::WrongDimension(p.dim()));
    }
    let odd = |a: usize, b: usize| psi.get(p.edge_of(3, t, a, b));
    let mut color = 0u8;
    for b in 1..4 {
        if odd(0, b) {
            color |= 1 << b;
        }
    }
    for &(a, b) in &LOCAL_EDGES {
        let cut = (color >> a & 1) != (color >> b & 1);
        if cut != odd(a, b) {
            return Err(SurfaceError::NotACutFunction(t));
        }
    }
    Ok(TetPattern::from_coloring(color))
}

/// A normal arc: the part of the surface inside one triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub triangle: FaceId,
    /// The two odd edges it joins, ascending.
    pub ends: [FaceId; 2],
    /// Indices of the two pieces bordering it.
    pub pieces: [usize; 2],
}

/// The part of the surface inside one tetrahedron.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub tetrahedron: FaceId,
    pub pattern: TetPattern,
    /// Cyclic boundary: entry `i` is `(point, arc)`, where the arc (a
    /// triangle id) joins this point to the next one.
    pub boundary: Vec<(FaceId, FaceId)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Surface {
    complex: ComplexId,
    /// Odd edge ids, ascending.
    pub points: Vec<FaceId>,
    /// Ordered by triangle id.
    pub arcs: Vec<Arc>,
    /// Ordered by tetrahedron id.
    pub pieces: Vec<Piece>,
    /// Piece indices of each connected component, ordered by smallest piece.
    pub components: Vec<Vec<usize>>,
}

impl Surface {
    pub fn complex(&self) -> ComplexId {
        self.complex
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `|points| - |arcs| + |pieces|`.
    pub fn euler_char(&self) -> i64 {
        self.points.len() as i64 - self.arcs.len() as i64 + self.pieces.len() as i64
    }

    /// Odd-edge indicator of the surface: the 1-cochain it is dual to.
    pub fn dual_cochain(&self, p: &FacePoset) -> Cochain {
        Cochain::indicator(p, 1, self.points.iter().copied())
    }

    fn component_cells(&self, component: &[usize]) -> (usize, usize, usize) {
        let mut points: Vec<FaceId> = Vec::new();
        let mut arcs: Vec<FaceId> = Vec::new();
        for &i in component {
            for &(pt, arc) in &self.pieces[i].boundary {
                points.push(pt);
                arcs.push(arc);
            }
        }
        points.sort_unstable();
        points.dedup();
        arcs.sort_unstable();
        arcs.dedup();
        (points.len(), arcs.len(), component.len())
    }

    pub fn component_euler_char(&self, c: usize) -> i64 {
        let (v, e, f) = self.component_cells(&self.components[c]);
        v as i64 - e as i64 + f as i64
    }
}

fn check_closed_3d(p: &FacePoset) -> Result<(), SurfaceError> {
    if p.dim() != 3 {
        return Err(SurfaceError::WrongDimension(p.dim()));
    }
    for tri in 0..p.count(2) {
        let incidence = p.cofaces(2, tri).len();
        if incidence != 2 {
            return Err(SurfaceError::NotClosed { triangle: tri, incidence });
        }
    }
    Ok(())
}

/// Builds the discrete normal surface dual to the cocycle `psi`.
pub fn extract_surface(p: &FacePoset, psi: &Cochain) -> Result<Surface, SurfaceError> {
    psi.check_on(p, 1)?;
    check_closed_3d(p)?;
    if !is_cocycle(p, psi)? {
        return Err(SurfaceError::NotACocycle);
    }

    let mut pieces = Vec::new();
    let mut piece_of_tet = vec![usize::MAX; p.count(3)];
    for t in 0..p.count(3) {
        let pattern = tet_pattern(p, psi, t)?;
        if pattern == TetPattern::Empty {
            continue;
        }
        let cycle = pattern.boundary_cycle();
        let boundary = (0..cycle.len())
            .map(|i| {
                let (a, b) = cycle[i];
                let (c, d) = cycle[(i + 1) % cycle.len()];
                let mask = (1u32 << a) | (1 << b) | (1 << c) | (1 << d);
                (p.edge_of(3, t, a as usize, b as usize), p.subface(3, t, mask).1)
            })
            .collect();
        piece_of_tet[t] = pieces.len();
        pieces.push(Piece { tetrahedron: t, pattern, boundary });
    }

    let points: Vec<FaceId> = psi.support().collect();
    let mut arcs = Vec::new();
    for (tri, face) in p.faces(2).iter().enumerate() {
        let mut ends: Vec<FaceId> = face.boundary.iter().copied().filter(|&e| psi.get(e)).collect();
        if ends.len() != 2 {
            continue;
        }
        ends.sort_unstable();
        let slots = p.cofaces(2, tri);
        arcs.push(Arc {
            triangle: tri,
            ends: [ends[0], ends[1]],
            pieces: [piece_of_tet[slots[0].0], piece_of_tet[slots[1].0]],
        });
    }

    // connectivity through shared arcs and shared points
    let mut uf = UnionFind::<usize>::new(pieces.len());
    for arc in &arcs {
        uf.union(arc.pieces[0], arc.pieces[1]);
    }
    let mut first_at_point = vec![usize::MAX; p.count(1)];
    for (i, piece) in pieces.iter().enumerate() {
        for &(pt, _) in &piece.boundary {
            if first_at_point[pt] == usize::MAX {
                first_at_point[pt] = i;
            } else {
                uf.union(first_at_point[pt], i);
            }
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut comp_of_root = std::collections::HashMap::new();
    for i in 0..pieces.len() {
        let root = uf.find(i);
        let c = *comp_of_root.entry(root).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        components[c].push(i);
    }

    Ok(Surface { complex: p.id(), points, arcs, pieces, components })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SurfaceType {
    Orientable { genus: i64 },
    NonOrientable { crosscaps: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub chi: i64,
    pub orientable: bool,
    #[serde(flatten)]
    pub topology: SurfaceType,
    pub pieces: usize,
}

impl ComponentClass {
    pub fn is_sphere(&self) -> bool {
        self.orientable && self.chi == 2
    }
}

/// Classifies every component with the canonical traversal order.
pub fn classify_components(s: &Surface) -> Vec<ComponentClass> {
    let identity: Vec<usize> = (0..s.pieces.len()).collect();
    classify_components_in_order(s, &identity)
}

/// Classifies every component, visiting pieces by ascending `priority`
/// (a permutation of piece indices: `priority[i]` is the rank of piece
/// `i`). The verdicts do not depend on the order.
pub fn classify_components_in_order(s: &Surface, priority: &[usize]) -> Vec<ComponentClass> {
    assert_eq!(priority.len(), s.pieces.len(), "priority must rank every piece");
    // per piece: (neighbor piece, own direction on the arc, neighbor direction)
    let mut adjacent: Vec<Vec<(usize, bool, bool)>> = vec![Vec::new(); s.pieces.len()];
    let direction = |piece: &Piece, arc: &Arc| -> bool {
        let n = piece.boundary.len();
        let i = piece
            .boundary
            .iter()
            .position(|&(_, a)| a == arc.triangle)
            .expect("arc on piece boundary");
        let from = piece.boundary[i].0;
        let to = piece.boundary[(i + 1) % n].0;
        debug_assert!(arc.ends.contains(&from) && arc.ends.contains(&to));
        from == arc.ends[0]
    };
    for arc in &s.arcs {
        let [a, b] = arc.pieces;
        let da = direction(&s.pieces[a], arc);
        let db = direction(&s.pieces[b], arc);
        adjacent[a].push((b, da, db));
        adjacent[b].push((a, db, da));
    }
    for list in &mut adjacent {
        list.sort_by_key(|&(q, _, _)| priority[q]);
    }

    s.components
        .iter()
        .enumerate()
        .map(|(c, members)| {
            let mut order = members.clone();
            order.sort_by_key(|&i| priority[i]);
            let mut sign: Vec<Option<bool>> = vec![None; s.pieces.len()];
            let mut orientable = true;
            let mut queue = VecDeque::new();
            for &start in &order {
                if sign[start].is_some() {
                    continue;
                }
                sign[start] = Some(true);
                queue.push_back(start);
                while let Some(a) = queue.pop_front() {
                    let sa = sign[a].expect("visited");
                    for &(b, da, db) in &adjacent[a] {
                        // induced directions on the shared arc must be opposite
                        let want = !(sa == da) == db;
                        match sign[b] {
                            None => {
                                sign[b] = Some(want);
                                queue.push_back(b);
                            }
                            Some(sb) if sb != want => orientable = false,
                            Some(_) => {}
                        }
                    }
                }
            }
            let chi = s.component_euler_char(c);
            let topology = if orientable {
                SurfaceType::Orientable { genus: (2 - chi).div_euclid(2) }
            } else {
                SurfaceType::NonOrientable { crosscaps: 2 - chi }
            };
            ComponentClass { chi, orientable, topology, pieces: members.len() }
        })
        .collect()
}

/// The subcomplex of faces containing no odd edge.
#[derive(Debug, Clone, Serialize)]
pub struct SlicingSubcomplex {
    complex: ComplexId,
    /// Included face ids per dimension.
    pub faces: Vec<Vec<FaceId>>,
    pub f_vector: Vec<u64>,
    pub euler_char: i64,
    pub components: usize,
}

impl SlicingSubcomplex {
    pub fn complex(&self) -> ComplexId {
        self.complex
    }
}

/// Works for any 1-cochain and any dimension.
pub fn slicing_subcomplex(p: &FacePoset, psi: &Cochain) -> Result<SlicingSubcomplex, SurfaceError> {
    psi.check_on(p, 1)?;
    let mut keep: Vec<Vec<bool>> = vec![vec![true; p.n_vertices()]];
    if p.dim() >= 1 {
        keep.push((0..p.count(1)).map(|e| !psi.get(e)).collect());
    }
    for k in 2..=p.dim() {
        let layer = p
            .faces(k)
            .iter()
            .map(|f| f.boundary.iter().all(|&b| keep[k - 1][b]))
            .collect();
        keep.push(layer);
    }
    let faces: Vec<Vec<FaceId>> = keep
        .iter()
        .map(|layer| layer.iter().enumerate().filter(|(_, &k)| k).map(|(i, _)| i).collect())
        .collect();
    let f_vector: Vec<u64> = faces.iter().map(|l| l.len() as u64).collect();
    let euler_char = f_vector
        .iter()
        .enumerate()
        .map(|(j, &f)| if j % 2 == 0 { f as i64 } else { -(f as i64) })
        .sum();
    let mut uf = UnionFind::<usize>::new(p.n_vertices());
    if p.dim() >= 1 {
        for &e in &faces[1] {
            let v = &p.face(1, e).vertices;
            uf.union(v[0], v[1]);
        }
    }
    let mut roots: Vec<usize> = (0..p.n_vertices()).map(|v| uf.find(v)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(SlicingSubcomplex {
        complex: p.id(),
        faces,
        f_vector,
        euler_char,
        components: roots.len(),
    })
}

/// Checks `χ(S_ψ) = χ(Δ_ψ) - χ(Δ)` with the surface χ taken from cell counts.
pub fn cross_check(p: &FacePoset, psi: &Cochain) -> Result<bool, SurfaceError> {
    let s = extract_surface(p, psi)?;
    let slicing = slicing_subcomplex(p, psi)?;
    Ok(s.euler_char() == slicing.euler_char - p.euler_char())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{coboundary0, h1};
    use crate::generators::{cyclic_polytope_boundary, lens_standard, LensParams};

    fn simplex4() -> FacePoset {
        cyclic_polytope_boundary(5).unwrap()
    }

    fn rp3() -> FacePoset {
        lens_standard(LensParams::new(2, 1).unwrap()).unwrap()
    }

    /// A single tetrahedron's six edges with the chosen local edges odd.
    fn pattern_of(odd: &[(usize, usize)]) -> Result<TetPattern, SurfaceError> {
        let p = FacePoset::from_facets(4, &[vec![0, 1, 2, 3]]).unwrap();
        let edges = odd.iter().map(|&(a, b)| p.edge_of(3, 0, a, b));
        tet_pattern(&p, &Cochain::indicator(&p, 1, edges), 0)
    }

    #[test]
    fn tetrahedron_patterns() {
        assert_eq!(pattern_of(&[]).unwrap(), TetPattern::Empty);
        assert_eq!(
            pattern_of(&[(0, 1), (0, 2), (0, 3)]).unwrap(),
            TetPattern::Triangle { apex: 0 }
        );
        assert_eq!(
            pattern_of(&[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap(),
            TetPattern::Quad { sides: [[0, 1], [2, 3]] }
        );
        assert_eq!(pattern_of(&[(1, 2)]), Err(SurfaceError::NotACutFunction(0)));
    }

    #[test]
    fn pattern_odd_edges_match_definition() {
        for color in 0u8..16 {
            let pattern = TetPattern::from_coloring(color);
            let cut: Vec<(u8, u8)> = LOCAL_EDGES
                .iter()
                .filter(|&&(a, b)| (color >> a & 1) != (color >> b & 1))
                .map(|&(a, b)| (a as u8, b as u8))
                .collect();
            assert_eq!(pattern.odd_edges(), cut);
            assert_eq!(TetPattern::from_coloring(!color & 0xf), pattern);
        }
    }

    #[test]
    fn zero_cocycle_gives_empty_surface() {
        let p = simplex4();
        let s = extract_surface(&p, &Cochain::zero(&p, 1)).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.euler_char(), 0);
        assert!(classify_components(&s).is_empty());
        assert!(cross_check(&p, &Cochain::zero(&p, 1)).unwrap());
    }

    #[test]
    fn vertex_link_surface_in_simplex_boundary() {
        let p = simplex4();
        let psi = coboundary0(&p, &Cochain::indicator(&p, 0, [0])).unwrap();
        let s = extract_surface(&p, &psi).unwrap();
        assert_eq!((s.points.len(), s.arcs.len(), s.pieces.len()), (4, 6, 4));
        assert_eq!(s.euler_char(), 2);
        let classes = classify_components(&s);
        assert_eq!(classes.len(), 1);
        assert!(classes[0].is_sphere());
        assert_eq!(classes[0].topology, SurfaceType::Orientable { genus: 0 });
        let slicing = slicing_subcomplex(&p, &psi).unwrap();
        assert_eq!(slicing.euler_char, 2);
        assert_eq!(slicing.f_vector, vec![5, 6, 4, 1]);
        assert_eq!(slicing.components, 2);
        assert_eq!(s.dual_cochain(&p), psi);
    }

    #[test]
    fn projective_plane_in_rp3() {
        let p = rp3();
        let rep = h1(&p).representatives[0].clone();
        let s = extract_surface(&p, &rep).unwrap();
        let classes = classify_components(&s);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].chi, 1);
        assert!(!classes[0].orientable);
        assert_eq!(classes[0].topology, SurfaceType::NonOrientable { crosscaps: 1 });
        assert_eq!(slicing_subcomplex(&p, &rep).unwrap().euler_char, 1);
        assert!(cross_check(&p, &rep).unwrap());
    }

    #[test]
    fn errors() {
        let p = simplex4();
        let bad = Cochain::indicator(&p, 1, [0]);
        assert_eq!(extract_surface(&p, &bad).unwrap_err(), SurfaceError::NotACocycle);
        let tet = FacePoset::from_facets(4, &[vec![0, 1, 2, 3]]).unwrap();
        assert!(matches!(
            extract_surface(&tet, &Cochain::zero(&tet, 1)),
            Err(SurfaceError::NotClosed { .. })
        ));
    }
}
