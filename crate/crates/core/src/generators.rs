//! Example complexes: cycles, joins, standard lens space crystallizations,
//! boundaries of cyclic 4-polytopes, and a few small spheres.

use serde::Serialize;

use crate::poset::{
    build_complex, quotient_by_group, validate, Face, FaceGluing, FacePoset, GluingSpec,
    PosetError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall { what: &'static str, min: u64, got: u64 },
    #[error("gcd({p}, {q}) must be 1")]
    NotCoprime { p: u64, q: i64 },
    #[error("2k = qr + 1 has no solution with q, r odd positive for k = {k}, q = {q}")]
    NoSuchR { k: u64, q: i64 },
    #[error("no sphere with {0} tetrahedra in this family")]
    UnsupportedSphere(u64),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Parameters of the lens space `L(p, q)`, optionally with the factorization
/// `p = 2k = qr + 1` used by certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LensParams {
    pub p: u64,
    pub q: i64,
    pub kr: Option<(u64, u64)>,
}

impl LensParams {
    pub fn new(p: u64, q: i64) -> Result<LensParams, GeneratorError> {
        if p < 1 {
            return Err(GeneratorError::TooSmall { what: "p", min: 1, got: p });
        }
        if gcd(p, q.unsigned_abs()) != 1 {
            return Err(GeneratorError::NotCoprime { p, q });
        }
        Ok(LensParams { p, q, kr: None })
    }

    /// `L(2k, q)` with `2k = qr + 1`, `q` and `r` odd positive.
    pub fn with_factorization(k: u64, q: i64) -> Result<LensParams, GeneratorError> {
        let r = solve_r(k, q)?;
        let mut params = LensParams::new(2 * k, q)?;
        params.kr = Some((k, r));
        Ok(params)
    }
}

/// The `r` with `2k = qr + 1`, both `q` and `r` odd and positive.
pub fn solve_r(k: u64, q: i64) -> Result<u64, GeneratorError> {
    let no = GeneratorError::NoSuchR { k, q };
    if k < 1 || q < 1 || q % 2 == 0 {
        return Err(no);
    }
    let q = q as u64;
    let m = 2 * k - 1;
    if !m.is_multiple_of(q) {
        return Err(no);
    }
    Ok(m / q)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An `m`-cycle: vertices `0..m`, edge `i` joining `i` and `i + 1 mod m`.
pub fn cycle(m: u64) -> Result<FacePoset, GeneratorError> {
    if m < 2 {
        return Err(GeneratorError::TooSmall { what: "cycle length", min: 2, got: m });
    }
    let m = m as usize;
    let vertices = (0..m)
        .map(|v| Face { boundary: vec![], vertices: vec![v] })
        .collect();
    let edges = (0..m)
        .map(|i| {
            let (a, b) = (i, (i + 1) % m);
            let (lo, hi) = (a.min(b), a.max(b));
            Face { boundary: vec![hi, lo], vertices: vec![lo, hi] }
        })
        .collect();
    Ok(FacePoset::from_faces(vec![vertices, edges], None)?)
}

/// `m` isolated points.
pub fn points(m: usize) -> Result<FacePoset, GeneratorError> {
    let vertices = (0..m)
        .map(|v| Face { boundary: vec![], vertices: vec![v] })
        .collect();
    Ok(FacePoset::from_faces(vec![vertices], None)?)
}

/// Join of two simplicial posets: faces are pairs `(σ, τ)` with at least one
/// side nonempty. Vertices of `a` come first. Within a dimension faces are
/// ordered by descending dimension of the `a` part, then by `a` id and `b` id.
pub fn join(a: &FacePoset, b: &FacePoset) -> Result<FacePoset, GeneratorError> {
    for side in [a, b] {
        if !validate(side).is_simplicial_poset {
            return Err(PosetError::NotSimplicialPoset.into());
        }
    }
    let (da, db) = (a.dim() as isize, b.dim() as isize);
    let na = a.n_vertices();
    let dim = (da + db + 1) as usize;

    // index of (σ, τ) in its dimension; -1 encodes the empty face
    let mut offset: Vec<Vec<usize>> = Vec::new();
    let mut counts = vec![0usize; dim + 1];
    let count = |p: &FacePoset, d: isize| if d < 0 { 1 } else { p.count(d as usize) };
    for k in 0..=dim as isize {
        let mut offs = Vec::new();
        for ds in (-1..=da.min(k)).rev() {
            let dt = k - 1 - ds;
            if dt < -1 || dt > db {
                offs.push(usize::MAX);
                continue;
            }
            offs.push(counts[k as usize]);
            counts[k as usize] += count(a, ds) * count(b, dt);
        }
        offset.push(offs);
    }
    let index = |k: isize, ds: isize, s: usize, t: usize| -> usize {
        let dt = k - 1 - ds;
        let slot = (da.min(k) - ds) as usize;
        offset[k as usize][slot] + s * count(b, dt) + t
    };

    let mut faces: Vec<Vec<Face>> = counts.iter().map(|&c| Vec::with_capacity(c)).collect();
    for k in 0..=dim as isize {
        for ds in (-1..=da.min(k)).rev() {
            let dt = k - 1 - ds;
            if dt < -1 || dt > db {
                continue;
            }
            for s in 0..count(a, ds) {
                for t in 0..count(b, dt) {
                    let sv: &[usize] = if ds < 0 { &[] } else { &a.face(ds as usize, s).vertices };
                    let tv: &[usize] = if dt < 0 { &[] } else { &b.face(dt as usize, t).vertices };
                    let vertices: Vec<usize> =
                        sv.iter().copied().chain(tv.iter().map(|v| v + na)).collect();
                    let mut boundary = Vec::with_capacity(vertices.len());
                    if k > 0 {
                        for i in 0..sv.len() {
                            let sub = if ds == 0 { 0 } else { a.face(ds as usize, s).boundary[i] };
                            boundary.push(index(k - 1, ds - 1, sub, t));
                        }
                        for i in 0..tv.len() {
                            let sub = if dt == 0 { 0 } else { b.face(dt as usize, t).boundary[i] };
                            boundary.push(index(k - 1, ds, s, sub));
                        }
                    }
                    debug_assert_eq!(faces[k as usize].len(), index(k, ds, s, t));
                    faces[k as usize].push(Face { boundary, vertices });
                }
            }
        }
    }
    Ok(FacePoset::from_faces(faces, None)?)
}

/// Standard crystallization of `L(p, q)`: the join of two `2p`-cycles
/// modulo the free `ℤ/p` action `a_i ↦ a_{i+2}`, `b_j ↦ b_{j+2q}`.
/// Four vertices, `f = (4, 4p + 4, 8p, 4p)`.
pub fn lens_standard(params: LensParams) -> Result<FacePoset, GeneratorError> {
    let p = params.p;
    let n = 2 * p;
    let circle = cycle(n)?;
    let joined = join(&circle, &circle)?;
    let shift_b = (2 * params.q).rem_euclid(n as i64) as u64;
    let g: Vec<usize> = (0..n)
        .map(|i| ((i + 2) % n) as usize)
        .chain((0..n).map(|j| (n + (j + shift_b) % n) as usize))
        .collect();
    Ok(quotient_by_group(&joined, &g, p as usize)?)
}

/// Gale's evenness condition for a sorted subset of `0..n`.
pub fn gale_even(subset: &[usize], n: usize) -> bool {
    let inside = |x: usize| subset.binary_search(&x).is_ok();
    for i in 0..n {
        for j in i + 1..n {
            if inside(i) || inside(j) {
                continue;
            }
            let between = subset.iter().filter(|&&x| i < x && x < j).count();
            if between % 2 == 1 {
                return false;
            }
        }
    }
    true
}

/// Boundary of the cyclic 4-polytope with `n` vertices: a two-neighborly
/// simplicial 3-sphere whose facets satisfy Gale's evenness condition.
pub fn cyclic_polytope_boundary(n: u64) -> Result<FacePoset, GeneratorError> {
    if n < 5 {
        return Err(GeneratorError::TooSmall { what: "vertex count", min: 5, got: n });
    }
    let n = n as usize;
    let mut facets = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let s = [a, b, c, d];
                    if gale_even(&s, n) {
                        facets.push(s.to_vec());
                    }
                }
            }
        }
    }
    Ok(FacePoset::from_facets(n, &facets)?)
}

/// Two tetrahedra glued along all four faces by the identity.
pub fn two_tetrahedron_sphere() -> Result<FacePoset, GeneratorError> {
    const ID: [u8; 4] = [0, 1, 2, 3];
    let glued = |facet| {
        let mut slots = [None; 4];
        for (i, s) in slots.iter_mut().enumerate() {
            *s = Some(FaceGluing { facet, face: i as u8, perm: ID });
        }
        slots
    };
    let spec = GluingSpec::new(vec![glued(1), glued(0)])?;
    Ok(build_complex(&spec)?)
}

/// A 3-sphere with the given number of tetrahedra: 2 (doubled tetrahedron),
/// 5 (boundary of the 4-simplex), or any even `2m ≥ 4` (join of an
/// `m`-cycle with a 2-cycle).
pub fn sphere(tets: u64) -> Result<FacePoset, GeneratorError> {
    match tets {
        2 => two_tetrahedron_sphere(),
        5 => cyclic_polytope_boundary(5),
        t if t >= 4 && t % 2 == 0 => join(&cycle(t / 2)?, &cycle(2)?),
        t => Err(GeneratorError::UnsupportedSphere(t)),
    }
}

/// Möbius' 7-vertex torus.
pub fn seven_vertex_torus() -> Result<FacePoset, GeneratorError> {
    let facets: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    Ok(FacePoset::from_facets(7, &facets)?)
}

/// Suspension of the 7-vertex torus: a closed 3-pseudomanifold whose two
/// apex links are tori, with χ = 2.
pub fn torus_suspension() -> Result<FacePoset, GeneratorError> {
    join(&seven_vertex_torus()?, &points(2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FVector;

    #[test]
    fn cycles() {
        assert_eq!(cycle(2).unwrap().f_vector(), FVector(vec![2, 2]));
        assert_eq!(cycle(4).unwrap().f_vector(), FVector(vec![4, 4]));
        let c3 = cycle(3).unwrap();
        assert!(validate(&c3).is_simplicial_poset);
        assert!(c3.is_closed());
        assert!(matches!(cycle(1), Err(GeneratorError::TooSmall { .. })));
    }

    #[test]
    fn joins() {
        let s3 = join(&cycle(2).unwrap(), &cycle(2).unwrap()).unwrap();
        assert_eq!(s3.f_vector(), FVector(vec![4, 8, 8, 4]));
        assert_eq!(s3.euler_char(), 0);
        assert!(validate(&s3).is_closed_3_manifold);
        let big = join(&cycle(4).unwrap(), &cycle(4).unwrap()).unwrap();
        assert_eq!(big.f_vector(), FVector(vec![8, 24, 32, 16]));
        let seg = join(&points(1).unwrap(), &points(1).unwrap()).unwrap();
        assert_eq!(seg.f_vector(), FVector(vec![2, 1]));
    }

    #[test]
    fn lens_f_vectors() {
        let l = |p, q| lens_standard(LensParams::new(p, q).unwrap()).unwrap().f_vector();
        assert_eq!(l(1, 1), FVector(vec![4, 8, 8, 4]));
        assert_eq!(l(2, 1), FVector(vec![4, 12, 16, 8]));
        assert_eq!(l(3, 1), FVector(vec![4, 16, 24, 12]));
        assert_eq!(l(5, 2), FVector(vec![4, 24, 40, 20]));
    }

    #[test]
    fn lens_params_validation() {
        assert!(matches!(LensParams::new(4, 2), Err(GeneratorError::NotCoprime { .. })));
        assert_eq!(solve_r(8, 3).unwrap(), 5);
        assert_eq!(solve_r(1, 1).unwrap(), 1);
        assert!(matches!(solve_r(8, 2), Err(GeneratorError::NoSuchR { .. })));
        assert!(matches!(solve_r(3, 3), Err(GeneratorError::NoSuchR { .. })));
        assert_eq!(LensParams::with_factorization(8, 3).unwrap().kr, Some((8, 5)));
    }

    #[test]
    fn cyclic_polytopes() {
        assert_eq!(cyclic_polytope_boundary(5).unwrap().f_vector(), FVector(vec![5, 10, 10, 5]));
        assert_eq!(cyclic_polytope_boundary(11).unwrap().f_vector(), FVector(vec![11, 55, 88, 44]));
        assert!(cyclic_polytope_boundary(4).is_err());
    }

    #[test]
    fn spheres() {
        assert_eq!(sphere(2).unwrap().f_vector(), FVector(vec![4, 6, 4, 2]));
        assert_eq!(sphere(5).unwrap().f_vector(), FVector(vec![5, 10, 10, 5]));
        assert_eq!(sphere(6).unwrap().f_vector(), FVector(vec![5, 11, 12, 6]));
        for t in [2, 4, 5, 6, 8, 10] {
            assert!(validate(&sphere(t).unwrap()).is_closed_3_manifold, "sphere({t})");
        }
        assert!(matches!(sphere(7), Err(GeneratorError::UnsupportedSphere(7))));
    }

    #[test]
    fn torus_suspension_is_a_closed_pseudomanifold() {
        let p = torus_suspension().unwrap();
        assert_eq!(p.f_vector(), FVector(vec![9, 35, 56, 28]));
        assert_eq!(p.euler_char(), 2);
        let r = validate(&p);
        assert!(r.is_simplicial_poset && r.is_closed);
        assert!(!r.is_closed_3_manifold);
    }
}
