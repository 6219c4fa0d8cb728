//! ℤ/2 cochains on a face poset, the coboundary maps in degrees 0 and 1,
//! first cohomology, and enumeration of a cohomology class.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::gf2::{BitVec, HexError, RowBasis};
use crate::poset::{ComplexId, FacePoset, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("cochain belongs to complex {found}, expected {expected}")]
    ComplexMismatch { expected: ComplexId, found: ComplexId },
    #[error("expected a {expected}-cochain, found a {found}-cochain")]
    WrongDegree { expected: usize, found: usize },
    #[error("cochain has length {found}, complex has {expected} faces")]
    WrongLength { expected: usize, found: usize },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("malformed cochain record: {0}")]
    Parse(String),
    #[error("bad cochain bits: {0}")]
    Hex(#[from] HexError),
}

/// A ℤ/2 value on every `dim`-face of one complex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    complex: ComplexId,
    dim: usize,
    bits: BitVec,
}

impl Cochain {
    pub fn zero(p: &FacePoset, dim: usize) -> Cochain {
        Cochain {
            complex: p.id(),
            dim,
            bits: BitVec::zeros(p.count(dim)),
        }
    }

    pub fn from_bits(p: &FacePoset, dim: usize, bits: BitVec) -> Result<Cochain, CohomologyError> {
        if bits.len() != p.count(dim) {
            return Err(CohomologyError::WrongLength {
                expected: p.count(dim),
                found: bits.len(),
            });
        }
        Ok(Cochain { complex: p.id(), dim, bits })
    }

    /// Indicator cochain of the given faces.
    pub fn indicator(p: &FacePoset, dim: usize, faces: impl IntoIterator<Item = usize>) -> Cochain {
        Cochain {
            complex: p.id(),
            dim,
            bits: BitVec::from_indices(p.count(dim), faces),
        }
    }

    pub fn complex(&self) -> ComplexId {
        self.complex
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, face: usize) -> bool {
        self.bits.get(face)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    /// Checks that this cochain lives on `p` in degree `dim`.
    pub fn check_on(&self, p: &FacePoset, dim: usize) -> Result<(), CohomologyError> {
        if self.complex != p.id() {
            return Err(CohomologyError::ComplexMismatch {
                expected: p.id(),
                found: self.complex,
            });
        }
        if self.dim != dim {
            return Err(CohomologyError::WrongDegree { expected: dim, found: self.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CohomologyError> {
        if self.complex != other.complex {
            return Err(CohomologyError::ComplexMismatch {
                expected: self.complex,
                found: other.complex,
            });
        }
        if self.dim != other.dim {
            return Err(CohomologyError::WrongDegree { expected: self.dim, found: other.dim });
        }
        let mut bits = self.bits.clone();
        bits.xor_assign(&other.bits);
        Ok(Cochain { complex: self.complex, dim: self.dim, bits })
    }

    /// One-line record: `cochain v1 dim K len N complex HASH bits HEX`.
    pub fn to_record(&self) -> String {
        format!(
            "cochain v1 dim {} len {} complex {} bits {}",
            self.dim,
            self.bits.len(),
            self.complex,
            self.bits.to_hex()
        )
    }

    /// Parses either a full record or bare hex digits. Bare hex is taken to
    /// be a `default_dim`-cochain on `p`.
    pub fn parse(p: &FacePoset, default_dim: usize, text: &str) -> Result<Cochain, CohomologyError> {
        let text = text.trim();
        if !text.starts_with("cochain") {
            let bits = BitVec::from_hex(text, p.count(default_dim))?;
            return Cochain::from_bits(p, default_dim, bits);
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let bad = || CohomologyError::Parse(text.to_string());
        if tokens.len() != 10
            || tokens[1] != "v1"
            || tokens[2] != "dim"
            || tokens[4] != "len"
            || tokens[6] != "complex"
            || tokens[8] != "bits"
        {
            return Err(bad());
        }
        let dim: usize = tokens[3].parse().map_err(|_| bad())?;
        let len: usize = tokens[5].parse().map_err(|_| bad())?;
        let complex = u64::from_str_radix(tokens[7], 16).map_err(|_| bad())?;
        if ComplexId(complex) != p.id() {
            return Err(CohomologyError::ComplexMismatch {
                expected: p.id(),
                found: ComplexId(complex),
            });
        }
        if dim > p.dim() || len != p.count(dim) {
            return Err(CohomologyError::WrongLength {
                expected: if dim > p.dim() { 0 } else { p.count(dim) },
                found: len,
            });
        }
        let bits = BitVec::from_hex(tokens[9], len)?;
        Cochain::from_bits(p, dim, bits)
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(dim {}, {:?})", self.dim, self.bits)
    }
}

impl Serialize for Cochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_record())
    }
}

/// `δ⁰`: value on an edge is the sum of `u` over its two endpoints.
pub fn coboundary0(p: &FacePoset, u: &Cochain) -> Result<Cochain, CohomologyError> {
    u.check_on(p, 0)?;
    Ok(Cochain {
        complex: p.id(),
        dim: 1,
        bits: BitVec::from_bools(
            &p.faces(1)
                .iter()
                .map(|e| u.get(e.vertices[0]) ^ u.get(e.vertices[1]))
                .collect::<Vec<_>>(),
        ),
    })
}

/// `δ¹`: value on a triangle is the sum of `psi` over its three edges.
pub fn coboundary1(p: &FacePoset, psi: &Cochain) -> Result<Cochain, CohomologyError> {
    psi.check_on(p, 1)?;
    Ok(Cochain {
        complex: p.id(),
        dim: 2,
        bits: BitVec::from_bools(
            &p.faces(2)
                .iter()
                .map(|t| t.boundary.iter().fold(false, |acc, &e| acc ^ psi.get(e)))
                .collect::<Vec<_>>(),
        ),
    })
}

pub fn is_cocycle(p: &FacePoset, psi: &Cochain) -> Result<bool, CohomologyError> {
    psi.check_on(p, 1)?;
    Ok(p
        .faces(2)
        .iter()
        .all(|t| !t.boundary.iter().fold(false, |acc, &e| acc ^ psi.get(e))))
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyBasis {
    pub dim: usize,
    pub representatives: Vec<Cochain>,
    /// Dimension of `ker δ⁰`, the number of connected components.
    pub kernel_dim_delta0: usize,
}

/// First cohomology by elimination over GF(2).
///
/// Representatives are the reduced echelon basis of `ker δ¹` modulo
/// `im δ⁰`, ordered by pivot edge.
pub fn h1(p: &FacePoset) -> CohomologyBasis {
    let f1 = p.count(1);
    let mut delta1 = RowBasis::new(f1);
    for t in p.faces(2) {
        delta1.insert(BitVec::from_indices(f1, t.boundary.iter().copied()));
    }
    let cocycles = delta1.kernel();

    let mut coboundaries = RowBasis::new(f1);
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); p.n_vertices()];
    for (id, e) in p.faces(1).iter().enumerate() {
        incident[e.vertices[0]].push(id);
        incident[e.vertices[1]].push(id);
    }
    for edges in incident {
        coboundaries.insert(BitVec::from_indices(f1, edges));
    }

    let mut classes = RowBasis::new(f1);
    for mut z in cocycles {
        coboundaries.reduce(&mut z);
        classes.insert(z);
    }
    debug_assert_eq!(
        classes.rank() + coboundaries.rank(),
        f1 - delta1.rank(),
        "rank-nullity over GF(2)"
    );
    CohomologyBasis {
        dim: classes.rank(),
        representatives: classes
            .rows()
            .iter()
            .map(|bits| Cochain { complex: p.id(), dim: 1, bits: bits.clone() })
            .collect(),
        kernel_dim_delta0: p.n_vertices() - coboundaries.rank(),
    }
}

/// Solves `δ⁰ u = psi` by propagation from the root of each component.
/// Returns `None` when no solution exists.
pub fn solve_coboundary(p: &FacePoset, psi: &Cochain) -> Result<Option<Cochain>, CohomologyError> {
    psi.check_on(p, 1)?;
    let n = p.n_vertices();
    let mut adj: Vec<Vec<(VertexId, bool)>> = vec![Vec::new(); n];
    for (id, e) in p.faces(1).iter().enumerate() {
        let (a, b) = (e.vertices[0], e.vertices[1]);
        if a == b {
            if psi.get(id) {
                return Ok(None);
            }
            continue;
        }
        adj[a].push((b, psi.get(id)));
        adj[b].push((a, psi.get(id)));
    }
    let mut value: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if value[root].is_some() {
            continue;
        }
        value[root] = Some(false);
        queue.push_back(root);
        while let Some(a) = queue.pop_front() {
            let va = value[a].expect("visited");
            for &(b, odd) in &adj[a] {
                match value[b] {
                    None => {
                        value[b] = Some(va ^ odd);
                        queue.push_back(b);
                    }
                    Some(vb) if vb != va ^ odd => return Ok(None),
                    Some(_) => {}
                }
            }
        }
    }
    let ones = value
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == Some(true))
        .map(|(i, _)| i);
    Ok(Some(Cochain::indicator(p, 0, ones)))
}

/// Whether two cocycles differ by a coboundary.
pub fn same_class(p: &FacePoset, a: &Cochain, b: &Cochain) -> Result<bool, CohomologyError> {
    if !is_cocycle(p, a)? || !is_cocycle(p, b)? {
        return Err(CohomologyError::NotACocycle);
    }
    Ok(solve_coboundary(p, &a.add(b)?)?.is_some())
}

/// The distinct cocycles `σ + δ⁰(u)` of one cohomology class.
///
/// `u` ranges over assignments that vanish on the lowest-id vertex of every
/// component; member `i` sets `u` on the `j`-th free vertex to bit `j` of
/// `i`. This realizes each class member exactly once.
#[derive(Debug, Clone)]
pub struct ClassEnumerator<'a> {
    poset: &'a FacePoset,
    base: Cochain,
    free: Vec<VertexId>,
    /// position of each vertex among the free vertices
    slot: Vec<Option<usize>>,
}

impl<'a> ClassEnumerator<'a> {
    pub fn new(p: &'a FacePoset, sigma: &Cochain) -> Result<ClassEnumerator<'a>, CohomologyError> {
        if !is_cocycle(p, sigma)? {
            return Err(CohomologyError::NotACocycle);
        }
        let labels = p.vertex_components();
        let mut seen = vec![false; p.components()];
        let mut free = Vec::new();
        let mut slot = vec![None; p.n_vertices()];
        for (v, &c) in labels.iter().enumerate() {
            if std::mem::replace(&mut seen[c], true) {
                slot[v] = Some(free.len());
                free.push(v);
            }
        }
        Ok(ClassEnumerator { poset: p, base: sigma.clone(), free, slot })
    }

    /// Number of free vertices, `n - c`.
    pub fn free_vertices(&self) -> usize {
        self.free.len()
    }

    /// Class size `2^(n - c)`, or `None` if it does not fit in a `u64`.
    pub fn size(&self) -> Option<u64> {
        1u64.checked_shl(self.free.len() as u32)
    }

    /// The vertex assignment `u` of member `index`.
    pub fn vertex_cochain(&self, index: u64) -> Cochain {
        let ones = self
            .free
            .iter()
            .enumerate()
            .filter(|(j, _)| index >> j & 1 == 1)
            .map(|(_, &v)| v);
        Cochain::indicator(self.poset, 0, ones)
    }

    pub fn member(&self, index: u64) -> Cochain {
        let u = |v: VertexId| self.slot[v].is_some_and(|j| index >> j & 1 == 1);
        let mut bits = self.base.bits.clone();
        for (id, e) in self.poset.faces(1).iter().enumerate() {
            if u(e.vertices[0]) ^ u(e.vertices[1]) {
                bits.flip(id);
            }
        }
        Cochain { complex: self.poset.id(), dim: 1, bits }
    }

    pub fn iter(&self) -> impl Iterator<Item = Cochain> + '_ {
        let size = self.size().expect("class too large to iterate");
        (0..size).map(move |i| self.member(i))
    }
}

/// Streams the cocycles of the class of `sigma`; see [`ClassEnumerator`].
pub fn enumerate_class<'a>(
    p: &'a FacePoset,
    sigma: &Cochain,
) -> Result<ClassEnumerator<'a>, CohomologyError> {
    ClassEnumerator::new(p, sigma)
}
