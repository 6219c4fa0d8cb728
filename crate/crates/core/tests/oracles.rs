//! Independent recomputations of values the library derives.

mod common;

use std::collections::BTreeSet;

use normsurf::analysis::{class_spectrum, EnumerationOptions};
use normsurf::cohomology::{h1, Cochain};
use normsurf::generators::{self, LensParams};
use normsurf::poset::{quotient_by_group, vertex_link, PosetError};
use normsurf::FacePoset;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn lens(p: u64, q: i64) -> FacePoset {
    generators::lens_standard(LensParams::new(p, q).unwrap()).unwrap()
}

/// Dense incidence matrix of the coboundary from `k`-cochains to
/// `(k+1)`-cochains; repeated boundary entries cancel.
fn dense_coboundary(p: &FacePoset, k: usize) -> Vec<Vec<bool>> {
    p.faces(k + 1)
        .iter()
        .map(|f| {
            let mut row = vec![false; p.count(k)];
            for &b in &f.boundary {
                row[b] = !row[b];
            }
            row
        })
        .collect()
}

fn dense_rank(mut m: Vec<Vec<bool>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c]) else { continue };
        m.swap(rank, pivot);
        let top = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&top) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn dense_h1_dim(p: &FacePoset) -> usize {
    let r0 = dense_rank(dense_coboundary(p, 0));
    let r1 = if p.dim() >= 2 { dense_rank(dense_coboundary(p, 1)) } else { 0 };
    p.count(1) - r1 - r0
}

#[test]
fn h1_matches_dense_elimination() {
    let mut complexes = vec![
        generators::seven_vertex_torus().unwrap(),
        generators::torus_suspension().unwrap(),
        generators::cyclic_polytope_boundary(8).unwrap(),
        generators::sphere(6).unwrap(),
    ];
    for p in 1..=8 {
        complexes.push(lens(p, 1));
    }
    complexes.push(lens(5, 2));
    complexes.push(lens(8, 3));
    let mut rng = StdRng::seed_from_u64(7);
    for n in 1..=8 {
        complexes.push(common::random_complex(&mut rng, n, 0));
        complexes.push(common::random_complex(&mut rng, n, 2));
    }
    for p in &complexes {
        assert_eq!(h1(p).dim, dense_h1_dim(p), "f = {}", p.f_vector());
    }
    assert_eq!(h1(&generators::seven_vertex_torus().unwrap()).dim, 2);
}

fn det(mut m: [[i128; 5]; 5]) -> i128 {
    // fraction-free Bareiss elimination
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..4 {
        if m[k][k] == 0 {
            let Some(r) = (k + 1..5).find(|&r| m[r][k] != 0) else { return 0 };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..5 {
            for j in k + 1..5 {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[4][4]
}

/// Facets of the cyclic polytope from the moment curve: a 4-subset is a
/// facet when every other point lies strictly on one side of its span.
fn moment_curve_facets(n: usize) -> BTreeSet<Vec<usize>> {
    let point = |i: usize| {
        let t = i as i128 + 1;
        [1, t, t * t, t * t * t, t * t * t * t]
    };
    let mut facets = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let signs: BTreeSet<i128> = (0..n)
                        .filter(|x| ![a, b, c, d].contains(x))
                        .map(|x| det([point(a), point(b), point(c), point(d), point(x)]).signum())
                        .collect();
                    if signs.len() == 1 {
                        facets.insert(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    facets
}

#[test]
fn cyclic_facets_match_moment_curve() {
    for n in 5..=11 {
        let p = generators::cyclic_polytope_boundary(n as u64).unwrap();
        let facets: BTreeSet<Vec<usize>> = p.faces(3).iter().map(|f| f.vertices.clone()).collect();
        assert_eq!(facets, moment_curve_facets(n), "n = {n}");
        assert_eq!(facets.len(), n * (n - 3) / 2);
    }
    assert_eq!(generators::cyclic_polytope_boundary(6).unwrap().count(3), 9);
}

/// f-vector of the join of an m-cycle and an l-cycle, with empty faces.
fn cycle_join_f(m: u64, l: u64) -> Vec<u64> {
    let a = [1, m, m];
    let b = [1, l, l];
    let mut f = vec![0; 4];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j >= 1 {
                f[i + j - 1] += x * y;
            }
        }
    }
    f
}

#[test]
fn join_and_quotient_f_vectors_match_orbit_counts() {
    for (m, l) in [(2, 2), (3, 4), (5, 3)] {
        let j = generators::join(&generators::cycle(m).unwrap(), &generators::cycle(l).unwrap()).unwrap();
        assert_eq!(j.f_vector().0, cycle_join_f(m, l));
    }
    // free action of order p: every orbit has p faces
    for p in 1..=8u64 {
        let expected: Vec<u64> = cycle_join_f(2 * p, 2 * p).iter().map(|x| x / p).collect();
        for q in (1..p.max(2) as i64).filter(|&q| num_gcd(q as u64, p) == 1) {
            assert_eq!(lens(p, q).f_vector().0, expected, "lens({p},{q})");
        }
    }
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn quotient_of_cycle_by_rotation_and_reflection() {
    let c = generators::cycle(4).unwrap();
    let halved = quotient_by_group(&c, &[2, 3, 0, 1], 2).unwrap();
    assert_eq!(halved.f_vector().0, vec![2, 2]);
    assert!(matches!(quotient_by_group(&c, &[0, 3, 2, 1], 2), Err(PosetError::FixedFace { .. })));
}

/// Counts cocycles by scanning every 1-cochain with triangle parity masks.
fn scan_cocycles(p: &FacePoset) -> u64 {
    let f1 = p.count(1);
    assert!(f1 <= 20);
    let masks: Vec<u32> = p
        .faces(2)
        .iter()
        .map(|t| t.boundary.iter().fold(0u32, |m, &e| m ^ (1 << e)))
        .collect();
    (0u32..1 << f1)
        .filter(|x| masks.iter().all(|m| (x & m).count_ones() % 2 == 0))
        .count() as u64
}

#[test]
fn cocycle_count_is_classes_times_class_size() {
    let single = generators::sphere(2).unwrap();
    let cases = vec![
        single.clone(),
        generators::cyclic_polytope_boundary(5).unwrap(),
        lens(2, 1),
        lens(3, 1),
        lens(4, 1),
    ];
    for p in &cases {
        let classes = 1u64 << h1(p).dim;
        let class_size = 1u64 << (p.n_vertices() - p.components());
        assert_eq!(scan_cocycles(p), classes * class_size, "f = {}", p.f_vector());
    }
}

#[test]
fn two_disjoint_tetrahedra_have_64_cocycles() {
    let facet = FacePoset::from_facets(4, &[vec![0, 1, 2, 3]]).unwrap();
    let pair = facet.disjoint_union(&facet).unwrap();
    assert_eq!(pair.components(), 2);
    assert_eq!(scan_cocycles(&pair), 64);
    assert_eq!(h1(&pair).dim, 0);
}

#[test]
fn vertex_link_of_smallest_lens_space() {
    let p = lens(2, 1);
    for v in 0..4 {
        let link = vertex_link(&p, v).unwrap();
        assert_eq!(link.f_vector().0, vec![6, 12, 8]);
        assert_eq!(link.euler_char(), 2);
    }
}

#[test]
fn smallest_lens_space_spectra() {
    let p = lens(2, 1);
    let opts = EnumerationOptions::default();
    let trivial = class_spectrum(&p, &Cochain::zero(&p, 1), &opts).unwrap();
    assert_eq!(trivial.count, 8);
    assert_eq!(trivial.mean.to_string(), "1");
    assert_eq!(trivial.entries.iter().filter(|e| e.components.is_empty()).count(), 1);
    let spheres: Vec<_> = trivial.entries.iter().filter(|e| e.chi == 2).collect();
    assert_eq!(spheres.len(), 4);
    assert!(spheres.iter().all(|e| e.components.len() == 1 && e.components[0].is_sphere()));
    // the three 2+2 vertex splits
    let splits: Vec<_> = trivial
        .entries
        .iter()
        .filter(|e| !e.components.is_empty() && e.chi != 2)
        .collect();
    assert_eq!(splits.len(), 3);
    assert!(splits.iter().all(|e| e.chi == 0 && e.components.iter().all(|c| c.orientable)));

    let rep = h1(&p).representatives[0].clone();
    let odd = class_spectrum(&p, &rep, &opts).unwrap();
    assert_eq!(odd.count, 8);
    for e in &odd.entries {
        assert_eq!(e.chi, 1);
        assert_eq!(e.components.len(), 1);
        assert!(!e.components[0].orientable);
    }
}
