mod common;

use normsurf::cohomology::{coboundary0, coboundary1, h1, is_cocycle, same_class, ClassEnumerator, Cochain};
use normsurf::format;
use normsurf::generators::{self, LensParams};
use normsurf::gf2::BitVec;
use normsurf::poset::{build_complex, validate, FaceGluing, GluingSpec};
use normsurf::surface::{classify_components, classify_components_in_order, extract_surface, slicing_subcomplex};
use normsurf::FacePoset;
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn lens(p: u64, q: i64) -> FacePoset {
    generators::lens_standard(LensParams::new(p, q).unwrap()).unwrap()
}

fn lens_params() -> impl Strategy<Value = (u64, i64)> {
    prop_oneof![Just((2, 1)), Just((3, 1)), Just((4, 1)), Just((5, 2)), Just((6, 1)), Just((8, 3))]
}

/// Renumbers tetrahedra by `order` and the local vertices of tetrahedron
/// `t` by `local[t]`.
fn relabel(spec: &GluingSpec, order: &[usize], local: &[[u8; 4]]) -> GluingSpec {
    let mut out = vec![[None; 4]; spec.n_facets()];
    for t in 0..spec.n_facets() {
        for i in 0..4 {
            let Some(g) = spec.slot(t, i) else { continue };
            let (pt, pu) = (local[t], local[g.facet]);
            let mut perm = [0u8; 4];
            for a in 0..4 {
                perm[pt[a] as usize] = pu[g.perm[a] as usize];
            }
            out[order[t]][pt[i] as usize] = Some(FaceGluing {
                facet: order[g.facet],
                face: pu[g.face as usize],
                perm,
            });
        }
    }
    GluingSpec::new(out).unwrap()
}

fn relabeling(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<[u8; 4]>)> {
    let perm4 = Just(vec![0u8, 1, 2, 3]).prop_shuffle().prop_map(|v| [v[0], v[1], v[2], v[3]]);
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(perm4, n))
}

fn relabeled_lens() -> impl Strategy<Value = (FacePoset, FacePoset)> {
    lens_params().prop_flat_map(|(p, q)| {
        let l = lens(p, q);
        let n = l.count(3);
        (Just(l), relabeling(n)).prop_map(|(l, (order, local))| {
            let spec = relabel(&l.to_gluing_spec().unwrap(), &order, &local);
            let r = build_complex(&spec).unwrap();
            (l, r)
        })
    })
}

/// A complex together with a vertex subset and a class member index.
fn cocycle_case() -> impl Strategy<Value = (FacePoset, Vec<usize>, bool)> {
    prop_oneof![
        lens_params().prop_map(|(p, q)| lens(p, q)),
        (5u64..=9).prop_map(|n| generators::cyclic_polytope_boundary(n).unwrap()),
        Just(generators::torus_suspension().unwrap()),
    ]
    .prop_flat_map(|p| {
        let n = p.n_vertices();
        (Just(p), subsequence((0..n).collect::<Vec<_>>(), 0..=n), any::<bool>())
    })
}

fn class_member(p: &FacePoset, vertices: &[usize], twist: bool) -> Cochain {
    let u = Cochain::indicator(p, 0, vertices.iter().copied());
    let mut psi = coboundary0(p, &u).unwrap();
    let basis = h1(p);
    if twist {
        if let Some(rep) = basis.representatives.first() {
            psi = psi.add(rep).unwrap();
        }
    }
    psi
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coboundary_squares_to_zero(seed in any::<u64>(), n in 1usize..8, boundary in 0usize..4) {
        let p = common::random_complex(&mut StdRng::seed_from_u64(seed), n, boundary);
        for v in 0..p.n_vertices() {
            let d = coboundary1(&p, &coboundary0(&p, &Cochain::indicator(&p, 0, [v])).unwrap()).unwrap();
            prop_assert!(d.is_zero());
        }
    }

    #[test]
    fn h1_survives_relabeling((l, r) in relabeled_lens()) {
        prop_assert_eq!(l.f_vector(), r.f_vector());
        prop_assert_eq!(h1(&l).dim, h1(&r).dim);
        prop_assert!(validate(&r).is_closed_3_manifold);
    }

    #[test]
    fn interchange_round_trip((_, r) in relabeled_lens()) {
        let text = format::write(&r);
        let back = format::read(&text).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(format::write(&back), text);
        let gluing_only = format::write_gluing_only(r.gluing_spec().unwrap());
        prop_assert_eq!(format::read(&gluing_only).unwrap(), r);
    }

    #[test]
    fn surface_is_dual_to_its_cocycle((p, vs, twist) in cocycle_case()) {
        let psi = class_member(&p, &vs, twist);
        prop_assert!(is_cocycle(&p, &psi).unwrap());
        let s = extract_surface(&p, &psi).unwrap();
        prop_assert_eq!(s.dual_cochain(&p), psi.clone());
        let slicing = slicing_subcomplex(&p, &psi).unwrap();
        prop_assert_eq!(s.euler_char(), slicing.euler_char - p.euler_char());
    }

    #[test]
    fn complementary_vertex_sets_give_the_same_cocycle((p, vs, twist) in cocycle_case()) {
        let complement: Vec<usize> = (0..p.n_vertices()).filter(|v| !vs.contains(v)).collect();
        prop_assert_eq!(class_member(&p, &vs, twist), class_member(&p, &complement, twist));
    }

    #[test]
    fn shifting_by_a_coboundary_stays_in_class((p, vs, twist) in cocycle_case()) {
        let psi = class_member(&p, &[], twist);
        let shifted = class_member(&p, &vs, twist);
        prop_assert!(same_class(&p, &psi, &shifted).unwrap());
        if let Some(rep) = h1(&p).representatives.first() {
            prop_assert!(!same_class(&p, &shifted.add(rep).unwrap(), &psi).unwrap());
        }
    }

    #[test]
    fn enumerated_members_are_cocycles_in_class((p, _, twist) in cocycle_case(), index in any::<u64>()) {
        let sigma = class_member(&p, &[], twist);
        let e = ClassEnumerator::new(&p, &sigma).unwrap();
        let size = e.size().unwrap();
        prop_assert_eq!(size, 1u64 << (p.n_vertices() - p.components()));
        let member = e.member(index % size);
        prop_assert!(same_class(&p, &member, &sigma).unwrap());
    }

    #[test]
    fn orientability_ignores_traversal_order(
        (p, vs, twist) in cocycle_case(),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let s = extract_surface(&p, &class_member(&p, &vs, twist)).unwrap();
        let base = classify_components(&s);
        let mut rng = StdRng::seed_from_u64(seed);
        let mut ranks: Vec<usize> = (0..s.pieces.len()).collect();
        for _ in 0..20 {
            ranks.shuffle(&mut rng);
            prop_assert_eq!(&classify_components_in_order(&s, &ranks), &base);
        }
    }

    #[test]
    fn cochain_record_round_trip((p, vs, twist) in cocycle_case(), noise in prop::collection::vec(any::<bool>(), 0..200)) {
        let psi = class_member(&p, &vs, twist);
        prop_assert_eq!(Cochain::parse(&p, 1, &psi.to_record()).unwrap(), psi.clone());
        prop_assert_eq!(Cochain::parse(&p, 1, &psi.bits().to_hex()).unwrap(), psi);
        let bits = BitVec::from_bools(&noise);
        prop_assert_eq!(BitVec::from_hex(&bits.to_hex(), noise.len()).unwrap(), bits);
    }
}
