#![allow(dead_code)]

use normsurf::poset::{build_complex, FaceGluing, FacePoset, GluingSpec};
use rand::seq::SliceRandom;
use rand::Rng;

/// Pairs up the face slots of `n` tetrahedra at random, leaving
/// `boundary` slots unglued. The result need not be a simplicial poset.
pub fn random_gluing(rng: &mut impl Rng, n: usize, boundary: usize) -> GluingSpec {
    let mut slots: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..4).map(move |i| (t, i))).collect();
    slots.shuffle(rng);
    let mut gluings = vec![[None; 4]; n];
    let glued = (4 * n - boundary.min(4 * n)) & !1;
    for pair in slots[..glued].chunks(2) {
        let ((t, i), (u, j)) = (pair[0], pair[1]);
        // random bijection of the remaining vertices, with i -> j
        let mut rest_src: Vec<u8> = (0..4).filter(|&x| x != i as u8).collect();
        let mut rest_dst: Vec<u8> = (0..4).filter(|&x| x != j as u8).collect();
        rest_src.shuffle(rng);
        rest_dst.shuffle(rng);
        let mut perm = [0u8; 4];
        perm[i] = j as u8;
        for (s, d) in rest_src.iter().zip(&rest_dst) {
            perm[*s as usize] = *d;
        }
        let mut inv = [0u8; 4];
        for (s, &d) in perm.iter().enumerate() {
            inv[d as usize] = s as u8;
        }
        gluings[t][i] = Some(FaceGluing { facet: u, face: j as u8, perm });
        gluings[u][j] = Some(FaceGluing { facet: t, face: i as u8, perm: inv });
    }
    GluingSpec::new(gluings).expect("random gluing is well formed")
}

pub fn random_complex(rng: &mut impl Rng, n: usize, boundary: usize) -> FacePoset {
    build_complex(&random_gluing(rng, n, boundary)).expect("gluing realizes")
}
