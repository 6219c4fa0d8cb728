use std::collections::BTreeSet;

use serde::Serialize;

use super::{bredon_wood_chis, class_spectrum, AnalysisError, EnumerationOptions, Rational};
use crate::cohomology::{h1, Cochain};
use crate::generators::solve_r;
use crate::poset::{validate, ComplexId, FacePoset};
use crate::surface::ComponentClass;

pub const HYPOTHESES: [&str; 2] = [
    "input complex is homeomorphic to L(2k,q) (asserted by caller, not verified)",
    "Bredon-Wood classification of nonorientable surfaces embedded in L(2k,q)",
];

/// Checkable facts behind the lower bound `f_3 ≥ 4(q + r)` for a
/// crystallization of `L(2k, q)` with `2k = qr + 1`. The certificate is
/// conditional on the [`HYPOTHESES`].
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub complex: ComplexId,
    pub tool_version: &'static str,
    pub hypotheses: Vec<&'static str>,
    pub k: u64,
    pub q: i64,
    pub r: u64,
    pub bound: u64,
    pub f0: u64,
    pub f3: u64,
    pub is_crystallization: bool,
    pub bound_met: bool,
    pub bound_respected: bool,
    /// Exact mean surface χ over the nontrivial class, `(4 f_0 - f_3)/8`.
    pub class_mean: Rational,
    pub class_size: u64,
    pub witness: Cochain,
    pub witness_chi: i64,
    pub witness_components: Vec<ComponentClass>,
    /// `8 χ(witness) ≥ 4 f_0 - f_3`.
    pub witness_meets_mean: bool,
    pub nonorientable_component_present: bool,
    pub sphere_component_present: bool,
    pub every_surface_nonorientable: bool,
    /// Sphere components seen anywhere in the class.
    pub sphere_components_in_class: u64,
    pub nonorientable_chis: BTreeSet<i64>,
    pub bredon_wood_allowed: BTreeSet<i64>,
    pub bredon_wood_ok: bool,
    /// `4 f_0 - 4(4 - q - r)`: the f_3 lower bound implied by the mean and
    /// the largest embeddable nonorientable χ.
    pub implied_f3_lower_bound: i64,
    pub checks_pass: bool,
}

pub fn certify_lens(
    p: &FacePoset,
    k: u64,
    q: i64,
    opts: &EnumerationOptions,
) -> Result<Certificate, AnalysisError> {
    let r = solve_r(k, q)?;
    if !validate(p).is_closed_3_manifold {
        return Err(AnalysisError::NotClosed3Manifold);
    }
    let basis = h1(p);
    if basis.dim != 1 {
        return Err(AnalysisError::WrongH1Dimension(basis.dim));
    }
    let spectrum = class_spectrum(p, &basis.representatives[0], opts)?;

    let max_chi = spectrum.max_chi;
    let witness = spectrum
        .entries
        .iter()
        .filter(|e| e.chi == max_chi)
        .map(|e| spectrum.cocycle(p, e.index).map(|c| (c, e)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .min_by(|(a, _), (b, _)| a.bits().lex_cmp(b.bits()))
        .expect("class is nonempty");
    let (witness, entry) = witness;

    let nonorientable_chis: BTreeSet<i64> = spectrum
        .entries
        .iter()
        .flat_map(|e| e.components.iter().filter(|c| !c.orientable).map(|c| c.chi))
        .collect();
    let floor = nonorientable_chis.first().copied().unwrap_or(0).min(spectrum.min_chi);
    let allowed = bredon_wood_chis(q, r as i64, floor)?;
    let bredon_wood_ok = nonorientable_chis.is_subset(&allowed);

    let fv = p.f_vector();
    let (f0, f3) = (fv.get(0), fv.get(3));
    let bound = 4 * (q as u64 + r);
    let witness_meets_mean = 8 * entry.chi >= 4 * f0 as i64 - f3 as i64;
    let every_surface_nonorientable = spectrum
        .entries
        .iter()
        .all(|e| e.components.iter().any(|c| !c.orientable));
    let bound_respected = f3 >= bound;

    Ok(Certificate {
        complex: p.id(),
        tool_version: env!("CARGO_PKG_VERSION"),
        hypotheses: HYPOTHESES.to_vec(),
        k,
        q,
        r,
        bound,
        f0,
        f3,
        is_crystallization: f0 == 4,
        bound_met: f3 == bound,
        bound_respected,
        class_mean: spectrum.mean.clone(),
        class_size: spectrum.count,
        witness_chi: entry.chi,
        witness_components: entry.components.clone(),
        witness_meets_mean,
        nonorientable_component_present: entry.components.iter().any(|c| !c.orientable),
        sphere_component_present: entry.components.iter().any(ComponentClass::is_sphere),
        every_surface_nonorientable,
        sphere_components_in_class: spectrum
            .entries
            .iter()
            .map(|e| e.components.iter().filter(|c| c.is_sphere()).count() as u64)
            .sum(),
        nonorientable_chis,
        bredon_wood_allowed: allowed,
        bredon_wood_ok,
        implied_f3_lower_bound: 4 * f0 as i64 - 4 * (4 - q - r as i64),
        checks_pass: bound_respected
            && witness_meets_mean
            && every_surface_nonorientable
            && bredon_wood_ok,
        witness,
    })
}
