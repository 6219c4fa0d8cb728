use std::collections::BTreeMap;

use serde::Serialize;

use super::{AnalysisError, EnumerationOptions, Rational};
use crate::cohomology::{ClassEnumerator, Cochain};
use crate::parallel::try_map_range;
use crate::poset::FacePoset;
use crate::surface::{
    classify_components, extract_surface, slicing_subcomplex, ComponentClass, SurfaceError,
};

/// One cocycle of a class: `index` selects it through [`ClassEnumerator`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub index: u64,
    /// Cell-count Euler characteristic of the dual surface.
    pub chi: i64,
    pub slicing_chi: i64,
    pub components: Vec<ComponentClass>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassSpectrum {
    pub representative: Cochain,
    pub complex_euler_char: i64,
    /// `2^(n - c)` distinct cocycles.
    pub count: u64,
    /// Sum of surface χ over the distinct cocycles.
    pub enumerated_sum: i64,
    pub mean: Rational,
    pub min_chi: i64,
    pub max_chi: i64,
    pub slicing_sum: i64,
    pub slicing_mean: Rational,
    /// Entries where `χ(S_ψ) != χ(Δ_ψ) - χ(Δ)`.
    pub cross_check_failures: u64,
    pub entries: Vec<SpectrumEntry>,
}

impl ClassSpectrum {
    pub fn cocycle(&self, p: &FacePoset, index: u64) -> Result<Cochain, AnalysisError> {
        Ok(ClassEnumerator::new(p, &self.representative)?.member(index))
    }

    /// How many cocycles give each surface χ.
    pub fn histogram(&self) -> BTreeMap<i64, u64> {
        let mut h = BTreeMap::new();
        for e in &self.entries {
            *h.entry(e.chi).or_insert(0) += 1;
        }
        h
    }
}

pub(crate) fn class_enumerator<'a>(
    p: &'a FacePoset,
    sigma: &Cochain,
    opts: &EnumerationOptions,
) -> Result<(ClassEnumerator<'a>, u64), AnalysisError> {
    let classes = ClassEnumerator::new(p, sigma)?;
    match classes.size() {
        Some(n) if n <= opts.budget => Ok((classes, n)),
        _ => Err(AnalysisError::BudgetExceeded {
            free_vertices: classes.free_vertices(),
            budget: opts.budget,
        }),
    }
}

/// Slicing χ of every member of the class, in enumeration order. Works in
/// any dimension.
pub(crate) fn slicing_chis(
    p: &FacePoset,
    sigma: &Cochain,
    opts: &EnumerationOptions,
) -> Result<Vec<i64>, AnalysisError> {
    let (classes, count) = class_enumerator(p, sigma, opts)?;
    let out = try_map_range(opts.parallelism, count, |i| {
        slicing_subcomplex(p, &classes.member(i)).map(|s| s.euler_char)
    })??;
    Ok(out)
}

/// Enumerates the class of `sigma` on a closed 3-dimensional complex and
/// records the dual surface of every member.
pub fn class_spectrum(
    p: &FacePoset,
    sigma: &Cochain,
    opts: &EnumerationOptions,
) -> Result<ClassSpectrum, AnalysisError> {
    let (classes, count) = class_enumerator(p, sigma, opts)?;
    let complex_chi = p.euler_char();
    let entries = try_map_range(opts.parallelism, count, |i| -> Result<SpectrumEntry, SurfaceError> {
        let psi = classes.member(i);
        let surface = extract_surface(p, &psi)?;
        let slicing = slicing_subcomplex(p, &psi)?;
        Ok(SpectrumEntry {
            index: i,
            chi: surface.euler_char(),
            slicing_chi: slicing.euler_char,
            components: classify_components(&surface),
        })
    })??;

    let enumerated_sum: i64 = entries.iter().map(|e| e.chi).sum();
    let slicing_sum: i64 = entries.iter().map(|e| e.slicing_chi).sum();
    let cross_check_failures = entries
        .iter()
        .filter(|e| e.chi != e.slicing_chi - complex_chi)
        .count() as u64;
    Ok(ClassSpectrum {
        representative: sigma.clone(),
        complex_euler_char: complex_chi,
        count,
        enumerated_sum,
        mean: Rational::new(enumerated_sum, count),
        min_chi: entries.iter().map(|e| e.chi).min().unwrap_or(0),
        max_chi: entries.iter().map(|e| e.chi).max().unwrap_or(0),
        slicing_sum,
        slicing_mean: Rational::new(slicing_sum, count),
        cross_check_failures,
        entries,
    })
}
