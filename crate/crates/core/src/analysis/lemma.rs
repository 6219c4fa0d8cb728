use serde::Serialize;

use super::spectrum::slicing_chis;
use super::{average_closed3, average_formula, class_spectrum, AnalysisError, EnumerationOptions, Rational};
use crate::cohomology::{h1, Cochain};
use crate::poset::{validate, FVector, FacePoset};
use crate::surface::SurfaceError;

/// Exact comparison of enumerated class means against the f-vector formulas
/// for one cohomology class.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub representative: Cochain,
    pub count: u64,
    /// `Σ (-1/2)^j f_j`.
    pub formula: Rational,
    pub slicing_mean: Rational,
    pub slicing_ok: bool,
    /// Present for closed 3-dimensional complexes.
    pub surface_mean: Option<Rational>,
    /// `(5 f_0 - f_1)/8` on closed 3-manifolds, `formula - χ(Δ)` otherwise.
    pub surface_expected: Option<Rational>,
    pub surface_ok: Option<bool>,
    pub cross_check_failures: u64,
    pub pass: bool,
}

/// Checks one class: the mean of `χ(Δ_ψ)` equals `Σ (-1/2)^j f_j`, and on
/// closed 3-dimensional complexes the mean surface χ equals the closed form.
pub fn verify_lemma(
    p: &FacePoset,
    sigma: &Cochain,
    opts: &EnumerationOptions,
) -> Result<LemmaReport, AnalysisError> {
    let fv = p.f_vector();
    let formula = average_formula(&fv);
    if p.dim() == 3 && p.is_closed() {
        let spectrum = class_spectrum(p, sigma, opts)?;
        let expected = if validate(p).is_closed_3_manifold {
            average_closed3(&fv)?
        } else {
            formula.clone() - Rational::integer(p.euler_char())
        };
        let slicing_ok = spectrum.slicing_mean == formula;
        let surface_ok = spectrum.mean == expected;
        Ok(LemmaReport {
            representative: sigma.clone(),
            count: spectrum.count,
            formula,
            slicing_mean: spectrum.slicing_mean,
            slicing_ok,
            surface_mean: Some(spectrum.mean),
            surface_expected: Some(expected),
            surface_ok: Some(surface_ok),
            cross_check_failures: spectrum.cross_check_failures,
            pass: slicing_ok && surface_ok && spectrum.cross_check_failures == 0,
        })
    } else {
        let chis = slicing_chis(p, sigma, opts)?;
        let count = chis.len() as u64;
        let slicing_mean = Rational::new(chis.iter().sum::<i64>(), count);
        let slicing_ok = slicing_mean == formula;
        Ok(LemmaReport {
            representative: sigma.clone(),
            count,
            formula,
            slicing_mean,
            slicing_ok,
            surface_mean: None,
            surface_expected: None,
            surface_ok: None,
            cross_check_failures: 0,
            pass: slicing_ok,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AverageReport {
    pub f_vector: FVector,
    pub formula: Rational,
    pub closed3_average: Option<Rational>,
    pub h1_dim: usize,
    /// One report per class, indexed by the bit mask over H¹ representatives.
    pub classes: Vec<LemmaReport>,
    pub class_independent: bool,
    pub pass: bool,
}

/// Runs [`verify_lemma`] on every class of `H¹` and checks that all class
/// means agree.
pub fn verify_average(p: &FacePoset, opts: &EnumerationOptions) -> Result<AverageReport, AnalysisError> {
    let basis = h1(p);
    let fv = p.f_vector();
    let mut classes = Vec::with_capacity(1 << basis.dim);
    for mask in 0u64..1 << basis.dim {
        let mut sigma = Cochain::zero(p, 1);
        for (i, rep) in basis.representatives.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sigma = sigma.add(rep)?;
            }
        }
        classes.push(verify_lemma(p, &sigma, opts)?);
    }
    let class_independent = classes.windows(2).all(|w| {
        w[0].slicing_mean == w[1].slicing_mean && w[0].surface_mean == w[1].surface_mean
    });
    let pass = class_independent && classes.iter().all(|c| c.pass);
    Ok(AverageReport {
        closed3_average: average_closed3(&fv).ok(),
        formula: average_formula(&fv),
        f_vector: fv,
        h1_dim: basis.dim,
        classes,
        class_independent,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PseudomanifoldReport {
    pub formula: Rational,
    pub complex_euler_char: i64,
    /// `formula - χ(Δ)`.
    pub expected: Rational,
    pub surface_mean: Rational,
    pub count: u64,
    pub cross_check_failures: u64,
    pub pass: bool,
}

/// Mean surface χ over a class on a closed 3-dimensional complex that need
/// not be a manifold: `Σ (-1/2)^j f_j - χ(Δ)`.
pub fn pseudomanifold_average(
    p: &FacePoset,
    sigma: &Cochain,
    opts: &EnumerationOptions,
) -> Result<PseudomanifoldReport, AnalysisError> {
    if p.dim() != 3 {
        return Err(SurfaceError::WrongDimension(p.dim()).into());
    }
    if let Some(triangle) = (0..p.count(2)).find(|&t| p.cofaces(2, t).len() != 2) {
        return Err(SurfaceError::NotClosed {
            triangle,
            incidence: p.cofaces(2, triangle).len(),
        }
        .into());
    }
    let spectrum = class_spectrum(p, sigma, opts)?;
    let formula = average_formula(&p.f_vector());
    let expected = formula.clone() - Rational::integer(p.euler_char());
    Ok(PseudomanifoldReport {
        pass: spectrum.mean == expected && spectrum.cross_check_failures == 0,
        formula,
        complex_euler_char: p.euler_char(),
        expected,
        surface_mean: spectrum.mean,
        count: spectrum.count,
        cross_check_failures: spectrum.cross_check_failures,
    })
}
