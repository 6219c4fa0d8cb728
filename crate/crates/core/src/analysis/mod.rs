//! Exact averages of Euler characteristics over cohomology classes, class
//! spectra, and the lens space certificate.

mod certificate;
mod lemma;
mod rational;
mod spectrum;

use std::collections::BTreeSet;

pub use certificate::{certify_lens, Certificate};
pub use lemma::{
    pseudomanifold_average, verify_average, verify_lemma, AverageReport, LemmaReport,
    PseudomanifoldReport,
};
pub use rational::Rational;
pub use spectrum::{class_spectrum, ClassSpectrum, SpectrumEntry};

use crate::cohomology::CohomologyError;
use crate::generators::GeneratorError;
use crate::parallel::{Parallelism, PoolError};
use crate::poset::FVector;
use crate::surface::SurfaceError;

/// Default cap on the number of cocycles enumerated per class.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("class has 2^{free_vertices} cocycles, over the budget of {budget}")]
    BudgetExceeded { free_vertices: usize, budget: u64 },
    #[error("f-vector {0} does not satisfy f3 = f1 - f0 and f2 = 2(f1 - f0)")]
    NotClosed3ManifoldFVector(FVector),
    #[error("complex is not a closed 3-manifold")]
    NotClosed3Manifold,
    #[error("expected H^1 of dimension 1, found {0}")]
    WrongH1Dimension(usize),
    #[error("q = {q} and r = {r} must be odd and positive")]
    BadParity { q: i64, r: i64 },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Pool(#[from] PoolError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub budget: u64,
    pub parallelism: Parallelism,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            budget: DEFAULT_BUDGET,
            parallelism: Parallelism::default(),
        }
    }
}

/// `Σ_j (-1/2)^j f_j`, the mean of `χ(Δ_ψ)` over any cohomology class.
pub fn average_formula(fv: &FVector) -> Rational {
    fv.0.iter().enumerate().fold(Rational::zero(), |acc, (j, &f)| {
        let term = Rational::new(f, 1u64 << j);
        if j % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// `(5 f_0 - f_1) / 8` for the f-vector of a closed 3-manifold, checked
/// against `(4 f_0 - f_3) / 8` and the general formula.
pub fn average_closed3(fv: &FVector) -> Result<Rational, AnalysisError> {
    let f = |j| fv.get(j) as i64;
    if fv.0.len() != 4 || f(3) != f(1) - f(0) || f(2) != 2 * (f(1) - f(0)) {
        return Err(AnalysisError::NotClosed3ManifoldFVector(fv.clone()));
    }
    let value = Rational::new(5 * f(0) - f(1), 8);
    assert_eq!(value, Rational::new(4 * f(0) - f(3), 8));
    assert_eq!(value, average_formula(fv));
    Ok(value)
}

/// Euler characteristics `(4 - q - r)/2 - 2i`, `i ≥ 0`, that are at least
/// `floor`: the nonorientable closed surfaces embedding in `L(2k, q)` when
/// `2k = qr + 1`.
pub fn bredon_wood_chis(q: i64, r: i64, floor: i64) -> Result<BTreeSet<i64>, AnalysisError> {
    if q < 1 || r < 1 || q % 2 == 0 || r % 2 == 0 {
        return Err(AnalysisError::BadParity { q, r });
    }
    let top = (4 - q - r) / 2;
    Ok((0..)
        .map(|i| top - 2 * i)
        .take_while(|&chi| chi >= floor)
        .collect())
}
