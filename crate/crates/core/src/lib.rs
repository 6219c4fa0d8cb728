//! Simplicial posets, ℤ/2 cohomology and discrete normal surfaces.
//!
//! The crate builds 3-dimensional simplicial posets from facet gluings or
//! generators, computes `H¹(Δ; ℤ/2)`, extracts the discrete normal surface
//! dual to a 1-cocycle, and enumerates whole cohomology classes to compare
//! mean Euler characteristics with exact f-vector formulas.

pub mod analysis;
pub mod cohomology;
pub mod format;
pub mod generators;
pub mod gf2;
pub mod parallel;
pub mod poset;
pub mod surface;

pub use analysis::{EnumerationOptions, Rational};
pub use cohomology::Cochain;
pub use parallel::Parallelism;
pub use poset::{FVector, FacePoset};
