//! Deformation cohomology of Lie algebra morphisms over the rationals.
//!
//! A point of the morphism bundle is a [`Triple`] `(ρ, θ, Φ)`: brackets on
//! `U` and `V` and a Lie morphism `Φ: U → V`. Cochains of degree `p` are
//! triples `(X₁, X₂, X₃)` of alternating maps with arities `(p+1, p+1, p)`,
//! and [`big_delta`] is the differential on them. Everything is exact.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod complex;
pub mod deformation;
pub mod error;
pub mod io;
pub mod linalg;
pub mod skew;

pub use algebra::{LieAlgebra, LinearMap, Triple};
pub use cohomology::{cohomology, CohomologyReport, Dims};
pub use complex::{big_delta, Cochain, SignConvention};
pub use deformation::{ObstructionReport, TruncatedCurve};
pub use error::{Error, Result};
pub use linalg::{Matrix, Rational};
pub use skew::SkewMap;
