//! Hochschild cohomology of truncated quiver algebras, with exact rational
//! arithmetic throughout.
//!
//! The pipeline: a quiver and a truncation length define the algebra
//! A = kΔ/(Δ_N); two projective bimodule resolutions of A (reduced bar and
//! minimal) come with explicit comparison morphisms in both directions; the
//! dual of the minimal resolution decomposes into small subcomplexes whose
//! kernels are spanned by medal sums; and the cup/Yoneda product is computed
//! three independent ways and cross-checked.

pub mod algebra;
pub mod cohomology;
pub mod comparison;
pub mod composition;
pub mod cup;
pub mod error;
pub mod linalg;
pub mod medals;
pub mod oracle;
pub mod quiver;
pub mod rational;
pub mod report;
pub mod resolutions;

pub use algebra::{AlgebraElement, TruncatedAlgebra};
pub use error::{Error, Limits, Result};
pub use linalg::RationalMatrix;
pub use quiver::{parse_quiver, ParallelPair, Path, Quiver};
pub use rational::Rational;
