//! Random multiparameter simplicial complexes and their straight-line
//! embeddings.
//!
//! The crate samples `X(n; 1, n^{-α_1}, n^{-α_2}, ...)`, classifies `α`
//! against the embedding threshold, peels the `d`-face hypergraph to its
//! 2-core, builds exact embeddings of collapsible complexes in `R^{2d}`,
//! and counts Radon matches of a complex against a point configuration.
//!
//! Geometry is generic over [`Scalar`]; exact predicates use [`Rational`].

pub mod alpha;
pub mod collapse;
pub mod complex;
pub mod error;
pub mod geometry;
pub mod radon_match;
pub mod scalar;
pub mod seed;
pub mod sweep;
pub mod threshold;

pub use alpha::{AlphaEntry, AlphaVector, Exponent};
pub use collapse::{peel_complex, two_core, DFaceHypergraph, PeelResult};
pub use complex::{sample_complex, FVector, Face, SimplicialComplex};
pub use error::{Error, Result};
pub use geometry::{Point, PointConfiguration, RadonPartition};
pub use radon_match::{MatchMode, MatchReport};
pub use scalar::Scalar;
pub use threshold::{classify, Classification};

/// Exact scalar used for all geometric predicates.
pub type Rational = num_rational::BigRational;
/// Threshold vector with floating-point entries.
pub type Alpha = AlphaVector<f64>;
/// Threshold vector with exact entries.
pub type ExactAlpha = AlphaVector<Rational>;
pub type RationalPoint = Point<Rational>;
pub type RationalConfiguration = PointConfiguration<Rational>;
pub type RationalRadonPartition = RadonPartition<Rational>;
