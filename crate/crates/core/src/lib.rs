//! Exact matching statistics for small graphs and trees.
//!
//! The crate computes matching profiles (the number of `k`-matchings for every
//! `k`), the derived totals and averages in exact rational arithmetic,
//! matching polynomials and their real zeros, matching energy, and a set of
//! verifiers that sweep exhaustive corpora of small graphs and free trees.

pub mod canon;
pub mod charpoly;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod poly;
pub mod ratio;
pub mod spectral;
pub mod stats;
pub mod surd;

pub use canon::{canonical_form, canonical_key, CanonicalKey};
pub use error::{EnumerationError, GraphError, SpectralError, StatsError};
pub use graph::{Edge, Family, Graph};
pub use num_rational::BigRational;
pub use ratio::ExactRatio;
pub use stats::{matching_profile, MatchingProfile};
