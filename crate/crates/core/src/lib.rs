//! Generalized Morse complexes and Morse complexes of finite simplicial
//! complexes, the Bestvina–Brady apparatus on their barycentric
//! subdivisions, and exact reduced homology used to check connectivity
//! bounds.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! multi-threaded drivers live in the `morsecx` companion crate.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod complex;
mod error;
pub mod generate;
pub mod graph;
pub mod hasse;
pub mod homology;
pub mod morse_complex;
pub mod morse_theory;
pub mod vector_field;

pub use complex::{Simplex, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use generate::{generate, Family};
pub use hasse::{ExclusionSet, HasseDiagram, HasseMetrics};
pub use homology::{BettiVector, Field};
pub use morse_complex::MatchingComplexResult;
pub use vector_field::{DiscreteVectorField, PrimitiveDvf, VCycle};

/// Default cap on the number of simplices any exponential construction may
/// produce before it fails with [`Error::Budget`].
pub const DEFAULT_SIMPLEX_BUDGET: usize = 5_000_000;
