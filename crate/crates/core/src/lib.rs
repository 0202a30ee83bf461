//! Balanced simplicial complexes: faces and complexes on at most 64
//! vertices, exact homology, the cross-polytope, stacked and handle
//! constructions, cyclic covers, instance checkers with JSON certificates,
//! and an isomorph-free search for small balanced closed manifolds.

pub mod certificate;
pub mod certify;
pub mod cli;
pub mod coloring;
pub mod complex;
pub mod constructions;
pub mod covers;
pub mod error;
pub mod face;
pub mod homology;
pub mod io;
pub mod iso;
pub mod linalg;
pub mod search;

pub use certificate::{Certificate, Verdict};
pub use coloring::Coloring;
pub use complex::{Complex, FVector, Graph, HVector};
pub use constructions::LabeledComplex;
pub use covers::Cocycle;
pub use error::{Error, Result};
pub use face::Face;
pub use homology::{BettiVector, CoefficientField};
