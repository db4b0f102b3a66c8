//! Quadrangulations of real projective spaces: generalized simplicial
//! complexes, mod-2 homology, antipodal symmetry, the graph families that
//! quadrangulate projective spaces, and colouring bounds.

pub mod bundle;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod homology;
pub mod io;
pub mod label;
pub mod report;
pub mod symmetry;

pub use complex::{Cell, CellId, CellRef, CellSet, Complex, ComplexBuilder, VertexId};
pub use error::{Error, Result};
pub use graph::Graph;
pub use homology::{BitMatrix, ChainZ2};
pub use label::Label;
pub use report::{ValidationReport, Violation, ViolationCode};
