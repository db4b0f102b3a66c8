//! Structured audit findings shared by every validator in the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ViolationCode {
    // complex structure
    DanglingFacet,
    FacetCoverageViolation,
    VertexArityMismatch,
    DuplicateVertexInCell,
    DuplicateFacet,
    UnknownVertex,
    DuplicateLabel,
    CoordinateDimension,
    // involutions
    FixedPoint,
    NotInvolutive,
    NotSimplicial,
    MissingPairing,
    OutOfScope,
    // manifold audits
    NotPure,
    NotPseudomanifold,
    BettiMismatch,
    BoundaryMismatch,
    AntipodalCell,
    // colourings and quadrangulations
    UncolouredVertex,
    Monochromatic,
    NotAntisymmetric,
    NotBipartite,
    NoEdge,
    ParityViolation,
    CycleInconsistent,
    GraphMismatch,
    // box complex map
    NotInBoxComplex,
    NotEquivariant,
    // homomorphisms
    NotAHomomorphism,
    UnknownLabel,
    // colouring certificates
    ChromaticBound,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub cell_dim: Option<usize>,
    pub cell_id: Option<usize>,
    pub detail: String,
}

/// An ordered list of violations. Empty means the audited object is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(
        &mut self,
        code: ViolationCode,
        cell: Option<(usize, usize)>,
        detail: impl Into<String>,
    ) {
        self.violations.push(Violation {
            code,
            cell_dim: cell.map(|c| c.0),
            cell_id: cell.map(|c| c.1),
            detail: detail.into(),
        });
    }

    pub fn cell(&mut self, code: ViolationCode, dim: usize, id: usize, detail: impl Into<String>) {
        self.push(code, Some((dim, id)), detail);
    }

    pub fn global(&mut self, code: ViolationCode, detail: impl Into<String>) {
        self.push(code, None, detail);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    /// Sorts by (cell dimension, cell id, code) so reports are reproducible.
    pub fn sorted(mut self) -> Self {
        self.violations.sort();
        self
    }

    pub fn into_result(self, stage: &str) -> crate::Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(crate::Error::verification(stage, self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        let shown = self.violations.iter().take(5);
        for (i, v) in shown.enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", v.code)?;
            if let (Some(d), Some(c)) = (v.cell_dim, v.cell_id) {
                write!(f, " at {d}-cell {c}")?;
            }
            if !v.detail.is_empty() {
                write!(f, " ({})", v.detail)?;
            }
        }
        if self.violations.len() > 5 {
            write!(f, "; and {} more", self.violations.len() - 5)?;
        }
        Ok(())
    }
}
