//! Free bimodule complexes, their passage to DG bimodules over `R^dg`,
//! duals, and a bidegree-wise test of twisted Calabi-Yau duality.

mod builders;
mod complex;
mod cy;
mod parse;
mod transport;

pub use builders::{koszul_complex, potential_complex, relation_complex};
pub use complex::{free_derivative, BimoduleComplex, FreeSummand, Setting, TensorPoly};
pub use cy::{
    check_twisted_cy, cohomology, default_window, exactness_probe, CohomologyRow, TwistRatio,
    Verdict,
};
pub use parse::parse_complex;
pub use transport::{dg_transport, dualize};

use thiserror::Error;

use crate::quiver_algebra::{GradedQuiverPresentation, QuiverError, Twist};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignDgError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("malformed complex: {0}")]
    Shape(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("complex is not a complex of free graded bimodules: {0}")]
    NotFree(String),
    #[error("not a polynomial ring in commuting variables: {0}")]
    NotCommutative(String),
    #[error("arrow `{0}` has positive degree")]
    PositiveDegree(String),
    #[error("augmented complex is not exact at position {position}, internal degree {degree} (homology dimension {dim})")]
    NotAResolution {
        position: i64,
        degree: i64,
        dim: usize,
    },
    #[error("window too small; inconclusive in internal degrees {degrees:?}")]
    WindowTooSmall { degrees: Vec<i64> },
    #[error("presentation declares no Calabi-Yau data and no a-invariant was given")]
    MissingCy,
}

/// Claimed duality `RHom(R, R^e)[shift] ≅ ₁R_twist`, with the total shift
/// split as `cohomological + internal` (the internal part is the
/// a-invariant of `R`).
#[derive(Clone, Debug, PartialEq)]
pub struct TwistSpec {
    pub twist: Twist,
    pub cohomological: i64,
    pub internal: i64,
}

impl TwistSpec {
    pub fn new(twist: Twist, cohomological: i64, internal: i64) -> Self {
        Self {
            twist,
            cohomological,
            internal,
        }
    }

    /// Uses the declared CY dimension and a-invariant of `pres`.
    pub fn from_cy(pres: &GradedQuiverPresentation, twist: Twist) -> Result<Self, SignDgError> {
        let cy = pres.cy.ok_or(SignDgError::MissingCy)?;
        Ok(Self::new(twist, cy.dimension as i64, cy.a_invariant))
    }

    pub fn total(&self) -> i64 {
        self.cohomological + self.internal
    }
}
