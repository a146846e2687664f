//! Bipartite dimer models on the torus and their quivers with potential.

mod consistency;
pub mod lp;
mod matchings;
mod model;
mod qp;

pub use consistency::{consistency_check, Certificate, Consistency, RCharge};
pub use matchings::{
    grading_from_matchings, perfect_matchings, DegreeFunction, Matching, Matchings,
    DEFAULT_MATCHING_CAP,
};
pub use model::{Color, DimerModel, Edge, Face, TorusReport};
pub use qp::{cy3_complex, dual_qp, jacobian_presentation, QuiverWithPotential};

use thiserror::Error;

use crate::quiver_algebra::QuiverError;
use crate::sign_dg::SignDgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimerError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge `{0}` does not join a black vertex to a white vertex")]
    NotBipartite(String),
    #[error("rotation at `{vertex}` is invalid: {message}")]
    BadRotation { vertex: String, message: String },
    #[error("graph is not a torus tiling: V - E + F = {chi}")]
    NotTorus { chi: i64 },
    #[error("dimer has no edges")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex sums of the degree function are not constant: {0:?}")]
    NotConstant(Vec<i64>),
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("no positive weighting makes all vertex cycles of equal weight")]
    NoOrderWeights,
    #[error("d∘d is nonzero at step {step}, entry ({row}, {col}): {entry}")]
    NotComplex {
        step: usize,
        row: usize,
        col: usize,
        entry: String,
    },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    SignDg(#[from] SignDgError),
}
