//! Graded quivers, path algebras and degree-truncated normal forms.
//!
//! Paths compose left to right: `p*q` is "first `p`, then `q`". Relation
//! files are written in the same convention.

mod graded;
mod path;
mod presentation;
mod quiver;
mod rewriting;
mod structure;

pub use graded::{graded_dimension, DimensionTable, GradedModel, GradedPieceBasis};
pub use path::{NCPoly, Path};
pub use presentation::{remap_poly, CyData, GradedQuiverPresentation, Twist};
pub use quiver::{Arrow, ArrowId, Quiver, VertexId};
pub use rewriting::{compare_ideals, truncated_rewriting, IdealComparison, RewritingSystem, Rule};
pub use structure::{relations_from_structure, PathRepresentation};

pub(crate) use presentation::{parse_product, Product};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{0}` references an unknown vertex")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrow weights must be positive, one per arrow")]
    BadWeights,
    #[error("arrow order must be a permutation of all arrows")]
    BadOrder,
    #[error("bad twist: {0}")]
    BadTwist(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("relation `{relation}` is not homogeneous; offending term `{term}`")]
    Inhomogeneous { relation: String, term: String },
    #[error("relation `{0}` has a lazy leading term")]
    DegenerateRelation(String),
    #[error("cap {cap} is smaller than the largest relation weight {needed}")]
    CapTooSmall { cap: u32, needed: u32 },
    #[error("dimension of degree {degree} changed from {at_cap} to {at_larger} when raising the cap; the piece is not finite at this cap")]
    NonStabilizing {
        degree: i64,
        at_cap: usize,
        at_larger: usize,
    },
    #[error("relations are not homogeneous for the path order weights; declare [weights]")]
    NotWeightHomogeneous,
    #[error("arrow images do not generate the algebra up to length {cap} (rank {rank} of {dim})")]
    NotSurjective { cap: usize, rank: usize, dim: usize },
}
