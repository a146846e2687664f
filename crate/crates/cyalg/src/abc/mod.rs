//! The algebras `A`, `U`, `B = A ⋉ U` read off a negatively graded
//! presentation, their block versions `Ã`, `Ũ`, `B̃`, and related checks.

mod algebra;
mod build;
mod tilde;

pub use algebra::{basis_vec, dual_numbers, semisimple, trivial_extension, FdAlgebra, FdBimodule};
pub use build::{
    build_a, build_b, build_u, cluster_hom_shadow, default_cap, multiply_grading, AbcData, Elem,
};
pub use tilde::{build_tilde, Tilde, TildePart};

use serde::Serialize;
use thiserror::Error;

use crate::findim::{self, FindimError, GabrielQuiver};
use crate::linalg::{Echelon, SparseVec};
use crate::quiver_algebra::QuiverError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbcError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Findim(#[from] FindimError),
    #[error("arrow `{0}` has positive degree")]
    PositiveDegree(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed structure: {0}")]
    Shape(String),
    #[error("idempotents: {0}")]
    Idempotents(String),
    #[error("not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("bimodule axiom fails: {0}")]
    BimoduleAxiom(String),
    #[error("index {index} lies outside the window {lo}..={hi}")]
    WindowViolation { index: i64, lo: i64, hi: i64 },
    #[error("presentation declares no Calabi-Yau data")]
    MissingCy,
    #[error("product `{0}` left the computed graded pieces; raise the cap")]
    Truncated(String),
}

/// Gabriel quiver of `B`, computed from its radical by linear algebra.
pub fn gabriel_quiver_of_b(b: &FdAlgebra) -> Result<GabrielQuiver, AbcError> {
    Ok(findim::gabriel_quiver(b)?)
}

/// Per-corner dimensions for `J_B/J_B^2 = J_A/J_A^2 ⊕ U/(J_A U + U J_A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCompReport {
    pub radical_is_ja_plus_u: bool,
    /// `(i, j, dim e_i(J_B/J_B^2)e_j, dim of A part, dim of U part)`.
    pub corners: Vec<(usize, usize, usize, usize, usize)>,
    pub holds: bool,
}

fn corner_dim(alg: &FdAlgebra, vs: &[SparseVec], i: usize, j: usize) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        let c = alg.corner(i, v, j);
        if !c.is_zero() {
            e.insert(c);
        }
    }
    e.rank()
}

/// Verifies the radical decomposition of a trivial extension `B = A ⋉ U`
/// whose basis lists `A` first.
pub fn lemma_comp_check(
    a: &FdAlgebra,
    u: &FdBimodule,
    b: &FdAlgebra,
) -> Result<LemmaCompReport, AbcError> {
    let da = a.dim();
    let shift = |v: &SparseVec| {
        SparseVec::from_entries(v.iter().map(|(i, c)| (i + da, c.clone())).collect())
    };
    let rad_a = findim::radical(a)?;
    let rad_b = findim::radical(b)?;
    let mut expected: Vec<SparseVec> = rad_a.basis().to_vec();
    expected.extend((0..u.dim()).map(|k| SparseVec::unit(da + k)));
    let span_exp = Echelon::from_vectors(&expected);
    let radical_is_ja_plus_u =
        span_exp.rank() == rad_b.dim() && rad_b.basis().iter().all(|v| span_exp.contains(v));

    let jb2 = findim::radical_power(b, &rad_b, 2);
    let ja2 = findim::radical_power(a, &rad_a, 2);
    let mut ju = Vec::new();
    for r in rad_a.basis() {
        for k in 0..u.dim() {
            let uk = SparseVec::unit(k);
            ju.push(shift(&u.left_act(r, &uk)));
            ju.push(shift(&u.right_act(&uk, r)));
        }
    }
    let u_all: Vec<SparseVec> = (0..u.dim()).map(|k| SparseVec::unit(da + k)).collect();
    let mut corners = Vec::new();
    let mut holds = radical_is_ja_plus_u;
    for i in 0..b.num_idempotents() {
        for j in 0..b.num_idempotents() {
            let top_b = corner_dim(b, rad_b.basis(), i, j) - corner_dim(b, &jb2, i, j);
            let top_a = corner_dim(a, rad_a.basis(), i, j) - corner_dim(a, &ja2, i, j);
            let top_u = corner_dim(b, &u_all, i, j) - corner_dim(b, &ju, i, j);
            holds &= top_b == top_a + top_u;
            if top_b + top_a + top_u > 0 {
                corners.push((i, j, top_b, top_a, top_u));
            }
        }
    }
    Ok(LemmaCompReport {
        radical_is_ja_plus_u,
        corners,
        holds,
    })
}
