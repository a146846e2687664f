//! Radicals, Gabriel quivers, minimal projective resolutions and the
//! Iwanaga-Gorenstein test for split basic finite-dimensional algebras.

mod module;
mod radical;

pub use module::{projective_resolution, FdModule, Resolution};
pub use radical::{
    gabriel_quiver, product_span, radical, radical_layers, radical_power, GabrielQuiver, Presented,
    Radical,
};

use serde::Serialize;
use thiserror::Error;

use crate::abc::FdAlgebra;
use crate::quiver_algebra::QuiverError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FindimError {
    #[error("algebra is not split basic: {0}")]
    NotSplitBasic(String),
    #[error("not a module: {0}")]
    BadModule(String),
    #[error("inconclusive: injective dimension exceeds the cap {cap} on the {side:?} side")]
    Inconclusive { cap: usize, side: Side },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InjDim {
    Exact(usize),
    Exceeds(usize),
}

/// Injective dimension of the regular module on `side`: the projective
/// dimension of its linear dual over the opposite side.
pub fn injective_dimension(alg: &FdAlgebra, side: Side, cap: usize) -> Result<InjDim, FindimError> {
    let res = match side {
        // D(_B B) is a right B-module.
        Side::Left => projective_resolution(alg, &FdModule::dual_left_regular(alg), cap)?,
        // D(B_B) is a right module over the opposite algebra.
        Side::Right => {
            let op = alg.opposite();
            projective_resolution(&op, &FdModule::dual_left_regular(&op), cap)?
        }
    };
    Ok(match res.projective_dimension() {
        Some(d) if d <= cap => InjDim::Exact(d),
        _ => InjDim::Exceeds(cap),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IgReport {
    pub d: usize,
    pub left: usize,
    pub right: usize,
    pub holds: bool,
}

/// Both regular modules have injective dimension at most `d`.
pub fn is_iwanaga_gorenstein(
    alg: &FdAlgebra,
    d: usize,
    cap: usize,
) -> Result<IgReport, FindimError> {
    let get = |side| match injective_dimension(alg, side, cap)? {
        InjDim::Exact(k) => Ok(k),
        InjDim::Exceeds(cap) => Err(FindimError::Inconclusive { cap, side }),
    };
    let left = get(Side::Left)?;
    let right = get(Side::Right)?;
    Ok(IgReport {
        d,
        left,
        right,
        holds: left <= d && right <= d,
    })
}
