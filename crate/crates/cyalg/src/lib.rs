//! Finite-dimensional algebras attached to negatively graded Calabi-Yau
//! algebras, with the supporting quiver, dimer, sign and homological tools.

#![allow(clippy::needless_range_loop)]

pub mod abc;
pub mod ar_shadow;
pub mod dimer;
pub mod emit;
pub mod findim;
pub mod linalg;
pub mod preprojective;
pub mod quiver_algebra;
pub mod sign_dg;
