//! Dimension-vector shadows of the derived picture: Cartan and Coxeter
//! matrices, knitting of preprojective components of hereditary algebras,
//! and the labeled orbit `R(-i)[j]` on which `F^a = ν_d` is checked.
//!
//! The functor `F` itself is never constructed. Only its action on labels
//! and on dimension vectors (classes in the Grothendieck group) is modeled.

mod knit;
mod root;

pub use knit::{knit_component, Component, KnitVertex};
pub use root::{
    knit_labeled, label_dims, verify_root, CoxeterCheck, DimVecOrbit, Label, RootReport,
};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::abc::{AbcError, FdAlgebra};
use crate::findim::{gabriel_quiver, FindimError};
use crate::linalg::{Echelon, IntMatrix, SparseVec};
use crate::quiver_algebra::{Path, Quiver, QuiverError, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArError {
    #[error("algebra is not hereditary: {0}")]
    NotHereditary(String),
    #[error("Cartan matrix is not invertible over the integers")]
    NotUnimodular,
    #[error("mesh at {label} gives {mesh} but the Coxeter matrix gives {coxeter}")]
    MeshMismatch {
        label: String,
        mesh: DimVec,
        coxeter: DimVec,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Abc(#[from] AbcError),
    #[error(transparent)]
    Findim(#[from] FindimError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Integer vector indexed by the vertices of `A`'s quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DimVec(pub Vec<i64>);

impl DimVec {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add_scaled(&mut self, k: i64, other: &DimVec) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            *x += k * y;
        }
    }

    pub fn apply(m: &IntMatrix, v: &DimVec) -> DimVec {
        DimVec(m.apply(&v.0))
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `dim e_i A e_j` for all idempotent pairs.
pub fn corner_dims(alg: &FdAlgebra) -> Vec<Vec<usize>> {
    let m = alg.num_idempotents();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut e = Echelon::new();
                    for b in 0..alg.dim() {
                        let c = alg.corner(i, &SparseVec::unit(b), j);
                        if !c.is_zero() {
                            e.insert(c);
                        }
                    }
                    e.rank()
                })
                .collect()
        })
        .collect()
}

/// Number of paths `i -> j` in an acyclic quiver, lazy paths included.
fn path_counts(q: &Quiver) -> Option<Vec<Vec<usize>>> {
    let order = q.topological_order()?;
    let n = q.num_vertices();
    let mut count = vec![vec![0usize; n]; n];
    for i in 0..n {
        count[i][i] = 1;
    }
    // Process targets in topological order so every shorter path is known.
    for &v in &order {
        for a in q.arrows() {
            if a.target == v {
                for row in count.iter_mut() {
                    row[v.idx()] += row[a.source.idx()];
                }
            }
        }
    }
    Some(count)
}

/// Checks that `alg` is the path algebra of its (acyclic) Gabriel quiver.
pub fn check_hereditary(alg: &FdAlgebra) -> Result<Quiver, ArError> {
    let g = gabriel_quiver(alg)?;
    let counts = path_counts(&g.quiver)
        .ok_or_else(|| ArError::NotHereditary("Gabriel quiver has a cycle".into()))?;
    let dims = corner_dims(alg);
    for (i, row) in dims.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            if d != counts[i][j] {
                return Err(ArError::NotHereditary(format!(
                    "dim e_{i} A e_{j} = {d} but the Gabriel quiver has {} paths",
                    counts[i][j]
                )));
            }
        }
    }
    Ok(g.quiver)
}

/// Columns are the dimension vectors of the projectives `e_i A`:
/// `C[j][i] = dim e_i A e_j`.
pub fn cartan_matrix(alg: &FdAlgebra) -> Result<IntMatrix, ArError> {
    check_hereditary(alg)?;
    Ok(cartan_unchecked(alg))
}

pub(crate) fn cartan_unchecked(alg: &FdAlgebra) -> IntMatrix {
    let dims = corner_dims(alg);
    let n = dims.len();
    let mut c = IntMatrix::zeros(n, n);
    for (i, row) in dims.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            c.set(j, i, d as i64);
        }
    }
    c
}

/// Coxeter matrix `Φ = -Cᵀ C⁻¹` and its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coxeter {
    pub phi: IntMatrix,
    pub phi_inv: IntMatrix,
}

pub fn coxeter_step(c: &IntMatrix) -> Result<Coxeter, ArError> {
    if c.rows != c.cols {
        return Err(ArError::InvalidParameter(
            "Cartan matrix must be square".into(),
        ));
    }
    let c_inv = c.integer_inverse().ok_or(ArError::NotUnimodular)?;
    let phi = c.transpose().mul(&c_inv).neg();
    // Φ⁻¹ = -C C⁻ᵀ.
    let phi_inv = c.mul(&c_inv.transpose()).neg();
    Ok(Coxeter { phi, phi_inv })
}

/// Path algebra of an acyclic quiver, with basis the paths.
pub fn path_algebra(q: &Quiver) -> Result<FdAlgebra, ArError> {
    let order = q
        .topological_order()
        .ok_or_else(|| ArError::InvalidParameter("quiver has a cycle".into()))?;
    let mut paths: Vec<Path> = q.vertices().map(Path::lazy).collect();
    // Extend paths arrow by arrow; acyclicity bounds the length.
    let mut frontier = paths.clone();
    for _ in 0..order.len() {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.target()) {
                if let Some(np) = p.compose(&Path::arrow(q, a)) {
                    next.push(np);
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let index: std::collections::HashMap<&Path, usize> =
        paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = paths.len();
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match paths[i].compose(&paths[j]) {
                    Some(p) => SparseVec::unit(index[&p]),
                    None => SparseVec::new(),
                })
                .collect()
        })
        .collect();
    let labels: Vec<String> = paths.iter().map(|p| p.display(q)).collect();
    let names = paths
        .iter()
        .map(|p| {
            if p.is_lazy() {
                format!("e_{}", q.vertex_name(p.source()))
            } else {
                p.arrows()
                    .iter()
                    .map(|a| q.arrow(*a).name.as_str())
                    .collect::<Vec<_>>()
                    .join("_")
            }
        })
        .collect();
    let idem = q
        .vertices()
        .map(|v: VertexId| SparseVec::unit(v.idx()))
        .collect();
    Ok(FdAlgebra::new(
        labels,
        names,
        table,
        idem,
        q.vertex_names().to_vec(),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(arrows: &[(&str, &str, &str)], vertices: &[&str]) -> Quiver {
        let a: Vec<(&str, &str, &str, i64)> =
            arrows.iter().map(|&(n, s, t)| (n, s, t, 0)).collect();
        Quiver::from_spec(vertices, &a).unwrap()
    }

    #[test]
    fn coxeter_inverse() {
        let c = IntMatrix::from_rows(&[vec![1, 0], vec![2, 1]]);
        let cx = coxeter_step(&c).unwrap();
        assert_eq!(cx.phi.mul(&cx.phi_inv), IntMatrix::identity(2));
    }

    #[test]
    fn singular_cartan_is_rejected() {
        assert_eq!(
            coxeter_step(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]])),
            Err(ArError::NotUnimodular)
        );
    }

    #[test]
    fn path_algebra_dimension() {
        let q = quiver(
            &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3")],
            &["1", "2", "3"],
        );
        let alg = path_algebra(&q).unwrap();
        assert_eq!(alg.dim(), 3 + 3 + 2);
        alg.check_associative().unwrap();
    }

    #[test]
    fn dual_numbers_are_not_hereditary() {
        let err = cartan_matrix(&crate::abc::dual_numbers()).unwrap_err();
        assert!(matches!(err, ArError::NotHereditary(_)));
    }
}
