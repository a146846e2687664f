use std::collections::HashMap;

use serde::Serialize;

use super::{cartan_matrix, check_hereditary, coxeter_step, ArError, DimVec};
use crate::abc::FdAlgebra;

/// `τ^{-level} P_vertex` with `P_v = e_v A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnitVertex {
    pub vertex: usize,
    pub level: usize,
    pub dim: DimVec,
    pub injective: bool,
    pub label: String,
    /// `i` when the vertex is (a summand of) `R(-i)`.
    pub twist: Option<i64>,
}

/// Fragment of the preprojective component: levels `0..=steps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertex_names: Vec<String>,
    pub vertices: Vec<KnitVertex>,
    /// `(from, to, multiplicity)` as indices into `vertices`.
    pub arrows: Vec<(usize, usize, usize)>,
    /// Every τ-orbit reached an injective, so the component is finite.
    pub closed: bool,
}

impl Component {
    pub fn find(&self, vertex: usize, level: usize) -> Option<usize> {
        self.vertices
            .iter()
            .position(|x| x.vertex == vertex && x.level == level)
    }

    /// Pairs `(X, τ⁻¹X)` present in the fragment.
    pub fn meshes(&self) -> Vec<(usize, usize)> {
        self.vertices
            .iter()
            .enumerate()
            .filter_map(|(i, x)| self.find(x.vertex, x.level + 1).map(|j| (i, j)))
            .collect()
    }

    /// `dim X + dim τ⁻¹X = Σ dim E` over the arrows `X -> E` in every mesh.
    pub fn mesh_additive(&self) -> bool {
        self.meshes().into_iter().all(|(x, y)| {
            let mut middle = DimVec::zero(self.vertices[x].dim.len());
            for &(s, t, m) in &self.arrows {
                if s == x {
                    middle.add_scaled(m as i64, &self.vertices[t].dim);
                }
            }
            let mut ends = self.vertices[x].dim.clone();
            ends.add_scaled(1, &self.vertices[y].dim);
            middle == ends
        })
    }

    pub fn by_twist(&self, twist: i64) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.vertices[i].twist == Some(twist))
            .collect()
    }
}

/// Knits the component of the projectives `e_v A` by mesh additivity,
/// `steps` applications of `τ⁻¹` deep. A module is injective exactly when
/// `Φ⁻¹` of its dimension vector is not a dimension vector; each mesh is
/// cross-checked against `Φ⁻¹`.
pub fn knit_component(alg: &FdAlgebra, steps: usize) -> Result<Component, ArError> {
    let gq = check_hereditary(alg)?;
    let c = cartan_matrix(alg)?;
    let cox = coxeter_step(&c)?;
    let n = gq.num_vertices();
    let mut mult = vec![vec![0usize; n]; n];
    for a in gq.arrows() {
        mult[a.source.idx()][a.target.idx()] += 1;
    }
    let names: Vec<String> = gq.vertex_names().to_vec();
    let label = |v: usize, level: usize| {
        if level == 0 {
            format!("P_{}", names[v])
        } else {
            format!("t^-{level} P_{}", names[v])
        }
    };
    let mut order: Vec<usize> = gq
        .topological_order()
        .expect("checked acyclic")
        .iter()
        .map(|v| v.idx())
        .collect();
    order.reverse();

    let mut vertices: Vec<KnitVertex> = Vec::new();
    let mut at: HashMap<(usize, usize), usize> = HashMap::new();
    let push = |vertices: &mut Vec<KnitVertex>,
                at: &mut HashMap<(usize, usize), usize>,
                v: usize,
                level: usize,
                dim: DimVec| {
        let injective = !DimVec::apply(&cox.phi_inv, &dim).is_nonnegative();
        at.insert((v, level), vertices.len());
        vertices.push(KnitVertex {
            vertex: v,
            level,
            dim,
            injective,
            label: label(v, level),
            twist: None,
        });
    };
    for v in 0..n {
        push(&mut vertices, &mut at, v, 0, DimVec(c.col(v)));
    }
    for level in 0..steps {
        for &u in &order {
            let Some(&x) = at.get(&(u, level)) else {
                continue;
            };
            if vertices[x].injective {
                continue;
            }
            let mut mesh = DimVec::zero(n);
            for w in 0..n {
                if let Some(&e) = at.get(&(w, level)) {
                    mesh.add_scaled(mult[w][u] as i64, &vertices[e].dim);
                }
                if let Some(&e) = at.get(&(w, level + 1)) {
                    mesh.add_scaled(mult[u][w] as i64, &vertices[e].dim);
                }
            }
            mesh.add_scaled(-1, &vertices[x].dim);
            let coxeter = DimVec::apply(&cox.phi_inv, &vertices[x].dim);
            if mesh != coxeter {
                return Err(ArError::MeshMismatch {
                    label: vertices[x].label.clone(),
                    mesh,
                    coxeter,
                });
            }
            push(&mut vertices, &mut at, u, level + 1, mesh);
        }
    }
    let mut arrows = Vec::new();
    for (u, row) in mult.iter().enumerate() {
        for (v, &m) in row.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for level in 0..=steps {
                if let (Some(&pv), Some(&pu)) = (at.get(&(v, level)), at.get(&(u, level))) {
                    arrows.push((pv, pu, m));
                }
                if let (Some(&pu), Some(&pv)) = (at.get(&(u, level)), at.get(&(v, level + 1))) {
                    arrows.push((pu, pv, m));
                }
            }
        }
    }
    arrows.sort_unstable();
    let closed = (0..n).all(|v| vertices.iter().any(|x| x.vertex == v && x.injective));
    Ok(Component {
        vertex_names: names,
        vertices,
        arrows,
        closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar_shadow::path_algebra;
    use crate::quiver_algebra::Quiver;

    #[test]
    fn a2_closes_with_three_modules() {
        let q = Quiver::from_spec(&["1", "2"], &[("a", "1", "2", 0)]).unwrap();
        let c = knit_component(&path_algebra(&q).unwrap(), 5).unwrap();
        assert!(c.closed);
        assert_eq!(c.vertices.len(), 3);
        assert!(c.mesh_additive());
    }
}
