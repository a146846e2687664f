use std::collections::HashMap;

use super::algebra::{trivial_extension, FdAlgebra, FdBimodule};
use super::AbcError;
use crate::linalg::SparseVec;
use crate::quiver_algebra::{CyData, GradedModel, GradedQuiverPresentation, Path, VertexId};

/// `A`, `U` and the graded model of `R` they were read off from.
#[derive(Clone, Debug)]
pub struct AbcData {
    pub a: usize,
    pub algebra: FdAlgebra,
    pub bimodule: FdBimodule,
    pub model: GradedModel,
    a_elems: Vec<Elem>,
    u_elems: Vec<Elem>,
}

/// Basis element `[from -> to; path]` of `A` or `U`: a path of `R` placed
/// between matrix slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    pub from: usize,
    pub to: usize,
    pub path: Path,
}

/// Default cap `2(a + 2)`.
pub fn default_cap(a: usize) -> u32 {
    2 * (a as u32 + 2)
}

fn with_slot(base: &str, slot: usize) -> String {
    if base.ends_with(|c: char| c.is_ascii_digit()) {
        format!("{base}_{slot}")
    } else {
        format!("{base}{slot}")
    }
}

impl AbcData {
    pub fn new(pres: &GradedQuiverPresentation, a: usize, cap: u32) -> Result<Self, AbcError> {
        if a == 0 {
            return Err(AbcError::InvalidParameter("a must be positive".into()));
        }
        if let Some(ar) = pres.quiver.arrows().iter().find(|ar| ar.degree > 0) {
            return Err(AbcError::PositiveDegree(ar.name.clone()));
        }
        let model = GradedModel::stable(pres, cap, -(a as i64), 0)?;
        let q = model.quiver().clone();
        let nv = q.num_vertices();
        let single = nv == 1;
        let pname = |p: &Path| -> String {
            if p.is_lazy() {
                format!("e_{}", q.vertex_name(p.source()))
            } else {
                p.arrows()
                    .iter()
                    .map(|x| q.arrow(*x).name.as_str())
                    .collect::<Vec<_>>()
                    .join("_")
            }
        };
        let slot_vertex_name = |j: usize, r: VertexId| -> String {
            match (a, single) {
                (1, _) => q.vertex_name(r).to_string(),
                (_, true) => j.to_string(),
                _ => format!("{}_{j}", q.vertex_name(r)),
            }
        };

        let mut a_elems = Vec::new();
        let mut a_labels = Vec::new();
        let mut a_names = Vec::new();
        let mut a_grading = Vec::new();
        let mut u_elems = Vec::new();
        let mut u_labels = Vec::new();
        let mut u_names = Vec::new();
        let vs: Vec<VertexId> = q.vertices().collect();
        for j in 0..a {
            for i in 0..a {
                for &r in &vs {
                    for &s in &vs {
                        if j <= i {
                            let deg = -((i - j) as i64);
                            for p in model.piece(deg, r, s) {
                                a_labels.push(format!("a({j}>{i}):{}", p.display(&q)));
                                a_names.push(if a == 1 {
                                    pname(p)
                                } else {
                                    with_slot(&pname(p), j)
                                });
                                a_grading.push(deg);
                                a_elems.push(Elem {
                                    from: j,
                                    to: i,
                                    path: p.clone(),
                                });
                            }
                        }
                        if j <= i + 1 {
                            let deg = -((i + 1 - j) as i64);
                            for p in model.piece(deg, r, s) {
                                u_labels.push(format!("u({j}>{i}):{}", p.display(&q)));
                                let nm = match (a, p.is_lazy(), single) {
                                    (1, _, _) => pname(p),
                                    (_, true, true) => format!("u{j}"),
                                    (_, true, false) => format!("u{j}_{}", q.vertex_name(r)),
                                    (_, false, _) => format!("u{j}_{}", pname(p)),
                                };
                                u_names.push(nm);
                                u_elems.push(Elem {
                                    from: j,
                                    to: i,
                                    path: p.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
        let a_index: HashMap<&Elem, usize> =
            a_elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let u_index: HashMap<&Elem, usize> =
            u_elems.iter().enumerate().map(|(i, e)| (e, i)).collect();

        // Product of placed paths, expressed in the basis given by `index`.
        let place = |from: usize,
                     to: usize,
                     x: &Path,
                     y: &Path,
                     index: &HashMap<&Elem, usize>|
         -> Result<SparseVec, AbcError> {
            let prod = model.product(x, y);
            let mut entries = Vec::new();
            for (p, c) in prod.terms() {
                let e = Elem {
                    from,
                    to,
                    path: p.clone(),
                };
                let k = index
                    .get(&e)
                    .ok_or_else(|| AbcError::Truncated(p.display(&q)))?;
                entries.push((*k, c.clone()));
            }
            Ok(SparseVec::from_entries(entries))
        };

        let na = a_elems.len();
        let mut table = vec![vec![SparseVec::new(); na]; na];
        for (x, ex) in a_elems.iter().enumerate() {
            for (y, ey) in a_elems.iter().enumerate() {
                if ex.to == ey.from {
                    table[x][y] = place(ex.from, ey.to, &ex.path, &ey.path, &a_index)?;
                }
            }
        }
        let mut idem = Vec::new();
        let mut idem_names = Vec::new();
        for j in 0..a {
            for &r in &vs {
                let e = Elem {
                    from: j,
                    to: j,
                    path: Path::lazy(r),
                };
                idem.push(SparseVec::unit(a_index[&e]));
                idem_names.push(slot_vertex_name(j, r));
            }
        }
        let algebra =
            FdAlgebra::new(a_labels, a_names, table, idem, idem_names)?.with_grading(a_grading);

        let nu = u_elems.len();
        let mut left = vec![vec![SparseVec::new(); nu]; na];
        let mut right = vec![vec![SparseVec::new(); na]; nu];
        for (x, ex) in a_elems.iter().enumerate() {
            for (u, eu) in u_elems.iter().enumerate() {
                if ex.to == eu.from {
                    left[x][u] = place(ex.from, eu.to, &ex.path, &eu.path, &u_index)?;
                }
                if eu.to == ex.from {
                    right[u][x] = place(eu.from, ex.to, &eu.path, &ex.path, &u_index)?;
                }
            }
        }
        let bimodule = FdBimodule::new(u_labels, u_names, left, right);
        Ok(Self {
            a,
            algebra,
            bimodule,
            model,
            a_elems,
            u_elems,
        })
    }

    pub fn a_elements(&self) -> &[Elem] {
        &self.a_elems
    }

    pub fn u_elements(&self) -> &[Elem] {
        &self.u_elems
    }

    pub fn trivial_extension(&self) -> FdAlgebra {
        build_b(&self.algebra, &self.bimodule)
    }
}

pub fn build_a(pres: &GradedQuiverPresentation, a: usize, cap: u32) -> Result<FdAlgebra, AbcError> {
    Ok(AbcData::new(pres, a, cap)?.algebra)
}

pub fn build_u(
    pres: &GradedQuiverPresentation,
    a: usize,
    cap: u32,
) -> Result<FdBimodule, AbcError> {
    Ok(AbcData::new(pres, a, cap)?.bimodule)
}

/// `B = A ⊕ U` with `(x, u)(y, v) = (xy, xv + uy)`.
pub fn build_b(a: &FdAlgebra, u: &FdBimodule) -> FdAlgebra {
    trivial_extension(a, u)
}

/// Same relations with every arrow degree multiplied by `n`; the declared
/// a-invariant scales with it.
pub fn multiply_grading(
    pres: &GradedQuiverPresentation,
    n: u32,
) -> Result<GradedQuiverPresentation, AbcError> {
    if n == 0 {
        return Err(AbcError::InvalidParameter(
            "grading multiplier must be positive".into(),
        ));
    }
    let mut p = pres.clone();
    p.quiver = pres.quiver.scale_degrees(n as i64);
    p.cy = pres.cy.map(|c| CyData {
        dimension: c.dimension,
        a_invariant: c.a_invariant * n as i64,
    });
    Ok(p)
}

/// `dim Hom(T, T[m])` in the cluster category, read as `dim R_m`; only
/// claimed for `-(d + a) + 1 <= m <= 0`.
pub fn cluster_hom_shadow(
    pres: &GradedQuiverPresentation,
    m: i64,
    cap: u32,
) -> Result<usize, AbcError> {
    let cy = pres.cy.ok_or(AbcError::MissingCy)?;
    let d = cy.dimension as i64 - 1;
    let lo = -(d + cy.a_invariant) + 1;
    if m < lo || m > 0 {
        return Err(AbcError::WindowViolation {
            index: m,
            lo,
            hi: 0,
        });
    }
    let model = GradedModel::stable(pres, cap, m, m)?;
    Ok(model.total_dim(m))
}
