//! Preprojective algebras of acyclic quivers, the bimodule `U = Ext^1(DA, A)`
//! for `A = kQ`, the block algebras built from them, and the explicit
//! presentation by the quiver `Q̂`.

use serde::Serialize;
use thiserror::Error;

use crate::abc::{build_tilde, AbcData, AbcError, FdAlgebra, FdBimodule, Tilde, TildePart};
use crate::findim::{radical_layers, FindimError, Presented};
use num::One;

use crate::linalg::{SparseVec, Q};
use crate::quiver_algebra::{
    compare_ideals, relations_from_structure, Arrow, ArrowId, GradedModel,
    GradedQuiverPresentation, IdealComparison, NCPoly, Path, Quiver, QuiverError, VertexId,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreprojError {
    #[error("quiver has an oriented cycle")]
    Cyclic,
    #[error("n must be positive")]
    ZeroBlocks,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Abc(#[from] AbcError),
    #[error(transparent)]
    Findim(#[from] FindimError),
}

/// Name of the reverse arrow `a*`.
pub fn star_name(a: &str) -> String {
    format!("{a}'")
}

/// Cap that holds every path of star-degree at most 1 in `Π_Q`.
pub fn default_cap(q: &Quiver) -> u32 {
    2 * q.num_vertices() as u32 + 2
}

fn check_acyclic(q: &Quiver) -> Result<(), PreprojError> {
    if q.is_acyclic() {
        Ok(())
    } else {
        Err(PreprojError::Cyclic)
    }
}

/// Double quiver of `q` (arrows of `q` keep their ids, `a*` follow in the
/// same order) with one mesh relation `Σ_{s(a)=i} a a* - Σ_{t(a)=i} a* a`
/// per vertex. `a` has degree 0 and `a*` degree -1.
pub fn preprojective_presentation(q: &Quiver) -> Result<GradedQuiverPresentation, PreprojError> {
    check_acyclic(q)?;
    let m = q.num_arrows() as u32;
    let mut arrows: Vec<Arrow> = q
        .arrows()
        .iter()
        .map(|a| Arrow {
            degree: 0,
            ..a.clone()
        })
        .collect();
    for a in q.arrows() {
        arrows.push(Arrow {
            name: star_name(&a.name),
            source: a.target,
            target: a.source,
            degree: -1,
        });
    }
    let dq = Quiver::new(q.vertex_names().to_vec(), arrows)?;
    let mut mesh = vec![NCPoly::zero(); q.num_vertices()];
    for a in q.arrow_ids() {
        let star = ArrowId(a.0 + m);
        let (x, xs) = (Path::arrow(&dq, a), Path::arrow(&dq, star));
        let ar = q.arrow(a);
        mesh[ar.source.idx()].add_term(Q::one(), x.compose(&xs).expect("a a* composes"));
        mesh[ar.target.idx()].add_term(-Q::one(), xs.compose(&x).expect("a* a composes"));
    }
    let rels = mesh.into_iter().filter(|r| !r.is_zero()).collect();
    Ok(GradedQuiverPresentation::new(dq, rels)?)
}

/// `A = kQ` and `U` as the star-degree 0 and 1 pieces of `Π_Q`.
pub fn ext_bimodule(q: &Quiver, cap: u32) -> Result<AbcData, PreprojError> {
    let pi = preprojective_presentation(q)?;
    Ok(AbcData::new(&pi, 1, cap)?)
}

/// The block algebra over `kQ` with `n` diagonal copies, copies of `kQ` on
/// the superdiagonal and `U` in the corner.
#[derive(Clone, Debug)]
pub struct Corpi {
    pub base: Quiver,
    pub n: usize,
    pub data: AbcData,
    pub tilde: Tilde,
}

impl Corpi {
    #[allow(clippy::misnamed_getters)]
    pub fn algebra(&self) -> &FdAlgebra {
        &self.tilde.extension
    }

    pub fn bimodule(&self) -> &FdBimodule {
        &self.data.bimodule
    }

    /// Basis index of a path of `Π_Q` among the elements of `A` or `U`.
    fn elem_index(&self, in_u: bool, p: &Path) -> usize {
        let elems = if in_u {
            self.data.u_elements()
        } else {
            self.data.a_elements()
        };
        elems
            .iter()
            .position(|e| &e.path == p)
            .expect("path lies in the computed piece")
    }

    /// Image of the basis element of `A` at `p` in block `l` of `Ã`.
    fn block_elem(&self, l: usize, p: &Path) -> usize {
        l * self.data.algebra.dim() + self.elem_index(false, p)
    }

    fn tilde_index(&self, part: TildePart) -> usize {
        let pos = self
            .tilde
            .parts
            .iter()
            .position(|x| *x == part)
            .expect("part exists");
        self.tilde.algebra.dim() + pos
    }
}

pub fn corpi_b(q: &Quiver, n: usize, cap: u32) -> Result<Corpi, PreprojError> {
    if n == 0 {
        return Err(PreprojError::ZeroBlocks);
    }
    let data = ext_bimodule(q, cap)?;
    let tilde = build_tilde(&data.algebra, &data.bimodule, n)?;
    Ok(Corpi {
        base: q.clone(),
        n,
        data,
        tilde,
    })
}

/// Kind of an arrow of `Q̂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QhatArrow {
    /// `a^l : (i, l) -> (j, l)`.
    Level { arrow: ArrowId, level: usize },
    /// `v_i^l : (i, l + 1) -> (i, l)`.
    Down { vertex: VertexId, level: usize },
    /// `a* : (j, 0) -> (i, n - 1)`.
    Star { arrow: ArrowId },
}

/// Presentation by `Q̂`; levels are numbered from 0.
#[derive(Clone, Debug)]
pub struct Qhat {
    pub n: usize,
    pub presentation: GradedQuiverPresentation,
    pub arrows: Vec<QhatArrow>,
}

/// How the `n = 1` square-zero relations are written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StarProducts {
    /// `a* b c* = 0` for arrows `b` only.
    ThroughArrows,
    /// Also `a* c* = 0` whenever the two stars compose.
    ThroughArrowsAndVertices,
}

fn qhat_vertex(q: &Quiver, i: VertexId, l: usize) -> VertexId {
    VertexId((l * q.num_vertices() + i.idx()) as u32)
}

/// `Q̂` with the mesh relation joining the first and last level and the
/// square-zero relations; `StarProducts::ThroughArrowsAndVertices` is the
/// variant that presents the block algebra for `n = 1`.
pub fn qhat_presentation(q: &Quiver, n: usize, stars: StarProducts) -> Result<Qhat, PreprojError> {
    check_acyclic(q)?;
    if n == 0 {
        return Err(PreprojError::ZeroBlocks);
    }
    let nv = q.num_vertices();
    let vname = |i: VertexId, l: usize| {
        if n == 1 {
            q.vertex_name(i).to_string()
        } else {
            format!("{}@{l}", q.vertex_name(i))
        }
    };
    let vertices: Vec<String> = (0..n)
        .flat_map(|l| q.vertices().map(move |i| (i, l)))
        .map(|(i, l)| vname(i, l))
        .collect();
    let mut arrows = Vec::new();
    let mut kinds = Vec::new();
    for l in 0..n {
        for a in q.arrow_ids() {
            let ar = q.arrow(a);
            let name = if n == 1 {
                ar.name.clone()
            } else {
                format!("{}@{l}", ar.name)
            };
            arrows.push(Arrow {
                name,
                source: qhat_vertex(q, ar.source, l),
                target: qhat_vertex(q, ar.target, l),
                degree: 0,
            });
            kinds.push(QhatArrow::Level { arrow: a, level: l });
        }
    }
    for l in 0..n.saturating_sub(1) {
        for i in q.vertices() {
            arrows.push(Arrow {
                name: format!("v_{}@{l}", q.vertex_name(i)),
                source: qhat_vertex(q, i, l + 1),
                target: qhat_vertex(q, i, l),
                degree: -1,
            });
            kinds.push(QhatArrow::Down {
                vertex: i,
                level: l,
            });
        }
    }
    for a in q.arrow_ids() {
        let ar = q.arrow(a);
        arrows.push(Arrow {
            name: star_name(&ar.name),
            source: qhat_vertex(q, ar.target, 0),
            target: qhat_vertex(q, ar.source, n - 1),
            degree: -1,
        });
        kinds.push(QhatArrow::Star { arrow: a });
    }
    let hq = Quiver::new(vertices, arrows)?;
    let find =
        |k: QhatArrow| ArrowId(kinds.iter().position(|x| *x == k).expect("arrow exists") as u32);
    let path = |ks: &[QhatArrow]| {
        let ids: Vec<ArrowId> = ks.iter().map(|k| find(*k)).collect();
        Path::from_arrows(&hq, &ids).expect("composable")
    };
    let mut rels = Vec::new();
    // Level arrows commute with the down arrows.
    for l in 0..n.saturating_sub(1) {
        for a in q.arrow_ids() {
            let ar = q.arrow(a);
            let lhs = path(&[
                QhatArrow::Down {
                    vertex: ar.source,
                    level: l,
                },
                QhatArrow::Level { arrow: a, level: l },
            ]);
            let rhs = path(&[
                QhatArrow::Level {
                    arrow: a,
                    level: l + 1,
                },
                QhatArrow::Down {
                    vertex: ar.target,
                    level: l,
                },
            ]);
            rels.push(NCPoly::from_terms([(Q::one(), lhs), (-Q::one(), rhs)]));
        }
    }
    // Mesh relation from the first level to the last.
    let mut mesh = vec![NCPoly::zero(); nv];
    for a in q.arrow_ids() {
        let ar = q.arrow(a);
        let star = QhatArrow::Star { arrow: a };
        mesh[ar.source.idx()].add_term(
            Q::one(),
            path(&[QhatArrow::Level { arrow: a, level: 0 }, star]),
        );
        mesh[ar.target.idx()].add_term(
            -Q::one(),
            path(&[
                star,
                QhatArrow::Level {
                    arrow: a,
                    level: n - 1,
                },
            ]),
        );
    }
    rels.extend(mesh.into_iter().filter(|r| !r.is_zero()));
    // Square-zero relations.
    if n >= 2 {
        for l in 1..n - 1 {
            for i in q.vertices() {
                rels.push(NCPoly::from_path(path(&[
                    QhatArrow::Down {
                        vertex: i,
                        level: l,
                    },
                    QhatArrow::Down {
                        vertex: i,
                        level: l - 1,
                    },
                ])));
            }
        }
        for a in q.arrow_ids() {
            let ar = q.arrow(a);
            let star = QhatArrow::Star { arrow: a };
            rels.push(NCPoly::from_path(path(&[
                QhatArrow::Down {
                    vertex: ar.target,
                    level: 0,
                },
                star,
            ])));
            rels.push(NCPoly::from_path(path(&[
                star,
                QhatArrow::Down {
                    vertex: ar.source,
                    level: n - 2,
                },
            ])));
        }
    } else {
        for c in q.arrow_ids() {
            for a in q.arrow_ids() {
                let (ca, aa) = (q.arrow(c), q.arrow(a));
                let (cs, a_s) = (QhatArrow::Star { arrow: c }, QhatArrow::Star { arrow: a });
                if stars == StarProducts::ThroughArrowsAndVertices && ca.source == aa.target {
                    rels.push(NCPoly::from_path(path(&[cs, a_s])));
                }
                for b in q.arrow_ids() {
                    let ba = q.arrow(b);
                    if ca.source == ba.source && ba.target == aa.target {
                        rels.push(NCPoly::from_path(path(&[
                            cs,
                            QhatArrow::Level { arrow: b, level: 0 },
                            a_s,
                        ])));
                    }
                }
            }
        }
    }
    let presentation = GradedQuiverPresentation::new(hq, rels)?;
    Ok(Qhat {
        n,
        presentation,
        arrows: kinds,
    })
}

impl Qhat {
    /// Images of the vertices and arrows of `Q̂` in the block algebra:
    /// level arrows go to `kQ` in their block, down arrows to idempotents on
    /// the superdiagonal, stars to `u(a*) = a*` in the corner.
    pub fn images<'a>(&self, corpi: &'a Corpi) -> Presented<'a> {
        let q = &corpi.base;
        let pi = corpi.data.model.quiver();
        let m = q.num_arrows() as u32;
        let b = corpi.algebra();
        let vertex_images = b.idempotents().to_vec();
        let arrow_images = self
            .arrows
            .iter()
            .map(|k| match *k {
                QhatArrow::Level { arrow, level } => {
                    SparseVec::unit(corpi.block_elem(level, &Path::arrow(pi, arrow)))
                }
                QhatArrow::Down { vertex, level } => {
                    let elem = corpi.elem_index(false, &Path::lazy(vertex));
                    SparseVec::unit(corpi.tilde_index(TildePart::Super { block: level, elem }))
                }
                QhatArrow::Star { arrow } => {
                    let elem = corpi.elem_index(true, &Path::arrow(pi, ArrowId(arrow.0 + m)));
                    SparseVec::unit(corpi.tilde_index(TildePart::Corner { elem }))
                }
            })
            .collect();
        Presented {
            algebra: b,
            vertex_images,
            arrow_images,
        }
    }

    /// `[length][i][j]`: normal forms of each path length between vertices.
    pub fn length_table(&self, max_len: u32) -> Result<Vec<Vec<Vec<usize>>>, PreprojError> {
        let hq = &self.presentation.quiver;
        let flat: Vec<Arrow> = hq
            .arrows()
            .iter()
            .map(|a| Arrow {
                degree: -1,
                ..a.clone()
            })
            .collect();
        let fq = Quiver::new(hq.vertex_names().to_vec(), flat)?;
        let pres = GradedQuiverPresentation::new(fq, self.presentation.relations.clone())?;
        let model = GradedModel::stable(&pres, max_len, -(max_len as i64), 0)?;
        let nv = hq.num_vertices();
        Ok((0..=max_len as i64)
            .map(|l| {
                (0..nv)
                    .map(|i| {
                        (0..nv)
                            .map(|j| model.dim(-l, VertexId(i as u32), VertexId(j as u32)))
                            .collect()
                    })
                    .collect()
            })
            .collect())
    }
}

/// Side-by-side comparison of `Q̂` and the block algebra.
#[derive(Clone, Debug)]
pub struct QhatComparison {
    pub qhat_table: Vec<Vec<Vec<usize>>>,
    pub block_table: Vec<Vec<Vec<usize>>>,
    pub ideals: IdealComparison,
}

impl QhatComparison {
    pub fn tables_match(&self) -> bool {
        self.qhat_table == self.block_table
    }

    pub fn holds(&self) -> bool {
        self.tables_match() && self.ideals.agree()
    }
}

/// Compares dimension tables by path length (radical layers on the block
/// side) up to `max_len`, and reduces each relation set modulo the other.
pub fn compare_qhat(
    qhat: &Qhat,
    corpi: &Corpi,
    max_len: u32,
) -> Result<QhatComparison, PreprojError> {
    let qhat_table = qhat.length_table(max_len)?;
    let mut block_table = radical_layers(corpi.algebra())?;
    let nv = qhat.presentation.quiver.num_vertices();
    block_table.resize(max_len as usize + 1, vec![vec![0; nv]; nv]);
    let images = qhat.images(corpi);
    let hq = &qhat.presentation.quiver;
    let found = relations_from_structure(&images, hq, max_len as usize)?;
    let ideals = compare_ideals(hq, &qhat.presentation.relations, &found, max_len)?;
    Ok(QhatComparison {
        qhat_table,
        block_table,
        ideals,
    })
}
