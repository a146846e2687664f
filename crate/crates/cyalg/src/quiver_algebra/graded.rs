use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::path::{NCPoly, Path};
use super::presentation::GradedQuiverPresentation;
use super::quiver::{Quiver, VertexId};
use super::rewriting::{truncated_rewriting, RewritingSystem};
use super::QuiverError;
use crate::linalg::SparseVec;

/// Normal-form basis of `e_from (kQ/I)_degree e_to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPieceBasis {
    pub degree: i64,
    pub from: VertexId,
    pub to: VertexId,
    pub paths: Vec<Path>,
}

impl GradedPieceBasis {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }
}

type PieceKey = (i64, VertexId, VertexId);

/// All normal-form paths of order weight at most `cap`, bucketed by
/// (degree, source, target), with reduction and coordinates.
#[derive(Clone, Debug)]
pub struct GradedModel {
    pres: GradedQuiverPresentation,
    system: RewritingSystem,
    pieces: BTreeMap<PieceKey, Vec<Path>>,
    index: HashMap<Path, usize>,
}

/// Presentation whose relations are homogeneous for the path order weights.
/// Falls back to weights `-degree` when every arrow has negative degree.
fn weight_homogeneous(
    pres: &GradedQuiverPresentation,
) -> Result<GradedQuiverPresentation, QuiverError> {
    if pres.relations.iter().all(|r| r.is_weight_homogeneous()) {
        return Ok(pres.clone());
    }
    if pres.is_negatively_graded() {
        let w = pres
            .quiver
            .arrows()
            .iter()
            .map(|a| (-a.degree) as u32)
            .collect();
        let p = pres.with_weights(w)?;
        if p.relations.iter().all(|r| r.is_weight_homogeneous()) {
            return Ok(p);
        }
    }
    Err(QuiverError::NotWeightHomogeneous)
}

impl GradedModel {
    pub fn new(pres: &GradedQuiverPresentation, cap: u32) -> Result<Self, QuiverError> {
        let pres = weight_homogeneous(pres)?;
        let system = truncated_rewriting(&pres, cap)?;
        let q = &pres.quiver;
        let mut pieces: BTreeMap<PieceKey, Vec<Path>> = BTreeMap::new();
        let mut frontier: Vec<Path> = q.vertices().map(Path::lazy).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in frontier {
                for a in q.arrows_from(p.target()) {
                    if p.weight() + q.weight(a) > cap {
                        continue;
                    }
                    let ext = p.compose(&Path::arrow(q, a)).expect("arrow leaves target");
                    if system.suffix_is_normal(ext.arrows()) {
                        next.push(ext);
                    }
                }
                pieces
                    .entry((p.degree(q), p.source(), p.target()))
                    .or_default()
                    .push(p);
            }
            frontier = next;
        }
        let mut index = HashMap::new();
        for list in pieces.values_mut() {
            list.sort();
            for (i, p) in list.iter().enumerate() {
                index.insert(p.clone(), i);
            }
        }
        Ok(Self {
            pres,
            system,
            pieces,
            index,
        })
    }

    pub fn presentation(&self) -> &GradedQuiverPresentation {
        &self.pres
    }

    pub fn quiver(&self) -> &Quiver {
        &self.pres.quiver
    }

    pub fn system(&self) -> &RewritingSystem {
        &self.system
    }

    pub fn cap(&self) -> u32 {
        self.system.cap()
    }

    pub fn piece(&self, degree: i64, from: VertexId, to: VertexId) -> &[Path] {
        self.pieces
            .get(&(degree, from, to))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn dim(&self, degree: i64, from: VertexId, to: VertexId) -> usize {
        self.piece(degree, from, to).len()
    }

    /// Total dimension of the degree piece over all vertex pairs.
    pub fn total_dim(&self, degree: i64) -> usize {
        self.pieces
            .range((degree, VertexId(0), VertexId(0))..)
            .take_while(|(k, _)| k.0 == degree)
            .map(|(_, v)| v.len())
            .sum()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        let mut ds: Vec<i64> = self.pieces.keys().map(|k| k.0).collect();
        ds.dedup();
        ds.into_iter()
    }

    /// Position of a normal-form path inside its piece.
    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn reduce(&self, f: &NCPoly) -> NCPoly {
        self.system.reduce(f)
    }

    /// Reduced product of two normal forms.
    pub fn product(&self, p: &Path, q: &Path) -> NCPoly {
        match p.compose(q) {
            Some(pq) => self.system.reduce_path(&pq),
            None => NCPoly::zero(),
        }
    }

    /// Coordinates of a reduced polynomial in its piece basis. Terms outside
    /// the enumerated pieces (weight above the cap) are dropped; callers stay
    /// within the cap.
    pub fn coords(&self, f: &NCPoly) -> SparseVec {
        SparseVec::from_entries(
            f.terms()
                .filter_map(|(p, c)| self.index_of(p).map(|i| (i, c.clone())))
                .collect(),
        )
    }

    pub fn basis(&self, degree: i64, from: VertexId, to: VertexId) -> GradedPieceBasis {
        GradedPieceBasis {
            degree,
            from,
            to,
            paths: self.piece(degree, from, to).to_vec(),
        }
    }

    /// Per-degree table `degree -> [[dim e_i R_w e_j]]` for degrees in
    /// `lo..=hi`.
    pub fn dimension_table(&self, lo: i64, hi: i64) -> DimensionTable {
        let n = self.quiver().num_vertices();
        let rows = (lo..=hi)
            .rev()
            .map(|w| {
                let m = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| self.dim(w, VertexId(i as u32), VertexId(j as u32)))
                            .collect()
                    })
                    .collect();
                (w, m)
            })
            .collect();
        DimensionTable {
            vertices: self.quiver().vertex_names().to_vec(),
            rows,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionTable {
    pub vertices: Vec<String>,
    pub rows: Vec<(i64, Vec<Vec<usize>>)>,
}

/// Cap that provably captures every path of `degree`: possible when no
/// arrow is positive and the degree-0 arrows form no oriented cycle, so a
/// path of degree `d` has at most `|d|` negative arrows separated by
/// degree-0 runs of bounded weight. `None` otherwise.
pub(crate) fn sufficient_cap(pres: &GradedQuiverPresentation, degree: i64) -> Option<u32> {
    if pres.has_positive_arrows() || degree > 0 {
        return None;
    }
    let q = &pres.quiver;
    let w = (-degree) as u64;
    let neg = q
        .arrow_ids()
        .filter(|&a| q.arrow(a).degree < 0)
        .map(|a| q.weight(a) as u64 * w / (-q.arrow(a).degree) as u64)
        .max()
        .unwrap_or(0);
    let run = heaviest_degree_zero_path(q)?;
    u32::try_from((w + 1) * run + neg).ok()
}

/// Largest weight of a path of degree-0 arrows, or `None` on a cycle.
fn heaviest_degree_zero_path(q: &Quiver) -> Option<u64> {
    let zero: Vec<_> = q.arrow_ids().filter(|&a| q.arrow(a).degree == 0).collect();
    if zero.is_empty() {
        return Some(0);
    }
    let n = q.num_vertices();
    let mut indeg = vec![0usize; n];
    for &a in &zero {
        indeg[q.arrow(a).target.idx()] += 1;
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &a in &zero {
            if q.arrow(a).source.idx() == v {
                let t = q.arrow(a).target.idx();
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    order.push(t);
                }
            }
        }
        i += 1;
    }
    if order.len() < n {
        return None;
    }
    let mut best = vec![0u64; n];
    for &v in order.iter().rev() {
        for &a in &zero {
            if q.arrow(a).source.idx() == v {
                let t = q.arrow(a).target.idx();
                best[v] = best[v].max(q.weight(a) as u64 + best[t]);
            }
        }
    }
    best.into_iter().max()
}

impl GradedModel {
    /// Model whose pieces in degrees `lo..=hi` are exact: either the cap
    /// provably suffices or the dimensions agree with those at `cap + 2`.
    pub fn stable(
        pres: &GradedQuiverPresentation,
        cap: u32,
        lo: i64,
        hi: i64,
    ) -> Result<Self, QuiverError> {
        let model = GradedModel::new(pres, cap)?;
        let exact =
            (lo..=hi).all(|w| sufficient_cap(model.presentation(), w).is_some_and(|c| c <= cap));
        if exact {
            return Ok(model);
        }
        let larger = GradedModel::new(pres, cap + 2)?;
        let n = model.quiver().num_vertices() as u32;
        for w in (lo..=hi).rev() {
            for i in 0..n {
                for j in 0..n {
                    let (i, j) = (VertexId(i), VertexId(j));
                    let (d1, d2) = (model.dim(w, i, j), larger.dim(w, i, j));
                    if d1 != d2 {
                        return Err(QuiverError::NonStabilizing {
                            degree: w,
                            at_cap: d1,
                            at_larger: d2,
                        });
                    }
                }
            }
        }
        Ok(model)
    }
}

impl GradedModel {
    /// Model exact in degrees `lo..=0`: at `cap` when given (checked as in
    /// [`GradedModel::stable`]), else at a cap that provably suffices for a
    /// negatively graded presentation.
    pub fn exact_down_to(
        pres: &GradedQuiverPresentation,
        lo: i64,
        cap: Option<u32>,
    ) -> Result<Self, QuiverError> {
        match cap {
            Some(c) => GradedModel::stable(pres, c, lo.min(0), 0),
            None => {
                let p = weight_homogeneous(pres)?;
                match sufficient_cap(&p, lo.min(0)) {
                    Some(c) => GradedModel::new(pres, c.max(p.max_relation_weight())),
                    None => GradedModel::stable(
                        pres,
                        p.max_relation_weight().max(2 * (1 - lo.min(0)) as u32),
                        lo.min(0),
                        0,
                    ),
                }
            }
        }
    }
}

/// Dimension and basis of `e_from R_degree e_to`. Unless `cap` provably
/// suffices, the computation is repeated at `cap + 2` and must agree.
pub fn graded_dimension(
    pres: &GradedQuiverPresentation,
    degree: i64,
    from: VertexId,
    to: VertexId,
    cap: u32,
) -> Result<(usize, GradedPieceBasis), QuiverError> {
    let model = GradedModel::new(pres, cap)?;
    let basis = model.basis(degree, from, to);
    let exact = sufficient_cap(model.presentation(), degree).is_some_and(|c| c <= cap);
    if !exact {
        let larger = GradedModel::new(pres, cap + 2)?;
        let d2 = larger.dim(degree, from, to);
        if d2 != basis.dim() {
            return Err(QuiverError::NonStabilizing {
                degree,
                at_cap: basis.dim(),
                at_larger: d2,
            });
        }
    }
    Ok((basis.dim(), basis))
}
