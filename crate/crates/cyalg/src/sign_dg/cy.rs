use std::collections::{BTreeMap, HashMap, VecDeque};
use std::rc::Rc;

use num::{One, Zero};
use serde::Serialize;

use super::complex::{BimoduleComplex, Setting};
use super::transport::{dg_transport, dualize};
use super::{SignDgError, TwistSpec};
use crate::linalg::{fmt_q, kernel, sign_pow, Echelon, SparseVec, Q};
use crate::quiver_algebra::{
    ArrowId, GradedModel, GradedQuiverPresentation, Path, QuiverError, VertexId,
};

/// Cohomology of a complex in one bidegree, split by outer vertices:
/// `dims[x][y] = dim e_x H^position_degree e_y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub position: i64,
    pub degree: i64,
    pub dims: Vec<Vec<usize>>,
    pub expected: Option<Vec<Vec<usize>>>,
}

impl CohomologyRow {
    pub fn total(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    pub fn matches(&self) -> bool {
        self.expected.as_ref().is_none_or(|e| *e == self.dims)
    }
}

/// Measured scalar `r` with `h_i x = r x h_j` in cohomology, next to the
/// scalar of the claimed twist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistRatio {
    pub arrow: String,
    pub expected: String,
    pub measured: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub total_shift: i64,
    pub position: i64,
    pub a_invariant: i64,
    /// R-degrees `lo..=hi` examined.
    pub window: (i64, i64),
    pub rows: Vec<CohomologyRow>,
    pub dimensions_match: bool,
    pub ratios: Vec<TwistRatio>,
    /// Some rescaling of the generators turns the measured ratios into the
    /// claimed twist.
    pub twist_matches: bool,
    /// `r ↦ r h` is bijective onto the cohomology in every window degree.
    pub action_free: bool,
    pub pass: bool,
    pub first_mismatch: Option<String>,
}

/// R-degrees `-(a + 4) ..= 0`.
pub fn default_window(pres: &GradedQuiverPresentation) -> Result<(i64, i64), SignDgError> {
    let a = pres.cy.ok_or(SignDgError::MissingCy)?.a_invariant;
    Ok((-(a.max(0) + 4), 0))
}

type Gen = (usize, Path, Path);

/// Basis `{p g q}` of one bidegree and outer vertex pair of a term.
#[derive(Debug, Default)]
struct Space {
    basis: Vec<Gen>,
    index: HashMap<Gen, usize>,
}

impl Space {
    fn push(&mut self, g: Gen) {
        self.index.insert(g.clone(), self.basis.len());
        self.basis.push(g);
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Bidegree-wise linear algebra on a complex of free bimodules, optionally
/// augmented by `R` after its last term.
struct Engine<'a> {
    c: &'a BimoduleComplex,
    model: GradedModel,
    augmented: bool,
    cache: HashMap<(usize, i64, VertexId, VertexId), Rc<Space>>,
}

fn map_quiver_err(e: QuiverError) -> SignDgError {
    match e {
        QuiverError::NonStabilizing { degree, .. } => SignDgError::WindowTooSmall {
            degrees: vec![degree],
        },
        e => SignDgError::Quiver(e),
    }
}

impl<'a> Engine<'a> {
    /// Model exact for internal degrees of the complex in `lo..=hi`.
    fn new(
        c: &'a BimoduleComplex,
        lo: i64,
        augmented: bool,
        cap: Option<u32>,
    ) -> Result<Self, SignDgError> {
        let q = c.quiver();
        if let Some(a) = q.arrows().iter().find(|a| a.degree > 0) {
            return Err(SignDgError::PositiveDegree(a.name.clone()));
        }
        let gmax = c
            .terms
            .iter()
            .flatten()
            .map(|g| g.generator_degree())
            .max()
            .unwrap_or(0);
        let model = GradedModel::exact_down_to(&c.presentation, (lo - gmax).min(lo), cap)
            .map_err(map_quiver_err)?;
        Ok(Self {
            c,
            model,
            augmented,
            cache: HashMap::new(),
        })
    }

    fn num_terms(&self) -> usize {
        self.c.terms.len() + usize::from(self.augmented)
    }

    fn is_r(&self, k: usize) -> bool {
        self.augmented && k == self.c.terms.len()
    }

    fn space(&mut self, k: usize, w: i64, x: VertexId, y: VertexId) -> Rc<Space> {
        if let Some(s) = self.cache.get(&(k, w, x, y)) {
            return s.clone();
        }
        let mut sp = Space::default();
        if self.is_r(k) {
            for p in self.model.piece(w, x, y) {
                sp.push((0, p.clone(), Path::lazy(y)));
            }
        } else {
            for (gi, g) in self.c.terms[k].iter().enumerate() {
                let total = w - g.generator_degree();
                for d1 in total..=0 {
                    for p in self.model.piece(d1, x, g.left) {
                        for q in self.model.piece(total - d1, g.right, y) {
                            sp.push((gi, p.clone(), q.clone()));
                        }
                    }
                }
            }
        }
        let sp = Rc::new(sp);
        self.cache.insert((k, w, x, y), sp.clone());
        sp
    }

    fn lookup(tgt: &Space, g: Gen, w: i64) -> Result<usize, SignDgError> {
        tgt.index
            .get(&g)
            .copied()
            .ok_or(SignDgError::WindowTooSmall { degrees: vec![w] })
    }

    /// Sign of left multiplication by an element of degree `deg` on the
    /// summand `gi` of term `k`: over `R^dg` a summand of shift `s` is
    /// `(R^dg)^e[s]`, whose left action carries `(-1)^{s·deg}`.
    fn left_sign(&self, k: usize, gi: usize, deg: i64) -> Q {
        match self.c.setting {
            Setting::Graded => Q::one(),
            Setting::Dg => sign_pow(self.c.terms[k][gi].shift * deg),
        }
    }

    /// Images of the basis of `src` (term `k`) in `tgt` (term `k + 1`).
    fn differential(
        &self,
        k: usize,
        w: i64,
        src: &Space,
        tgt: &Space,
    ) -> Result<Vec<SparseVec>, SignDgError> {
        let mut out = Vec::with_capacity(src.dim());
        for (gi, p, q) in &src.basis {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            if self.is_r(k + 1) {
                for (r, c) in self.model.product(p, q).terms() {
                    let i = Self::lookup(tgt, (0, r.clone(), Path::lazy(r.target())), w)?;
                    *acc.entry(i).or_insert_with(Q::zero) += c;
                }
            } else {
                let q_ = self.c.quiver();
                let pd = p.degree(q_);
                for (j, e) in self.c.diffs[k][*gi].iter().enumerate() {
                    // p·γ·q = ± (p, q); d(p, q) = ± p·d(γ)·q.
                    let sg = self.left_sign(k, *gi, pd) * self.left_sign(k + 1, j, pd);
                    for (u, v, c) in e.terms() {
                        let pu = self.model.product(p, u);
                        let vq = self.model.product(v, q);
                        for (p2, a) in pu.terms() {
                            for (q2, b) in vq.terms() {
                                let i = Self::lookup(tgt, (j, p2.clone(), q2.clone()), w)?;
                                *acc.entry(i).or_insert_with(Q::zero) += &sg * c * a * b;
                            }
                        }
                    }
                }
            }
            out.push(SparseVec::from_entries(acc.into_iter().collect()));
        }
        Ok(out)
    }

    /// Matrix of the differential leaving term `k` at `(w, x, y)`.
    fn d_out(
        &mut self,
        k: usize,
        w: i64,
        x: VertexId,
        y: VertexId,
    ) -> Result<Vec<SparseVec>, SignDgError> {
        if k + 1 >= self.num_terms() {
            return Ok(vec![SparseVec::new(); self.space(k, w, x, y).dim()]);
        }
        let (src, tgt) = (self.space(k, w, x, y), self.space(k + 1, w, x, y));
        self.differential(k, w, &src, &tgt)
    }

    /// Boundaries inside term `k`.
    fn boundaries(
        &mut self,
        k: usize,
        w: i64,
        x: VertexId,
        y: VertexId,
    ) -> Result<Echelon, SignDgError> {
        if k == 0 {
            return Ok(Echelon::new());
        }
        let imgs = self.d_out(k - 1, w, x, y)?;
        Ok(Echelon::from_vectors(&imgs))
    }

    fn homology_dim(
        &mut self,
        k: usize,
        w: i64,
        x: VertexId,
        y: VertexId,
    ) -> Result<usize, SignDgError> {
        let dim = self.space(k, w, x, y).dim();
        let out = Echelon::from_vectors(&self.d_out(k, w, x, y)?).rank();
        let inc = self.boundaries(k, w, x, y)?.rank();
        dim.checked_sub(out + inc).ok_or_else(|| {
            SignDgError::Shape(format!(
                "differentials do not square to zero at term {k}, degree {w}"
            ))
        })
    }

    fn homology_matrix(&mut self, k: usize, w: i64) -> Result<Vec<Vec<usize>>, SignDgError> {
        let n = self.c.quiver().num_vertices() as u32;
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.homology_dim(k, w, VertexId(x), VertexId(y)))
                    .collect()
            })
            .collect()
    }

    /// Multiplies each basis element `p g q` of term `k` by `left` and
    /// `right` paths.
    #[allow(clippy::too_many_arguments)]
    fn act(
        &self,
        k: usize,
        v: &SparseVec,
        src: &Space,
        left: &Path,
        right: &Path,
        tgt: &Space,
        w: i64,
    ) -> Result<SparseVec, SignDgError> {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        let ld = left.degree(self.c.quiver());
        for (i, c) in v.iter() {
            let (gi, p, q) = &src.basis[*i];
            let c = &(self.left_sign(k, *gi, ld) * c);
            let lp = self.model.product(left, p);
            let qr = self.model.product(q, right);
            for (p2, a) in lp.terms() {
                for (q2, b) in qr.terms() {
                    let t = Self::lookup(tgt, (*gi, p2.clone(), q2.clone()), w)?;
                    *acc.entry(t).or_insert_with(Q::zero) += c * a * b;
                }
            }
        }
        Ok(SparseVec::from_entries(acc.into_iter().collect()))
    }
}

/// Checks that `cplx -> R -> 0` is exact in every internal degree of the
/// window `lo..=hi`.
pub fn exactness_probe(
    cplx: &BimoduleComplex,
    window: (i64, i64),
    cap: Option<u32>,
) -> Result<(), SignDgError> {
    if cplx.setting != Setting::Graded {
        return Err(SignDgError::NotFree(
            "the exactness probe expects a graded complex".into(),
        ));
    }
    if cplx.position(cplx.len() - 1) != 0 {
        return Err(SignDgError::Shape(
            "the last term must sit in position 0".into(),
        ));
    }
    let last = cplx.terms.last().expect("nonempty complex");
    if last.iter().any(|g| g.left != g.right || g.shift != 0) {
        return Err(SignDgError::Shape(
            "the last term must be a sum of R e_i ⊗ e_i R".into(),
        ));
    }
    let (lo, hi) = window;
    let mut eng = Engine::new(cplx, lo, true, cap)?;
    let n = cplx.quiver().num_vertices() as u32;
    for w in (lo..=hi).rev() {
        for k in 0..eng.num_terms() {
            for x in 0..n {
                for y in 0..n {
                    let dim = eng.homology_dim(k, w, VertexId(x), VertexId(y))?;
                    if dim != 0 {
                        return Err(SignDgError::NotAResolution {
                            position: cplx.start + k as i64,
                            degree: w,
                            dim,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Cohomology of every term in internal degrees `lo..=hi`.
pub fn cohomology(
    cplx: &BimoduleComplex,
    window: (i64, i64),
    cap: Option<u32>,
) -> Result<Vec<CohomologyRow>, SignDgError> {
    let (lo, hi) = window;
    let mut eng = Engine::new(cplx, lo, false, cap)?;
    let mut rows = Vec::new();
    for w in (lo..=hi).rev() {
        for k in 0..cplx.len() {
            let dims = eng.homology_matrix(k, w)?;
            rows.push(CohomologyRow {
                position: cplx.position(k),
                degree: w,
                dims,
                expected: None,
            });
        }
    }
    Ok(rows)
}

/// Vertex rescaling `λ` with `λ_i / λ_j = c_x / r_x` for every arrow
/// `x: i -> j`, if one exists.
fn gauge_exists(ends: &[(VertexId, VertexId)], expected: &[Q], measured: &[Q], n: usize) -> bool {
    let mut lambda: Vec<Option<Q>> = vec![None; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, (s, t)) in ends.iter().enumerate() {
        adj[s.idx()].push(a);
        adj[t.idx()].push(a);
    }
    for root in 0..n {
        if lambda[root].is_some() {
            continue;
        }
        lambda[root] = Some(Q::one());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &a in &adj[v] {
                let (s, t) = (ends[a].0.idx(), ends[a].1.idx());
                let ratio = &expected[a] / &measured[a];
                let (ls, lt) = (lambda[s].clone(), lambda[t].clone());
                match (ls, lt) {
                    (Some(ls), Some(lt)) => {
                        if ls != lt * &ratio {
                            return false;
                        }
                    }
                    (Some(ls), None) => {
                        lambda[t] = Some(ls / ratio);
                        queue.push_back(t);
                    }
                    (None, Some(lt)) => {
                        lambda[s] = Some(lt * ratio);
                        queue.push_back(s);
                    }
                    (None, None) => unreachable!("one end was visited"),
                }
            }
        }
    }
    true
}

/// Tests `RHom_{(R^dg)^e}(R, (R^dg)^e)[shift] ≅ ₁R_twist` degree by degree.
///
/// `cplx` must be a graded free resolution of `R`, which is probed first.
/// Its DG transport is dualized; the cohomology of the result must sit in
/// position `twist.cohomological`, with `e_x H_{j + a} e_y ≅ e_x R_j e_y`
/// for every R-degree `j` of the window. Generators `h_i ∈ e_i H_a e_i`
/// must satisfy `h_i x = c_x x h_j` up to rescaling, and `r ↦ r h` must be
/// bijective.
pub fn check_twisted_cy(
    cplx: &BimoduleComplex,
    twist: &TwistSpec,
    window: (i64, i64),
    cap: Option<u32>,
) -> Result<Verdict, SignDgError> {
    let (lo, hi) = window;
    let q = cplx.quiver();
    let nv = q.num_vertices() as u32;
    let a = twist.internal;
    let missing: Vec<i64> = std::iter::once(0)
        .chain(q.arrows().iter().map(|x| x.degree))
        .filter(|d| *d < lo || *d > hi)
        .collect();
    if !missing.is_empty() {
        return Err(SignDgError::WindowTooSmall { degrees: missing });
    }
    exactness_probe(cplx, window, cap)?;
    let dual = dualize(&dg_transport(cplx)?)?;
    let mut eng = Engine::new(&dual, (lo + a).min(lo), false, cap)?;
    let mut first_mismatch: Option<String> = None;

    let mut rows = Vec::new();
    for j in (lo..=hi).rev() {
        let w = j + a;
        let r_dims: Vec<Vec<usize>> = (0..nv)
            .map(|x| {
                (0..nv)
                    .map(|y| eng.model.dim(j, VertexId(x), VertexId(y)))
                    .collect()
            })
            .collect();
        for k in 0..dual.len() {
            let pos = dual.position(k);
            let dims = eng.homology_matrix(k, w)?;
            let expected = if pos == twist.cohomological {
                r_dims.clone()
            } else {
                vec![vec![0; nv as usize]; nv as usize]
            };
            let row = CohomologyRow {
                position: pos,
                degree: w,
                dims,
                expected: Some(expected),
            };
            if !row.matches() {
                note(
                    format!(
                        "position {pos}, internal degree {w}: cohomology {:?}, expected {:?}",
                        row.dims,
                        row.expected.as_ref().unwrap()
                    ),
                    &mut first_mismatch,
                );
            }
            rows.push(row);
        }
    }
    let in_range =
        twist.cohomological >= dual.start && twist.cohomological < dual.start + dual.len() as i64;
    if !in_range {
        note(
            format!(
                "the dual complex has no term in position {}",
                twist.cohomological
            ),
            &mut first_mismatch,
        );
    }
    let dimensions_match = in_range && rows.iter().all(CohomologyRow::matches);

    let mut ratios = Vec::new();
    let mut twist_matches = false;
    let mut action_free = false;
    if dimensions_match {
        let kq = (twist.cohomological - dual.start) as usize;
        // Generators h_i: a cycle in e_i Q_a e_i that is not a boundary.
        let mut gens: Vec<Option<SparseVec>> = Vec::new();
        for i in 0..nv {
            let v = VertexId(i);
            let z = kernel(&eng.d_out(kq, a, v, v)?);
            let b = eng.boundaries(kq, a, v, v)?;
            gens.push(z.into_iter().find(|c| !b.contains(c)));
        }
        let mut measured = Vec::new();
        for x in q.arrow_ids() {
            let arr = q.arrow(x);
            let (i, jv) = (arr.source, arr.target);
            let w = a + arr.degree;
            let r = match (&gens[i.idx()], &gens[jv.idx()]) {
                (Some(hi_), Some(hj)) => {
                    let tgt = eng.space(kq, w, i, jv);
                    let b = eng.boundaries(kq, w, i, jv)?;
                    let xp = Path::arrow(q, x);
                    let (si, sj) = (eng.space(kq, a, i, i), eng.space(kq, a, jv, jv));
                    let hx = eng.act(kq, hi_, &si, &Path::lazy(i), &xp, &tgt, w)?;
                    let xh = eng.act(kq, hj, &sj, &xp, &Path::lazy(jv), &tgt, w)?;
                    // Position n of Q sits in RHom[n + a] shifted by a, which
                    // adds (-1)^{a|x|} to the left action.
                    proportional(&b.reduce(&hx), &b.reduce(&xh))
                        .map(|r| r * sign_pow(a * arr.degree))
                }
                _ => None,
            };
            ratios.push(TwistRatio {
                arrow: arr.name.clone(),
                expected: fmt_q(twist.twist.scalar(x)),
                measured: r.as_ref().map(fmt_q),
            });
            measured.push(r);
        }
        let all_measured = measured
            .iter()
            .all(|r| r.as_ref().is_some_and(|r| !r.is_zero()));
        if all_measured {
            let measured: Vec<Q> = measured.into_iter().map(Option::unwrap).collect();
            let ends: Vec<(VertexId, VertexId)> =
                q.arrows().iter().map(|x| (x.source, x.target)).collect();
            let expected: Vec<Q> = q
                .arrow_ids()
                .map(|x: ArrowId| twist.twist.scalar(x).clone())
                .collect();
            twist_matches = gauge_exists(&ends, &expected, &measured, nv as usize);
            if !twist_matches {
                note(
                    "the bimodule action does not match the claimed twist".into(),
                    &mut first_mismatch,
                );
            }
        } else {
            note(
                "the action of some arrow on the generators is not a multiple of the other side"
                    .into(),
                &mut first_mismatch,
            );
        }
        if gens.iter().all(Option::is_some) {
            action_free = true;
            'outer: for j in (lo..=hi).rev() {
                let w = j + a;
                for x in 0..nv {
                    for y in 0..nv {
                        let (xv, yv) = (VertexId(x), VertexId(y));
                        let paths = eng.model.piece(j, xv, yv).to_vec();
                        if paths.is_empty() {
                            continue;
                        }
                        let tgt = eng.space(kq, w, xv, yv);
                        let b = eng.boundaries(kq, w, xv, yv)?;
                        let src = eng.space(kq, a, yv, yv);
                        let h = gens[y as usize].as_ref().expect("checked");
                        let mut e = Echelon::new();
                        for p in &paths {
                            e.insert(b.reduce(&eng.act(
                                kq,
                                h,
                                &src,
                                p,
                                &Path::lazy(yv),
                                &tgt,
                                w,
                            )?));
                        }
                        if e.rank() != paths.len() {
                            action_free = false;
                            note(format!("left multiplication onto the generators is not injective in R-degree {j}"), &mut first_mismatch);
                            break 'outer;
                        }
                    }
                }
            }
        } else {
            note(
                "some vertex has no cohomology generator in the expected degree".into(),
                &mut first_mismatch,
            );
        }
    }
    let pass = dimensions_match && twist_matches && action_free;
    Ok(Verdict {
        total_shift: twist.total(),
        position: twist.cohomological,
        a_invariant: a,
        window,
        rows,
        dimensions_match,
        ratios,
        twist_matches,
        action_free,
        pass,
        first_mismatch,
    })
}

fn note(m: String, slot: &mut Option<String>) {
    if slot.is_none() {
        *slot = Some(m);
    }
}

/// `r` with `u = r v`, if `v ≠ 0` and `u` is a multiple of it.
fn proportional(u: &SparseVec, v: &SparseVec) -> Option<Q> {
    let (i, c) = v.lead()?.clone();
    let r = u.get(i) / c;
    (u.sub(&v.scale(&r))).is_zero().then_some(r)
}
