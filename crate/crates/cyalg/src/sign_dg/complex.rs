use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{One, Signed, Zero};
use serde::Serialize;

use super::SignDgError;
use crate::linalg::{fmt_q, sign_pow, Q};
use crate::quiver_algebra::{
    GradedQuiverPresentation, NCPoly, Path, Quiver, RewritingSystem, VertexId,
};

/// Element `Σ c (u ⊗ v)` of `R ⊗ R`; as a differential entry it sends a
/// generator `g` to `Σ c u g' v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorPoly {
    terms: BTreeMap<(Path, Path), Q>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: Q, u: Path, v: Path) -> Self {
        let mut t = Self::zero();
        t.add_term(c, u, v);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Path, &Q)> {
        self.terms.iter().map(|((u, v), c)| (u, v, c))
    }

    pub fn add_term(&mut self, c: Q, u: Path, v: Path) {
        if c.is_zero() {
            return;
        }
        let key = (u, v);
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        for (u, v, c) in other.terms() {
            out.add_term(c.clone(), u.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, s: &Q) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (u, v, c) in self.terms() {
            out.add_term(c * s, u.clone(), v.clone());
        }
        out
    }

    /// Applies `f(u, v)` to each term's coefficient.
    pub fn map_terms(&self, f: impl Fn(&Path, &Path, &Q) -> (Q, Path, Path)) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (u, v, c) in self.terms() {
            let (c2, u2, v2) = f(u, v, c);
            out.add_term(c2, u2, v2);
        }
        out
    }

    /// Entry of the composite `g -> self -> other`: `(u ⊗ v) ∘ (u' ⊗ v') = uu' ⊗ v'v`.
    pub fn then(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (u, v, c) in self.terms() {
            for (u2, v2, c2) in other.terms() {
                if let (Some(uu), Some(vv)) = (u.compose(u2), v2.compose(v)) {
                    out.add_term(c * c2, uu, vv);
                }
            }
        }
        out
    }

    /// Both tensor factors put in normal form.
    pub fn reduce(&self, sys: &RewritingSystem) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (u, v, c) in self.terms() {
            let (ru, rv) = (sys.reduce_path(u), sys.reduce_path(v));
            for (p, a) in ru.terms() {
                for (q, b) in rv.terms() {
                    out.add_term(c * a * b, p.clone(), q.clone());
                }
            }
        }
        out
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let side = |p: &Path| {
            if p.is_lazy() {
                "1".to_string()
            } else {
                p.display(q)
            }
        };
        let mut s = String::new();
        for (k, (u, v, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let mag = c.abs();
            if !mag.is_one() {
                let _ = write!(s, "{}*", fmt_q(&mag));
            }
            let _ = write!(s, "{}|{}", side(u), side(v));
        }
        s
    }
}

/// Free bimodule `R e_left ⊗ e_right R (shift)`; its generator has internal
/// degree `-shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FreeSummand {
    pub left: VertexId,
    pub right: VertexId,
    pub shift: i64,
}

impl FreeSummand {
    pub fn generator_degree(&self) -> i64 {
        -self.shift
    }
}

/// Whether the complex lives over `R^e` or over the DG algebra `(R^dg)^e`
/// (after the sign change of free modules).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Setting {
    Graded,
    Dg,
}

/// Complex of free bimodules `C_0 -> C_1 -> ... -> C_N` sitting in
/// cohomological degrees `start ..= start + N`. `diffs[k][i][j]` is the
/// component from generator `i` of `C_k` to generator `j` of `C_{k+1}`.
#[derive(Clone, Debug)]
pub struct BimoduleComplex {
    pub presentation: GradedQuiverPresentation,
    pub setting: Setting,
    pub start: i64,
    pub terms: Vec<Vec<FreeSummand>>,
    pub diffs: Vec<Vec<Vec<TensorPoly>>>,
}

impl BimoduleComplex {
    /// Checks shapes and that each entry connects the right vertices with
    /// the right internal degree.
    pub fn new(
        presentation: GradedQuiverPresentation,
        setting: Setting,
        start: i64,
        terms: Vec<Vec<FreeSummand>>,
        diffs: Vec<Vec<Vec<TensorPoly>>>,
    ) -> Result<Self, SignDgError> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(SignDgError::Shape(
                "need one differential between consecutive terms".into(),
            ));
        }
        let q = &presentation.quiver;
        for (k, d) in diffs.iter().enumerate() {
            if d.len() != terms[k].len() || d.iter().any(|row| row.len() != terms[k + 1].len()) {
                return Err(SignDgError::Shape(format!(
                    "differential {k} has the wrong size"
                )));
            }
            for (i, row) in d.iter().enumerate() {
                let src = terms[k][i];
                for (j, entry) in row.iter().enumerate() {
                    let tgt = terms[k + 1][j];
                    for (u, v, _) in entry.terms() {
                        let ok = u.source() == src.left
                            && u.target() == tgt.left
                            && v.source() == tgt.right
                            && v.target() == src.right;
                        if !ok {
                            return Err(SignDgError::Shape(format!(
                                "entry ({k}, {i}, {j}) term {}|{} does not connect the generators",
                                u.display(q),
                                v.display(q)
                            )));
                        }
                        if u.degree(q) + v.degree(q) + tgt.generator_degree()
                            != src.generator_degree()
                        {
                            return Err(SignDgError::Shape(format!(
                                "entry ({k}, {i}, {j}) is not homogeneous"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Self {
            presentation,
            setting,
            start,
            terms,
            diffs,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Cohomological degree of `terms[k]`.
    pub fn position(&self, k: usize) -> i64 {
        self.start + k as i64
    }

    /// Ranks of the terms.
    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    /// Entries of `d_{k+1} ∘ d_k`, reduced modulo the relations. Over `R^dg`
    /// the second map passes `u` in `u ⊗ v` with the sign `(-1)^{(s_j + s_l)|u|}`.
    pub fn composite(&self, k: usize, sys: &RewritingSystem) -> Vec<Vec<TensorPoly>> {
        let (d0, d1) = (&self.diffs[k], &self.diffs[k + 1]);
        let q = self.quiver();
        d0.iter()
            .map(|row| {
                (0..self.terms[k + 2].len())
                    .map(|l| {
                        let mut acc = TensorPoly::zero();
                        for (j, e) in row.iter().enumerate() {
                            let e = match self.setting {
                                Setting::Graded => e.clone(),
                                Setting::Dg => {
                                    let s = self.terms[k + 1][j].shift + self.terms[k + 2][l].shift;
                                    e.map_terms(|u, v, c| {
                                        (c * sign_pow(s * u.degree(q)), u.clone(), v.clone())
                                    })
                                }
                            };
                            acc = acc.add(&e.then(&d1[j][l]));
                        }
                        acc.reduce(sys)
                    })
                    .collect()
            })
            .collect()
    }

    /// First nonzero entry of some `d ∘ d`, as `(k, i, l, entry)`.
    pub fn square_defect(
        &self,
        sys: &RewritingSystem,
    ) -> Option<(usize, usize, usize, TensorPoly)> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            for (i, row) in self.composite(k, sys).into_iter().enumerate() {
                for (l, e) in row.into_iter().enumerate() {
                    if !e.is_zero() {
                        return Some((k, i, l, e));
                    }
                }
            }
        }
        None
    }

    /// `d ∘ d = 0` modulo the relations of `pres` truncated at `cap`
    /// (default: heaviest relation plus two arrows). Returns the first
    /// nonzero entry as text.
    pub fn check_square_zero(
        &self,
        pres: &GradedQuiverPresentation,
        cap: Option<u32>,
    ) -> Result<Option<String>, SignDgError> {
        let wmax = pres.quiver.weights().iter().copied().max().unwrap_or(1);
        let cap = cap.unwrap_or(pres.max_relation_weight() + 2 * wmax);
        let sys = crate::quiver_algebra::truncated_rewriting(pres, cap)?;
        Ok(self.square_defect(&sys).map(|(k, i, l, e)| {
            format!(
                "d{} d{k} entry ({i}, {l}) = {}",
                k + 1,
                e.display(&pres.quiver)
            )
        }))
    }

    /// Text form readable by [`super::parse_complex`].
    pub fn to_text(&self) -> String {
        let q = self.quiver();
        let mut s = String::new();
        let _ = writeln!(s, "[complex]");
        let _ = writeln!(s, "start {}", self.start);
        if self.setting == Setting::Dg {
            let _ = writeln!(s, "dg");
        }
        let _ = writeln!(s, "[terms]");
        for (k, t) in self.terms.iter().enumerate() {
            let parts: Vec<String> = t
                .iter()
                .map(|g| {
                    format!(
                        "{}>{}@{}",
                        q.vertex_name(g.left),
                        q.vertex_name(g.right),
                        g.shift
                    )
                })
                .collect();
            let _ = writeln!(s, "term {k} = {}", parts.join(", "));
        }
        let _ = writeln!(s, "[maps]");
        for (k, d) in self.diffs.iter().enumerate() {
            for (i, row) in d.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    if !e.is_zero() {
                        let _ = writeln!(s, "map {k} {i} {j} = {}", e.display(q));
                    }
                }
            }
        }
        s
    }
}

/// `Δ(r)`: for each term `c a_1 ... a_k` of `r` and each position `j`, the
/// tensor `c a_1..a_{j-1} ⊗ a_{j+1}..a_k` in the component of `a_j`.
pub fn free_derivative(q: &Quiver, r: &NCPoly) -> BTreeMap<usize, TensorPoly> {
    let mut out: BTreeMap<usize, TensorPoly> = BTreeMap::new();
    for (p, c) in r.terms() {
        let n = p.len();
        for j in 0..n {
            let u = p.subpath(q, 0, j);
            let v = p.subpath(q, j + 1, n);
            out.entry(p.arrows()[j].idx())
                .or_default()
                .add_term(c.clone(), u, v);
        }
    }
    out
}
