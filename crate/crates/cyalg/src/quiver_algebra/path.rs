use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::{One, Zero};

use super::quiver::{ArrowId, Quiver, VertexId};
use crate::linalg::{fmt_q, Q};

/// A path in a quiver, composed left to right: `p * q` means "first `p`,
/// then `q`". A path with no arrows is the lazy path (idempotent) at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    weight: u32,
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Ord for Path {
    /// Weighted length first, then plain length, then lexicographic in arrow
    /// index; ties between lazy paths broken by vertex.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then(self.arrows.len().cmp(&other.arrows.len()))
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then(self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn lazy(v: VertexId) -> Self {
        Self {
            weight: 0,
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Self {
        let ar = q.arrow(a);
        Self {
            weight: q.weight(a),
            source: ar.source,
            target: ar.target,
            arrows: vec![a],
        }
    }

    /// Builds a path from an arrow sequence; `None` if not composable or empty.
    pub fn from_arrows(q: &Quiver, arrows: &[ArrowId]) -> Option<Self> {
        let first = arrows.first()?;
        let mut p = Path::arrow(q, *first);
        for a in &arrows[1..] {
            p = p.compose(&Path::arrow(q, *a))?;
        }
        Some(p)
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn degree(&self, q: &Quiver) -> i64 {
        self.arrows.iter().map(|a| q.arrow(*a).degree).sum()
    }

    /// Concatenation "first self, then other", or `None` (the zero path).
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            weight: self.weight + other.weight,
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// Subpath of arrows `[from, to)`; lazy at the appropriate vertex when empty.
    pub fn subpath(&self, q: &Quiver, from: usize, to: usize) -> Path {
        if from >= to {
            let v = if from == 0 {
                self.source
            } else {
                q.arrow(self.arrows[from - 1]).target
            };
            return Path::lazy(v);
        }
        let arrows = self.arrows[from..to].to_vec();
        let weight = arrows.iter().map(|a| q.weight(*a)).sum();
        Path {
            weight,
            source: q.arrow(arrows[0]).source,
            target: q.arrow(arrows[to - from - 1]).target,
            arrows,
        }
    }

    /// Vertices visited, `len + 1` of them.
    pub fn vertex_sequence(&self, q: &Quiver) -> Vec<VertexId> {
        let mut out = vec![self.source];
        out.extend(self.arrows.iter().map(|a| q.arrow(*a).target));
        out
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertex_name(self.source))
        } else {
            self.arrows
                .iter()
                .map(|a| q.arrow(*a).name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Finite rational combination of paths with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Path, Q>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(Q::one(), p)
    }

    pub fn term(c: Q, p: Path) -> Self {
        let mut s = Self::zero();
        s.add_term(c, p);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Q, Path)>) -> Self {
        let mut s = Self::zero();
        for (c, p) in terms {
            s.add_term(c, p);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Path, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Path) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, c: Q, p: Path) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &NCPoly) {
        for (p, x) in &other.terms {
            self.add_term(c * x, p.clone());
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut s = self.clone();
        s.add_scaled(&Q::one(), other);
        s
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut s = self.clone();
        s.add_scaled(&-Q::one(), other);
        s
    }

    pub fn scale(&self, c: &Q) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect(),
        }
    }

    /// Product in the path algebra (non-composable products vanish).
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(a * b, pq);
                }
            }
        }
        out
    }

    pub fn left_mul_path(&self, p: &Path) -> NCPoly {
        NCPoly::from_path(p.clone()).mul(self)
    }

    pub fn right_mul_path(&self, p: &Path) -> NCPoly {
        self.mul(&NCPoly::from_path(p.clone()))
    }

    /// Leading (largest) term.
    pub fn lead(&self) -> Option<(&Path, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn pop_lead(&mut self) -> Option<(Path, Q)> {
        self.terms.pop_last()
    }

    pub fn make_monic(&self) -> NCPoly {
        match self.lead() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => NCPoly::zero(),
        }
    }

    /// Degree if all terms share one.
    pub fn homogeneous_degree(&self, q: &Quiver) -> Option<i64> {
        let mut it = self.terms.keys().map(|p| p.degree(q));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_weight_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|p| p.weight());
        match it.next() {
            Some(w) => it.all(|x| x == w),
            None => true,
        }
    }

    /// Common (source, target) if all terms are parallel.
    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        let mut it = self.terms.keys().map(|p| (p.source(), p.target()));
        let e = it.next()?;
        it.all(|x| x == e).then_some(e)
    }

    /// Splits into parallel components `e_s * self * e_t`.
    pub fn components(&self) -> Vec<NCPoly> {
        let mut by: BTreeMap<(VertexId, VertexId), NCPoly> = BTreeMap::new();
        for (p, c) in &self.terms {
            by.entry((p.source(), p.target()))
                .or_default()
                .add_term(c.clone(), p.clone());
        }
        by.into_values().collect()
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(|p| p.weight()).max().unwrap_or(0)
    }

    /// Applies a diagonal automorphism given by per-arrow scalars.
    pub fn twist(&self, scalars: &[Q]) -> NCPoly {
        let mut out = NCPoly::zero();
        for (p, c) in &self.terms {
            let mut f = c.clone();
            for a in p.arrows() {
                f *= &scalars[a.idx()];
            }
            out.add_term(f, p.clone());
        }
        out
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (p, c)) in self.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&fmt_q(&mag));
                s.push('*');
            }
            s.push_str(&p.display(q));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn kxy() -> Quiver {
        Quiver::from_spec(&["0"], &[("x", "0", "0", -1), ("y", "0", "0", -1)]).unwrap()
    }

    fn two() -> Quiver {
        Quiver::from_spec(&["0", "1"], &[("x", "0", "1", -1)]).unwrap()
    }

    #[test]
    fn lazy_is_left_identity() {
        let qv = two();
        let x = Path::arrow(&qv, ArrowId(0));
        let e0 = Path::lazy(VertexId(0));
        assert_eq!(e0.compose(&x), Some(x.clone()));
    }

    #[test]
    fn non_composable_is_zero() {
        let qv = two();
        let x = Path::arrow(&qv, ArrowId(0));
        assert_eq!(x.compose(&x), None);
    }

    #[test]
    fn free_words_distinct() {
        let qv = kxy();
        let x = Path::arrow(&qv, ArrowId(0));
        let y = Path::arrow(&qv, ArrowId(1));
        let xy = x.compose(&y).unwrap();
        let yx = y.compose(&x).unwrap();
        assert_ne!(xy, yx);
        assert_eq!(xy.degree(&qv), -2);
        assert!(yx > xy);
    }

    #[test]
    fn poly_display_and_cancel() {
        let qv = kxy();
        let x = Path::arrow(&qv, ArrowId(0));
        let y = Path::arrow(&qv, ArrowId(1));
        let xy = x.compose(&y).unwrap();
        let yx = y.compose(&x).unwrap();
        let mut r = NCPoly::term(q(1), xy.clone());
        r.add_term(q(-1), yx.clone());
        assert_eq!(r.display(&qv), "x*y - y*x");
        r.add_term(q(1), yx);
        assert_eq!(r, NCPoly::from_path(xy));
    }
}
