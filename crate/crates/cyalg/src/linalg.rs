//! Exact rational linear algebra on sparse vectors.

use std::collections::HashMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i, Q::one())],
        }
    }

    pub fn from_entries(mut raw: Vec<(usize, Q)>) -> Self {
        raw.sort_by_key(|e| e.0);
        let mut entries: Vec<(usize, Q)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        Self { entries }
    }

    pub fn from_dense(v: &[Q]) -> Self {
        Self {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Q)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn lead(&self) -> Option<&(usize, Q)> {
        self.entries.first()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Q, other: &SparseVec) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, &b[j].1 * c));
                j += 1;
            } else {
                let s = &a[i].1 + &b[j].1 * c;
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.axpy(&Q::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.axpy(&-Q::one(), other)
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = Q::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &a[i].1 * &b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", i, fmt_q(c))?;
        }
        write!(f, "]")
    }
}

/// Incremental row-echelon basis of a subspace. Each stored row has a
/// distinct leading index and is normalized to leading coefficient 1.
/// Optionally tracks how every row is expressed through the inserted
/// vectors, which gives kernels and coordinates for free.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
    track: bool,
    inserted: usize,
}

/// Outcome of inserting into a tracking [`Echelon`].
pub enum Inserted {
    /// The vector enlarged the span.
    New,
    /// The vector was dependent; the combination of previously inserted
    /// vectors (including this one, with coefficient 1) that sums to zero.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracking() -> Self {
        Self {
            track: true,
            ..Self::default()
        }
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut e = Self::new();
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.lead().unwrap().0)
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_row.contains_key(&i)
    }

    fn reduce_tracked(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        let mut pos = 0;
        while pos < v.entries.len() {
            let (idx, c) = v.entries[pos].clone();
            if let Some(&r) = self.pivot_row.get(&idx) {
                let neg = -c;
                v = v.axpy(&neg, &self.rows[r]);
                if self.track {
                    combo = combo.axpy(&neg, &self.combos[r]);
                }
            } else {
                pos += 1;
            }
        }
        (v, combo)
    }

    /// Reduces `v` modulo the span; the result has no entries at pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tracked(v.clone(), SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns true iff the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        matches!(self.insert_tracked(v), Inserted::New)
    }

    pub fn insert_tracked(&mut self, v: SparseVec) -> Inserted {
        let id = self.inserted;
        self.inserted += 1;
        let combo0 = if self.track {
            SparseVec::unit(id)
        } else {
            SparseVec::new()
        };
        let (r, combo) = self.reduce_tracked(v, combo0);
        if r.is_zero() {
            return Inserted::Dependent(combo);
        }
        let (lead, c) = r.lead().unwrap().clone();
        let inv = c.recip();
        let r = r.scale(&inv);
        let combo = combo.scale(&inv);
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(r);
        self.combos.push(combo);
        Inserted::New
    }

    /// Expresses `v` as a combination of inserted vectors, if it lies in the span.
    /// Requires tracking.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "solve requires a tracking echelon");
        let (mut rest, mut combo) = (v.clone(), SparseVec::new());
        while let Some((idx, c)) = rest.lead().cloned() {
            let &r = self.pivot_row.get(&idx)?;
            rest = rest.axpy(&-c.clone(), &self.rows[r]);
            combo = combo.axpy(&c, &self.combos[r]);
        }
        Some(combo)
    }
}

/// Basis of the kernel of the linear map sending the `k`-th domain basis
/// vector to `images[k]`.
pub fn kernel(images: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::tracking();
    let mut out = Vec::new();
    for v in images {
        if let Inserted::Dependent(c) = e.insert_tracked(v.clone()) {
            out.push(c);
        }
    }
    out
}

pub fn rank(vs: &[SparseVec]) -> usize {
    Echelon::from_vectors(vs).rank()
}

/// Dense integer matrix, row-major, used for Cartan/Coxeter data.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, *x);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.get(i, j) + a * other.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Exact inverse over the rationals; `None` if singular or not integral.
    pub fn integer_inverse(&self) -> Option<IntMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut r: Vec<Q> = (0..n).map(|j| q(self.get(i, j))).collect();
                r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (x, p) in a[r].iter_mut().zip(pivot_row.iter()) {
                        *x -= &f * p;
                    }
                }
            }
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = &a[i][n + j];
                if !x.is_integer() {
                    return None;
                }
                let v: i64 = x.numer().try_into().ok()?;
                out.set(i, j, v);
            }
        }
        Some(out)
    }
}

/// Sign helper: `(-1)^k`.
pub fn sign_pow(k: i64) -> Q {
    if k.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

pub fn is_neg(x: &Q) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|x| q(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn axpy_cancels() {
        let a = sv(&[1, 2, 0, 3]);
        let b = sv(&[0, 1, 0, 0]);
        let c = a.axpy(&q(-2), &b);
        assert_eq!(c, sv(&[1, 0, 0, 3]));
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let imgs = vec![sv(&[1, 1]), sv(&[2, 2]), sv(&[0, 0])];
        let k = kernel(&imgs);
        assert_eq!(k.len(), 2);
        for v in &k {
            let mut acc = SparseVec::new();
            for (i, c) in v.iter() {
                acc = acc.axpy(c, &imgs[*i]);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn solve_recovers_coordinates() {
        let mut e = Echelon::tracking();
        e.insert(sv(&[1, 0, 1]));
        e.insert(sv(&[0, 1, 1]));
        let c = e.solve(&sv(&[2, 3, 5])).unwrap();
        assert_eq!(c, sv(&[2, 3]));
        assert!(e.solve(&sv(&[0, 0, 1])).is_none());
    }

    #[test]
    fn kronecker_coxeter_inverse() {
        let c = IntMatrix::from_rows(&[vec![1, 0], vec![2, 1]]);
        let ci = c.integer_inverse().unwrap();
        assert_eq!(c.mul(&ci), IntMatrix::identity(2));
    }
}
