use num::{One, Zero};

use super::AbcError;
use crate::linalg::{SparseVec, Q};

/// Finite-dimensional algebra given by a basis and structure constants,
/// with a complete set of orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    labels: Vec<String>,
    names: Vec<String>,
    table: Vec<Vec<SparseVec>>,
    idempotents: Vec<SparseVec>,
    idempotent_names: Vec<String>,
    grading: Option<Vec<i64>>,
}

/// Basis element `i` as a vector.
pub fn basis_vec(i: usize) -> SparseVec {
    SparseVec::unit(i)
}

impl FdAlgebra {
    /// `table[i][j]` is the product `b_i b_j`. `names` are identifier-safe
    /// short names used when basis elements become quiver arrows.
    pub fn new(
        labels: Vec<String>,
        names: Vec<String>,
        table: Vec<Vec<SparseVec>>,
        idempotents: Vec<SparseVec>,
        idempotent_names: Vec<String>,
    ) -> Result<Self, AbcError> {
        let n = labels.len();
        if names.len() != n || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(AbcError::Shape(
                "structure table does not match basis size".into(),
            ));
        }
        if idempotent_names.len() != idempotents.len() {
            return Err(AbcError::Shape("idempotent names".into()));
        }
        let alg = Self {
            labels,
            names,
            table,
            idempotents,
            idempotent_names,
            grading: None,
        };
        alg.check_idempotents()?;
        Ok(alg)
    }

    pub fn with_grading(mut self, g: Vec<i64>) -> Self {
        assert_eq!(g.len(), self.dim());
        self.grading = Some(g);
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn idempotents(&self) -> &[SparseVec] {
        &self.idempotents
    }

    pub fn idempotent_names(&self) -> &[String] {
        &self.idempotent_names
    }

    pub fn num_idempotents(&self) -> usize {
        self.idempotents.len()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: Vec<(usize, Q)> = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                for (k, c) in self.table[*i][*j].iter() {
                    acc.push((*k, &ab * c));
                }
            }
        }
        SparseVec::from_entries(acc)
    }

    pub fn one(&self) -> SparseVec {
        self.idempotents
            .iter()
            .fold(SparseVec::new(), |s, e| s.add(e))
    }

    fn check_idempotents(&self) -> Result<(), AbcError> {
        for (i, e) in self.idempotents.iter().enumerate() {
            for (j, f) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, f);
                let want = if i == j { e.clone() } else { SparseVec::new() };
                if p != want {
                    return Err(AbcError::Idempotents(format!(
                        "{} * {} is not {}",
                        self.idempotent_names[i],
                        self.idempotent_names[j],
                        if i == j { "itself" } else { "zero" }
                    )));
                }
            }
        }
        let one = self.one();
        for b in 0..self.dim() {
            let v = basis_vec(b);
            if self.mul(&one, &v) != v || self.mul(&v, &one) != v {
                return Err(AbcError::Idempotents(format!(
                    "idempotents do not sum to 1 (fails on {})",
                    self.labels[b]
                )));
            }
        }
        Ok(())
    }

    /// Exhaustive check `(b_i b_j) b_k = b_i (b_j b_k)`.
    pub fn check_associative(&self) -> Result<(), AbcError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let l = self.mul(ij, &basis_vec(k));
                    let r = self.mul(&basis_vec(i), &self.table[j][k]);
                    if l != r {
                        return Err(AbcError::NotAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `e_i x e_j`.
    pub fn corner(&self, i: usize, x: &SparseVec, j: usize) -> SparseVec {
        let l = self.mul(&self.idempotents[i], x);
        self.mul(&l, &self.idempotents[j])
    }

    /// For basis elements lying in a single corner `e_i B e_j`, that pair.
    pub fn corner_of_basis(&self, b: usize) -> Option<(usize, usize)> {
        let v = basis_vec(b);
        let m = self.num_idempotents();
        for i in 0..m {
            for j in 0..m {
                if self.corner(i, &v, j) == v {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn opposite(&self) -> FdAlgebra {
        let n = self.dim();
        let table = (0..n)
            .map(|i| (0..n).map(|j| self.table[j][i].clone()).collect())
            .collect();
        FdAlgebra {
            labels: self.labels.clone(),
            names: self.names.clone(),
            table,
            idempotents: self.idempotents.clone(),
            idempotent_names: self.idempotent_names.clone(),
            grading: self.grading.clone(),
        }
    }

    /// `A x A x ... x A` (`n` copies); block `l` labels get suffix `@l`.
    pub fn power(&self, n: usize) -> FdAlgebra {
        let d = self.dim();
        let mut labels = Vec::new();
        let mut names = Vec::new();
        let mut table = vec![vec![SparseVec::new(); d * n]; d * n];
        let mut idem = Vec::new();
        let mut idem_names = Vec::new();
        for l in 0..n {
            for i in 0..d {
                labels.push(format!("{}@{l}", self.labels[i]));
                names.push(format!("{}@{l}", self.names[i]));
                for j in 0..d {
                    table[l * d + i][l * d + j] = shift(&self.table[i][j], l * d);
                }
            }
            for (e, en) in self.idempotents.iter().zip(&self.idempotent_names) {
                idem.push(shift(e, l * d));
                idem_names.push(format!("{en}@{l}"));
            }
        }
        let grading = self
            .grading
            .as_ref()
            .map(|g| (0..n).flat_map(|_| g.iter().copied()).collect());
        FdAlgebra {
            labels,
            names,
            table,
            idempotents: idem,
            idempotent_names: idem_names,
            grading,
        }
    }

    /// Coordinates of `x` in the basis as a dense vector.
    pub fn dense(&self, x: &SparseVec) -> Vec<Q> {
        x.to_dense(self.dim())
    }

    pub fn is_zero_element(x: &SparseVec) -> bool {
        x.iter().all(|(_, c)| c.is_zero())
    }

    /// Structure constants as `(i, j, k, c)` with `b_i b_j` having
    /// coefficient `c` at `b_k`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Q)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, c) in self.table[i][j].iter() {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }
}

pub(crate) fn shift(v: &SparseVec, by: usize) -> SparseVec {
    SparseVec::from_entries(v.iter().map(|(i, c)| (i + by, c.clone())).collect())
}

/// `(A, A)`-bimodule given by the action of basis elements.
#[derive(Clone, Debug)]
pub struct FdBimodule {
    labels: Vec<String>,
    names: Vec<String>,
    left: Vec<Vec<SparseVec>>,
    right: Vec<Vec<SparseVec>>,
}

impl FdBimodule {
    /// `left[a][u] = b_a . m_u` and `right[u][a] = m_u . b_a`.
    pub fn new(
        labels: Vec<String>,
        names: Vec<String>,
        left: Vec<Vec<SparseVec>>,
        right: Vec<Vec<SparseVec>>,
    ) -> Self {
        Self {
            labels,
            names,
            left,
            right,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn left_act(&self, a: &SparseVec, u: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (i, x) in a.iter() {
            for (j, y) in u.iter() {
                let xy = x * y;
                for (k, c) in self.left[*i][*j].iter() {
                    acc.push((*k, &xy * c));
                }
            }
        }
        SparseVec::from_entries(acc)
    }

    pub fn right_act(&self, u: &SparseVec, a: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (j, y) in u.iter() {
            for (i, x) in a.iter() {
                let xy = x * y;
                for (k, c) in self.right[*j][*i].iter() {
                    acc.push((*k, &xy * c));
                }
            }
        }
        SparseVec::from_entries(acc)
    }

    /// Module axioms and commutation of the two actions, exhaustively.
    pub fn check(&self, alg: &FdAlgebra) -> Result<(), AbcError> {
        let n = alg.dim();
        let one = alg.one();
        for u in 0..self.dim() {
            let uv = basis_vec(u);
            if self.left_act(&one, &uv) != uv || self.right_act(&uv, &one) != uv {
                return Err(AbcError::BimoduleAxiom(format!(
                    "unit does not act trivially on {}",
                    self.labels[u]
                )));
            }
            for a in 0..n {
                let av = basis_vec(a);
                let au = self.left_act(&av, &uv);
                let ua = self.right_act(&uv, &av);
                for b in 0..n {
                    let bv = basis_vec(b);
                    let ab = alg.mul(&av, &bv);
                    if self.right_act(&au, &bv) != self.left_act(&av, &self.right_act(&uv, &bv)) {
                        return Err(AbcError::BimoduleAxiom(format!(
                            "actions do not commute on {}",
                            self.labels[u]
                        )));
                    }
                    if self.left_act(&ab, &uv) != self.left_act(&av, &self.left_act(&bv, &uv)) {
                        return Err(AbcError::BimoduleAxiom(format!(
                            "left action not associative on {}",
                            self.labels[u]
                        )));
                    }
                    if self.right_act(&ua, &bv) != self.right_act(&uv, &alg.mul(&av, &bv)) {
                        return Err(AbcError::BimoduleAxiom(format!(
                            "right action not associative on {}",
                            self.labels[u]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `A ⋉ M`: basis of `A` followed by basis of `M`, with `M * M = 0`.
pub fn trivial_extension(a: &FdAlgebra, m: &FdBimodule) -> FdAlgebra {
    let da = a.dim();
    let n = da + m.dim();
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for i in 0..da {
        for j in 0..da {
            table[i][j] = a.table[i][j].clone();
        }
        for u in 0..m.dim() {
            table[i][da + u] = shift(&m.left[i][u], da);
            table[da + u][i] = shift(&m.right[u][i], da);
        }
    }
    let mut labels = a.labels.clone();
    labels.extend(m.labels.iter().cloned());
    let mut names = a.names.clone();
    names.extend(m.names.iter().cloned());
    FdAlgebra {
        labels,
        names,
        table,
        idempotents: a.idempotents.clone(),
        idempotent_names: a.idempotent_names.clone(),
        grading: None,
    }
}

/// Dual numbers `k[t]/(t^2)`.
pub fn dual_numbers() -> FdAlgebra {
    let t = |v: Vec<(usize, i64)>| {
        SparseVec::from_entries(
            v.into_iter()
                .map(|(i, c)| (i, crate::linalg::q(c)))
                .collect(),
        )
    };
    FdAlgebra::new(
        vec!["1".into(), "t".into()],
        vec!["e".into(), "t".into()],
        vec![
            vec![t(vec![(0, 1)]), t(vec![(1, 1)])],
            vec![t(vec![(1, 1)]), SparseVec::new()],
        ],
        vec![basis_vec(0)],
        vec!["0".into()],
    )
    .expect("dual numbers are valid")
}

/// `k^n`, semisimple.
pub fn semisimple(n: usize) -> FdAlgebra {
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        row[i] = SparseVec::from_entries(vec![(i, Q::one())]);
    }
    FdAlgebra::new(
        (0..n).map(|i| format!("e{i}")).collect(),
        (0..n).map(|i| format!("e{i}")).collect(),
        table,
        (0..n).map(basis_vec).collect(),
        (0..n).map(|i| i.to_string()).collect(),
    )
    .expect("semisimple algebra is valid")
}
