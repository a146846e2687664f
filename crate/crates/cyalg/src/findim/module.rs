use serde::Serialize;

use num::Zero;

use super::radical::{radical, simple_characters, Radical};
use super::FindimError;
use crate::abc::FdAlgebra;
use crate::linalg::{kernel, Echelon, SparseVec};

/// Right module: `act[m][k]` is `v_m . b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FdModule {
    dim: usize,
    act: Vec<Vec<SparseVec>>,
}

impl FdModule {
    pub fn new(dim: usize, act: Vec<Vec<SparseVec>>) -> Self {
        assert_eq!(act.len(), dim);
        Self { dim, act }
    }

    pub fn zero() -> Self {
        Self {
            dim: 0,
            act: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn act(&self, v: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (m, x) in v.iter() {
            for (k, y) in b.iter() {
                let xy = x * y;
                for (t, c) in self.act[*m][*k].iter() {
                    acc.push((*t, &xy * c));
                }
            }
        }
        SparseVec::from_entries(acc)
    }

    /// Checks `(v a) b = v (ab)` and that the unit acts as the identity.
    pub fn check(&self, alg: &FdAlgebra) -> Result<(), FindimError> {
        let one = alg.one();
        for m in 0..self.dim {
            let v = SparseVec::unit(m);
            if self.act(&v, &one) != v {
                return Err(FindimError::BadModule(
                    "unit does not act as identity".into(),
                ));
            }
            for a in 0..alg.dim() {
                let va = self.act(&v, &SparseVec::unit(a));
                for b in 0..alg.dim() {
                    let bv = SparseVec::unit(b);
                    if self.act(&va, &bv) != self.act(&v, alg.basis_product(a, b)) {
                        return Err(FindimError::BadModule(format!(
                            "action not associative at ({m}, {a}, {b})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Submodule with the given basis (assumed closed under the action).
    pub fn restrict(&self, basis: &[SparseVec], alg_dim: usize) -> FdModule {
        let mut e = Echelon::tracking();
        for v in basis {
            e.insert_tracked(v.clone());
        }
        let act = basis
            .iter()
            .map(|v| {
                (0..alg_dim)
                    .map(|k| {
                        e.solve(&self.act(v, &SparseVec::unit(k)))
                            .expect("basis spans a submodule")
                    })
                    .collect()
            })
            .collect();
        FdModule {
            dim: basis.len(),
            act,
        }
    }

    /// Same module in the basis `w_i = Σ_j p[i][j] v_j`; `p` must be
    /// invertible.
    pub fn change_basis(&self, p: &[SparseVec], alg_dim: usize) -> FdModule {
        self.restrict(p, alg_dim)
    }

    /// Right regular module `B_B`.
    pub fn right_regular(alg: &FdAlgebra) -> FdModule {
        let n = alg.dim();
        FdModule {
            dim: n,
            act: (0..n)
                .map(|m| (0..n).map(|k| alg.basis_product(m, k).clone()).collect())
                .collect(),
        }
    }

    /// `D(_B B)` as a right module: `(f . b)(x) = f(b x)`.
    pub fn dual_left_regular(alg: &FdAlgebra) -> FdModule {
        let n = alg.dim();
        let mut act = vec![vec![Vec::new(); n]; n];
        for k in 0..n {
            for t in 0..n {
                for (m, c) in alg.basis_product(k, t).iter() {
                    act[*m][k].push((t, c.clone()));
                }
            }
        }
        FdModule {
            dim: n,
            act: act
                .into_iter()
                .map(|row| row.into_iter().map(SparseVec::from_entries).collect())
                .collect(),
        }
    }

    /// Simple top at idempotent `i`.
    pub fn simple(alg: &FdAlgebra, i: usize) -> Result<FdModule, FindimError> {
        let chars = simple_characters(alg)?;
        let act = chars[i]
            .iter()
            .map(|x| {
                if x.is_zero() {
                    SparseVec::new()
                } else {
                    SparseVec::from_entries(vec![(0, x.clone())])
                }
            })
            .collect();
        Ok(FdModule {
            dim: 1,
            act: vec![act],
        })
    }
}

/// Minimal projective resolution data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution {
    /// `betti[k][i]`: multiplicity of `e_i B` in the `k`-th term.
    pub betti: Vec<Vec<usize>>,
    /// Dimension of the `k`-th syzygy (`syzygy_dims[0]` is the module).
    pub syzygy_dims: Vec<usize>,
    /// `Some(k)` if the `k`-th syzygy vanished (projective dimension `k - 1`).
    pub finished_at: Option<usize>,
}

impl Resolution {
    pub fn projective_dimension(&self) -> Option<usize> {
        self.finished_at.map(|k| k.saturating_sub(1))
    }
}

/// Projective cover `P -> M` and its kernel.
fn cover_and_syzygy(alg: &FdAlgebra, rad: &Radical, m: &FdModule) -> (Vec<usize>, FdModule) {
    let n = alg.dim();
    let mut mj = Echelon::new();
    for v in 0..m.dim() {
        for r in rad.basis() {
            let x = m.act(&SparseVec::unit(v), r);
            if !x.is_zero() {
                mj.insert(x);
            }
        }
    }
    let mut lifts: Vec<(usize, SparseVec)> = Vec::new();
    let mut betti = vec![0; alg.num_idempotents()];
    for (i, e) in alg.idempotents().iter().enumerate() {
        for v in 0..m.dim() {
            let x = m.act(&SparseVec::unit(v), e);
            if !x.is_zero() && mj.insert(x.clone()) {
                lifts.push((i, x));
                betti[i] += 1;
            }
        }
    }
    // Bases of the indecomposable projectives e_i B.
    let proj_basis: Vec<Vec<SparseVec>> = alg
        .idempotents()
        .iter()
        .map(|e| {
            let mut ech = Echelon::new();
            for k in 0..n {
                let x = alg.mul(e, &SparseVec::unit(k));
                if !x.is_zero() {
                    ech.insert(x);
                }
            }
            ech.rows().to_vec()
        })
        .collect();
    let mut images = Vec::new();
    let mut offsets = Vec::new();
    let mut p_elems: Vec<SparseVec> = Vec::new();
    for (i, lift) in &lifts {
        offsets.push(p_elems.len());
        for b in &proj_basis[*i] {
            images.push(m.act(lift, b));
            p_elems.push(b.clone());
        }
    }
    let pdim = p_elems.len();
    let ker = kernel(&images);
    if ker.is_empty() {
        return (betti, FdModule::zero());
    }
    // Action on P, summand by summand.
    let mut act = vec![vec![SparseVec::new(); n]; pdim];
    for (s, (i, _)) in lifts.iter().enumerate() {
        let mut e = Echelon::tracking();
        for b in &proj_basis[*i] {
            e.insert_tracked(b.clone());
        }
        let off = offsets[s];
        for (t, b) in proj_basis[*i].iter().enumerate() {
            for (k, slot) in act[off + t].iter_mut().enumerate() {
                let prod = alg.mul(b, &SparseVec::unit(k));
                let c = e.solve(&prod).expect("e_i B is a right ideal");
                *slot =
                    SparseVec::from_entries(c.iter().map(|(x, y)| (x + off, y.clone())).collect());
            }
        }
    }
    let p = FdModule::new(pdim, act);
    (betti, p.restrict(&ker, n))
}

/// Minimal projective resolution of `m`, computed for at most `max_len`
/// syzygy steps.
pub fn projective_resolution(
    alg: &FdAlgebra,
    m: &FdModule,
    max_len: usize,
) -> Result<Resolution, FindimError> {
    let rad = radical(alg)?;
    Ok(resolve_with(alg, &rad, m, max_len))
}

pub(crate) fn resolve_with(
    alg: &FdAlgebra,
    rad: &Radical,
    m: &FdModule,
    max_len: usize,
) -> Resolution {
    let mut betti = Vec::new();
    let mut dims = vec![m.dim()];
    let mut cur = m.clone();
    if cur.is_zero() {
        return Resolution {
            betti,
            syzygy_dims: dims,
            finished_at: Some(0),
        };
    }
    for k in 0..=max_len {
        let (b, syz) = cover_and_syzygy(alg, rad, &cur);
        betti.push(b);
        dims.push(syz.dim());
        if syz.is_zero() {
            return Resolution {
                betti,
                syzygy_dims: dims,
                finished_at: Some(k + 1),
            };
        }
        cur = syz;
    }
    Resolution {
        betti,
        syzygy_dims: dims,
        finished_at: None,
    }
}
