use super::algebra::{basis_vec, shift, trivial_extension, FdAlgebra, FdBimodule};
use super::AbcError;
use crate::linalg::SparseVec;

/// Where a basis element of `Ũ` sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TildePart {
    /// Copy of `A` from block `l + 1` to block `l`.
    Super { block: usize, elem: usize },
    /// Copy of `U` from the first block to the last.
    Corner { elem: usize },
}

#[derive(Clone, Debug)]
pub struct Tilde {
    pub n: usize,
    pub algebra: FdAlgebra,
    pub bimodule: FdBimodule,
    pub extension: FdAlgebra,
    pub parts: Vec<TildePart>,
}

/// `Ã = A^n`, `Ũ` with copies of `A` on the superdiagonal and `U` in the
/// corner, `B̃ = Ã ⋉ Ũ`. For `n = 1` this returns `(A, U, A ⋉ U)` unchanged.
pub fn build_tilde(a: &FdAlgebra, u: &FdBimodule, n: usize) -> Result<Tilde, AbcError> {
    if n == 0 {
        return Err(AbcError::InvalidParameter("n must be positive".into()));
    }
    if n == 1 {
        let parts = (0..u.dim())
            .map(|elem| TildePart::Corner { elem })
            .collect();
        return Ok(Tilde {
            n,
            algebra: a.clone(),
            bimodule: u.clone(),
            extension: trivial_extension(a, u),
            parts,
        });
    }
    let da = a.dim();
    let du = u.dim();
    let at = a.power(n);
    let mut parts = Vec::new();
    let mut labels = Vec::new();
    let mut names = Vec::new();
    for l in 0..n - 1 {
        for b in 0..da {
            parts.push(TildePart::Super { block: l, elem: b });
            labels.push(format!("v{l}:{}", a.label(b)));
            names.push(format!("v_{}@{l}", a.name(b)));
        }
    }
    let corner_start = parts.len();
    for x in 0..du {
        parts.push(TildePart::Corner { elem: x });
        labels.push(format!("c:{}", u.labels()[x]));
        names.push(u.names()[x].clone());
    }
    let nt = parts.len();
    let mut left = vec![vec![SparseVec::new(); nt]; at.dim()];
    let mut right = vec![vec![SparseVec::new(); at.dim()]; nt];
    for m in 0..n {
        for b in 0..da {
            let g = m * da + b;
            let bv = basis_vec(b);
            for (t, part) in parts.iter().enumerate() {
                match *part {
                    TildePart::Super { block, elem } => {
                        let ev = basis_vec(elem);
                        let base = block * da;
                        if m == block + 1 {
                            left[g][t] = shift(&a.mul(&bv, &ev), base);
                        }
                        if m == block {
                            right[t][g] = shift(&a.mul(&ev, &bv), base);
                        }
                    }
                    TildePart::Corner { elem } => {
                        let ev = basis_vec(elem);
                        if m == 0 {
                            left[g][t] = shift(&u.left_act(&bv, &ev), corner_start);
                        }
                        if m == n - 1 {
                            right[t][g] = shift(&u.right_act(&ev, &bv), corner_start);
                        }
                    }
                }
            }
        }
    }
    let ut = FdBimodule::new(labels, names, left, right);
    let bt = trivial_extension(&at, &ut);
    Ok(Tilde {
        n,
        algebra: at,
        bimodule: ut,
        extension: bt,
        parts,
    })
}
