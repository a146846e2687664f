use super::complex::{BimoduleComplex, FreeSummand, Setting};
use super::SignDgError;
use crate::linalg::sign_pow;

/// Rewrites each free graded bimodule `R^e(l)` as the DG module
/// `(R^dg)^e[l]`; an entry `u ⊗ v` landing in a summand of shift `m` picks
/// up the sign `(-1)^{m|u|}`.
pub fn dg_transport(cplx: &BimoduleComplex) -> Result<BimoduleComplex, SignDgError> {
    if cplx.setting != Setting::Graded {
        return Err(SignDgError::NotFree("input is already a DG complex".into()));
    }
    let q = cplx.quiver();
    let diffs = cplx
        .diffs
        .iter()
        .enumerate()
        .map(|(k, d)| {
            d.iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .map(|(j, e)| {
                            let m = cplx.terms[k + 1][j].shift;
                            e.map_terms(|u, v, c| {
                                (c * sign_pow(m * u.degree(q)), u.clone(), v.clone())
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    BimoduleComplex::new(
        cplx.presentation.clone(),
        Setting::Dg,
        cplx.start,
        cplx.terms.clone(),
        diffs,
    )
}

/// Termwise `Hom(-, R^e)`: terms reversed, `(s, t, l) ↦ (t, s, -l)`,
/// differentials transposed. Entries `u ⊗ v` become `v ⊗ u`. In the DG
/// setting an entry of the map leaving position `p`, from a summand of
/// shift `l` to one of shift `m`, is multiplied by
/// `(-1)^{p + m(l+1) + |u||v|}`.
pub fn dualize(cplx: &BimoduleComplex) -> Result<BimoduleComplex, SignDgError> {
    let q = cplx.quiver();
    let n = cplx.terms.len();
    let terms: Vec<Vec<FreeSummand>> = cplx
        .terms
        .iter()
        .rev()
        .map(|t| {
            t.iter()
                .map(|g| FreeSummand {
                    left: g.right,
                    right: g.left,
                    shift: -g.shift,
                })
                .collect()
        })
        .collect();
    let dg = cplx.setting == Setting::Dg;
    let diffs = (0..n - 1)
        .map(|k| {
            let src = n - 2 - k;
            let d = &cplx.diffs[src];
            let p = cplx.position(src);
            (0..terms[k].len())
                .map(|j| {
                    let m = cplx.terms[src + 1][j].shift;
                    (0..terms[k + 1].len())
                        .map(|i| {
                            let l = cplx.terms[src][i].shift;
                            d[i][j].map_terms(|u, v, c| {
                                let c = if dg {
                                    c * sign_pow(p + m * (l + 1) + u.degree(q) * v.degree(q))
                                } else {
                                    c.clone()
                                };
                                (c, v.clone(), u.clone())
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let start = -(cplx.start + n as i64 - 1);
    BimoduleComplex::new(cplx.presentation.clone(), cplx.setting, start, terms, diffs)
}
