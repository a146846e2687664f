use num::One;

use super::complex::{free_derivative, BimoduleComplex, FreeSummand, Setting, TensorPoly};
use super::SignDgError;
use crate::linalg::{sign_pow, Q};
use crate::quiver_algebra::{compare_ideals, GradedQuiverPresentation, NCPoly, Path, VertexId};

fn empty_matrix(rows: usize, cols: usize) -> Vec<Vec<TensorPoly>> {
    vec![vec![TensorPoly::zero(); cols]; rows]
}

/// Koszul bimodule resolution of a commutative polynomial ring
/// `k[x_1..x_m]`: `P_k = ⊕_{|S|=k} R ⊗ R(-Σ_{i∈S} deg x_i)` with
/// `d(e_S) = Σ_{i∈S} (-1)^{pos(i)} (x_i ⊗ 1 - 1 ⊗ x_i) e_{S∖i}`.
pub fn koszul_complex(pres: &GradedQuiverPresentation) -> Result<BimoduleComplex, SignDgError> {
    let q = &pres.quiver;
    if q.num_vertices() != 1 {
        return Err(SignDgError::NotCommutative("more than one vertex".into()));
    }
    let v = VertexId(0);
    let m = q.num_arrows();
    let x: Vec<Path> = q.arrow_ids().map(|a| Path::arrow(q, a)).collect();
    let mut comm = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let xy = x[i].compose(&x[j]).expect("loops compose");
            let yx = x[j].compose(&x[i]).expect("loops compose");
            comm.push(NCPoly::from_terms([(Q::one(), xy), (-Q::one(), yx)]));
        }
    }
    let cap = pres
        .max_relation_weight()
        .max(2 * q.weights().iter().copied().max().unwrap_or(1));
    if !compare_ideals(q, &pres.relations, &comm, cap)?.agree() {
        return Err(SignDgError::NotCommutative(
            "relations do not generate the commutators".into(),
        ));
    }
    if m > 16 {
        return Err(SignDgError::Shape(
            "too many variables for a Koszul complex".into(),
        ));
    }
    // Subsets of size k, each as a sorted index list, for k = m down to 0.
    let subsets_of = |k: usize| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0u32..1 << m)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..m).filter(|i| s >> i & 1 == 1).collect())
            .collect();
        out.sort();
        out
    };
    let levels: Vec<Vec<Vec<usize>>> = (0..=m).rev().map(subsets_of).collect();
    let terms: Vec<Vec<FreeSummand>> = levels
        .iter()
        .map(|lv| {
            lv.iter()
                .map(|s| FreeSummand {
                    left: v,
                    right: v,
                    shift: -s.iter().map(|&i| q.arrows()[i].degree).sum::<i64>(),
                })
                .collect()
        })
        .collect();
    let lazy = Path::lazy(v);
    let diffs = (0..m)
        .map(|k| {
            let (src, tgt) = (&levels[k], &levels[k + 1]);
            let mut d = empty_matrix(src.len(), tgt.len());
            for (a, s) in src.iter().enumerate() {
                for (pos, &i) in s.iter().enumerate() {
                    let rest: Vec<usize> = s.iter().copied().filter(|&j| j != i).collect();
                    let b = tgt
                        .iter()
                        .position(|t| *t == rest)
                        .expect("face of a subset");
                    let sg = sign_pow(pos as i64);
                    d[a][b].add_term(sg.clone(), x[i].clone(), lazy.clone());
                    d[a][b].add_term(-sg, lazy.clone(), x[i].clone());
                }
            }
            d
        })
        .collect();
    BimoduleComplex::new(pres.clone(), Setting::Graded, -(m as i64), terms, diffs)
}

fn vertex_term(pres: &GradedQuiverPresentation) -> Vec<FreeSummand> {
    pres.quiver
        .vertices()
        .map(|v| FreeSummand {
            left: v,
            right: v,
            shift: 0,
        })
        .collect()
}

fn arrow_term(pres: &GradedQuiverPresentation) -> Vec<FreeSummand> {
    let q = &pres.quiver;
    q.arrows()
        .iter()
        .map(|a| FreeSummand {
            left: a.source,
            right: a.target,
            shift: -a.degree,
        })
        .collect()
}

/// `d(ε_a) = a ⊗ e_{t(a)} - e_{s(a)} ⊗ a`.
fn arrow_differential(pres: &GradedQuiverPresentation) -> Vec<Vec<TensorPoly>> {
    let q = &pres.quiver;
    let mut d = empty_matrix(q.num_arrows(), q.num_vertices());
    for a in q.arrow_ids() {
        let arr = q.arrow(a);
        let p = Path::arrow(q, a);
        d[a.idx()][arr.target.idx()].add_term(Q::one(), p.clone(), Path::lazy(arr.target));
        d[a.idx()][arr.source.idx()].add_term(-Q::one(), Path::lazy(arr.source), p);
    }
    d
}

/// Rows `Δ(r)` for each relation: the component of `ε_a` collects the
/// tensors obtained by deleting one occurrence of `a`.
fn relation_rows(pres: &GradedQuiverPresentation, rels: &[NCPoly]) -> Vec<Vec<TensorPoly>> {
    let q = &pres.quiver;
    rels.iter()
        .map(|r| {
            let mut row = vec![TensorPoly::zero(); q.num_arrows()];
            for (a, t) in free_derivative(q, r) {
                row[a] = t;
            }
            row
        })
        .collect()
}

fn relation_summand(
    pres: &GradedQuiverPresentation,
    r: &NCPoly,
) -> Result<FreeSummand, SignDgError> {
    let q = &pres.quiver;
    let (s, t) = r
        .endpoints()
        .ok_or_else(|| SignDgError::Shape("zero relation".into()))?;
    let d = r
        .homogeneous_degree(q)
        .ok_or_else(|| SignDgError::Shape(format!("inhomogeneous relation {}", r.display(q))))?;
    Ok(FreeSummand {
        left: s,
        right: t,
        shift: -d,
    })
}

/// `0 -> ⊕_r R e_s ⊗ e_t R -> ⊕_a R e_s ⊗ e_t R -> ⊕_i R e_i ⊗ e_i R`
/// built from the relations; a resolution exactly when `R` has global
/// dimension at most two and the relations are minimal.
pub fn relation_complex(pres: &GradedQuiverPresentation) -> Result<BimoduleComplex, SignDgError> {
    let rels: Vec<NCPoly> = pres
        .relations
        .iter()
        .filter(|r| !r.is_zero())
        .cloned()
        .collect();
    let rel_terms = rels
        .iter()
        .map(|r| relation_summand(pres, r))
        .collect::<Result<Vec<_>, _>>()?;
    let mut terms = vec![arrow_term(pres), vertex_term(pres)];
    let mut diffs = vec![arrow_differential(pres)];
    let mut start = -1;
    if !rels.is_empty() {
        terms.insert(0, rel_terms);
        diffs.insert(0, relation_rows(pres, &rels));
        start = -2;
    }
    BimoduleComplex::new(pres.clone(), Setting::Graded, start, terms, diffs)
}

/// Length-three complex of a quiver with potential of degree `degree`,
/// given the cyclic derivatives `derivatives[a] = ∂_a W` (paths from
/// `t(a)` to `s(a)`):
/// `d(ω_i) = Σ_{s(a)=i} (a ⊗ 1) ρ_a - Σ_{t(a)=i} (1 ⊗ a) ρ_a`.
pub fn potential_complex(
    pres: &GradedQuiverPresentation,
    derivatives: &[NCPoly],
    degree: i64,
) -> Result<BimoduleComplex, SignDgError> {
    let q = &pres.quiver;
    if derivatives.len() != q.num_arrows() {
        return Err(SignDgError::Shape(
            "need one cyclic derivative per arrow".into(),
        ));
    }
    let rho: Vec<FreeSummand> = q
        .arrows()
        .iter()
        .map(|a| FreeSummand {
            left: a.target,
            right: a.source,
            shift: -(degree - a.degree),
        })
        .collect();
    for (a, r) in q.arrow_ids().zip(derivatives) {
        if r.is_zero() {
            continue;
        }
        let arr = q.arrow(a);
        let ok = r.terms().all(|(p, _)| {
            p.source() == arr.target
                && p.target() == arr.source
                && p.degree(q) == degree - arr.degree
        });
        if !ok {
            return Err(SignDgError::Shape(format!(
                "derivative for `{}` has the wrong endpoints or degree",
                arr.name
            )));
        }
    }
    let omega: Vec<FreeSummand> = q
        .vertices()
        .map(|v| FreeSummand {
            left: v,
            right: v,
            shift: -degree,
        })
        .collect();
    let mut d3 = empty_matrix(q.num_vertices(), q.num_arrows());
    for a in q.arrow_ids() {
        let arr = q.arrow(a);
        let p = Path::arrow(q, a);
        d3[arr.source.idx()][a.idx()].add_term(Q::one(), p.clone(), Path::lazy(arr.source));
        d3[arr.target.idx()][a.idx()].add_term(-Q::one(), Path::lazy(arr.target), p);
    }
    let d2 = relation_rows(pres, derivatives);
    let terms = vec![omega, rho, arrow_term(pres), vertex_term(pres)];
    let diffs = vec![d3, d2, arrow_differential(pres)];
    BimoduleComplex::new(pres.clone(), Setting::Graded, -3, terms, diffs)
}
