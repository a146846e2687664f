use num::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::lp::{maximize, LpOutcome};
use super::model::DimerModel;
use super::DimerError;
use crate::linalg::{fmt_q, q, Q};

fn as_strings<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

fn as_string<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(v))
}

/// Positive edge weights summing to 2 around each vertex, with
/// `Σ (1 - R) = 2` around each face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RCharge {
    #[serde(serialize_with = "as_strings")]
    pub values: Vec<Q>,
}

/// Proof that no R-charge exists. Rows are the vertex equations followed
/// by the face equations of [`constraint_system`]; columns are `t⁺, t⁻`
/// and one slack per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `yᵀA ≥ 0`, `yᵀb < 0`: the equations have no solution with slacks ≥ 0.
    Farkas {
        #[serde(serialize_with = "as_strings")]
        y: Vec<Q>,
    },
    /// `yᵀA ≥ c`, `yᵀb ≤ 0`: every solution has margin at most 0.
    MarginBound {
        #[serde(serialize_with = "as_strings")]
        y: Vec<Q>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Consistency {
    Feasible {
        charge: RCharge,
        #[serde(serialize_with = "as_string")]
        margin: Q,
    },
    Infeasible {
        certificate: Certificate,
    },
}

struct System {
    a: Vec<Vec<Q>>,
    b: Vec<Q>,
    c: Vec<Q>,
}

/// `R(e) = t + s_e` with `s_e ≥ 0`; maximize `t = t⁺ - t⁻`.
fn constraint_system(dimer: &DimerModel) -> Result<System, DimerError> {
    let faces = dimer.validate()?.faces;
    let n = dimer.num_edges() + 2;
    let row = |len: usize, edges: &mut dyn Iterator<Item = usize>| {
        let mut r = vec![Q::zero(); n];
        r[0] = q(len as i64);
        r[1] = -q(len as i64);
        for e in edges {
            r[2 + e] += q(1);
        }
        r
    };
    let mut a = Vec::new();
    let mut b = Vec::new();
    for v in 0..dimer.num_vertices() {
        let rot = dimer.rotation(v);
        a.push(row(rot.len(), &mut rot.iter().copied()));
        b.push(q(2));
    }
    for f in &faces {
        a.push(row(f.len(), &mut f.darts.iter().map(|&(e, _)| e)));
        b.push(q(f.len() as i64 - 2));
    }
    let mut c = vec![Q::zero(); n];
    c[0] = q(1);
    c[1] = -q(1);
    Ok(System { a, b, c })
}

fn combine(sys: &System, y: &[Q]) -> (Vec<Q>, Q) {
    let cols = (0..sys.c.len())
        .map(|j| sys.a.iter().zip(y).map(|(r, y)| &r[j] * y).sum())
        .collect();
    let rhs = sys.b.iter().zip(y).map(|(b, y)| b * y).sum();
    (cols, rhs)
}

/// Solves for an R-charge with the largest minimum value, exactly.
pub fn consistency_check(dimer: &DimerModel) -> Result<Consistency, DimerError> {
    let sys = constraint_system(dimer)?;
    Ok(match maximize(&sys.a, &sys.b, &sys.c) {
        LpOutcome::Infeasible { y } => Consistency::Infeasible {
            certificate: Certificate::Farkas { y },
        },
        LpOutcome::Optimal { x, y, value } => {
            if value.is_positive() {
                let values = x[2..].iter().map(|s| s + &value).collect();
                Consistency::Feasible {
                    charge: RCharge { values },
                    margin: value,
                }
            } else {
                Consistency::Infeasible {
                    certificate: Certificate::MarginBound { y },
                }
            }
        }
        // Each vertex row bounds t from above.
        LpOutcome::Unbounded => unreachable!("margin bounded by a vertex equation"),
    })
}

impl RCharge {
    /// Exact check of positivity and both equation families.
    pub fn verify(&self, dimer: &DimerModel) -> Result<bool, DimerError> {
        let faces = dimer.validate()?.faces;
        let r = &self.values;
        if r.len() != dimer.num_edges() || r.iter().any(|x| !x.is_positive()) {
            return Ok(false);
        }
        let vertices_ok = (0..dimer.num_vertices())
            .all(|v| dimer.rotation(v).iter().map(|&e| &r[e]).sum::<Q>() == q(2));
        let faces_ok = faces
            .iter()
            .all(|f| f.darts.iter().map(|&(e, _)| q(1) - &r[e]).sum::<Q>() == q(2));
        Ok(vertices_ok && faces_ok)
    }
}

impl Certificate {
    pub fn verify(&self, dimer: &DimerModel) -> Result<bool, DimerError> {
        let sys = constraint_system(dimer)?;
        Ok(match self {
            Certificate::Farkas { y } => {
                if y.len() != sys.a.len() {
                    return Ok(false);
                }
                let (cols, rhs) = combine(&sys, y);
                cols.iter().all(|x| !x.is_negative()) && rhs.is_negative()
            }
            Certificate::MarginBound { y } => {
                if y.len() != sys.a.len() {
                    return Ok(false);
                }
                let (cols, rhs) = combine(&sys, y);
                cols.iter().zip(&sys.c).all(|(x, c)| x >= c) && !rhs.is_positive()
            }
        })
    }
}
