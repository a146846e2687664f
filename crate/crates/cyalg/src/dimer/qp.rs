use num::{Integer, One, Signed, Zero};
use serde::Serialize;

use super::lp::{maximize, LpOutcome};
use super::matchings::DegreeFunction;
use super::model::{Color, DimerModel};
use super::DimerError;
use crate::linalg::{q, Q};
use crate::quiver_algebra::{
    truncated_rewriting, Arrow, ArrowId, CyData, GradedQuiverPresentation, NCPoly, Path, Quiver,
    Twist, VertexId,
};
use crate::sign_dg::{potential_complex, BimoduleComplex};

/// The dual quiver of a dimer (faces and edges) with its potential
/// `W = Σ_white c_w - Σ_black c_b`.
#[derive(Clone, Debug, Serialize)]
pub struct QuiverWithPotential {
    #[serde(skip)]
    pub quiver: Quiver,
    /// Clockwise cycles around the white vertices.
    pub white_cycles: Vec<Vec<usize>>,
    /// Counterclockwise cycles around the black vertices.
    pub black_cycles: Vec<Vec<usize>>,
    /// For each arrow, its white and black cycle.
    pub cycle_of: Vec<(usize, usize)>,
}

/// Builds the dual quiver: one vertex per face (named `1..F`), one arrow
/// per edge with the white end on its right.
pub fn dual_qp(dimer: &DimerModel) -> Result<QuiverWithPotential, DimerError> {
    let report = dimer.validate()?;
    let left = dimer.dart_faces(&report.faces);
    let vertices: Vec<String> = (1..=report.faces.len()).map(|i| i.to_string()).collect();
    let arrows: Vec<Arrow> = dimer
        .edges()
        .iter()
        .enumerate()
        .map(|(e, ed)| Arrow {
            name: ed.name.clone(),
            source: VertexId(left[dimer.dart(e, ed.white)] as u32),
            target: VertexId(left[dimer.dart(e, ed.black)] as u32),
            degree: 0,
        })
        .collect();
    let quiver = Quiver::new(vertices, arrows)?;
    let cycle = |v: usize, step: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
        let rot = dimer.rotation(v);
        let mut out = vec![rot[0]];
        let mut e = step(v, rot[0]);
        while e != rot[0] {
            out.push(e);
            e = step(v, e);
        }
        out
    };
    let white_cycles: Vec<Vec<usize>> = dimer
        .vertices_of(Color::White)
        .map(|v| cycle(v, &|v, e| dimer.next_cw(v, e)))
        .collect();
    let black_cycles: Vec<Vec<usize>> = dimer
        .vertices_of(Color::Black)
        .map(|v| cycle(v, &|v, e| dimer.next_ccw(v, e)))
        .collect();
    let mut cycle_of = vec![(usize::MAX, usize::MAX); dimer.num_edges()];
    for (i, c) in white_cycles.iter().enumerate() {
        for &a in c {
            cycle_of[a].0 = i;
        }
    }
    for (i, c) in black_cycles.iter().enumerate() {
        for &a in c {
            cycle_of[a].1 = i;
        }
    }
    let qp = QuiverWithPotential {
        quiver,
        white_cycles,
        black_cycles,
        cycle_of,
    };
    debug_assert!(qp.cycles_close());
    Ok(qp)
}

fn path_of(q: &Quiver, arrows: &[usize], at: VertexId) -> Path {
    if arrows.is_empty() {
        return Path::lazy(at);
    }
    let ids: Vec<ArrowId> = arrows.iter().map(|&a| ArrowId(a as u32)).collect();
    Path::from_arrows(q, &ids).expect("cycle arrows compose")
}

/// The cycle rotated to start at `a`, with `a` removed.
fn after(cycle: &[usize], a: usize) -> Vec<usize> {
    let i = cycle
        .iter()
        .position(|&x| x == a)
        .expect("arrow on its cycle");
    cycle[i + 1..].iter().chain(&cycle[..i]).copied().collect()
}

impl QuiverWithPotential {
    fn cycles_close(&self) -> bool {
        let q = &self.quiver;
        self.white_cycles.iter().chain(&self.black_cycles).all(|c| {
            c.iter()
                .enumerate()
                .all(|(i, &a)| q.arrows()[a].target == q.arrows()[c[(i + 1) % c.len()]].source)
        })
    }

    /// Terms of the potential as `(sign, cycle)`.
    pub fn potential(&self) -> Vec<(i64, Vec<usize>)> {
        let w = self.white_cycles.iter().map(|c| (1, c.clone()));
        let b = self.black_cycles.iter().map(|c| (-1, c.clone()));
        w.chain(b).collect()
    }

    pub fn potential_display(&self) -> String {
        let q = &self.quiver;
        let mut s = String::new();
        for (i, (sign, c)) in self.potential().into_iter().enumerate() {
            let word: Vec<&str> = c.iter().map(|&a| q.arrows()[a].name.as_str()).collect();
            match (i, sign) {
                (0, 1) => {}
                (0, _) => s.push('-'),
                (_, 1) => s.push_str(" + "),
                _ => s.push_str(" - "),
            }
            s.push_str(&word.join("*"));
        }
        s
    }

    /// `∂_a W = p_w - p_b` over `q` (any quiver with the same arrows),
    /// a combination of paths from `t(a)` to `s(a)`.
    pub fn derivatives(&self, q: &Quiver) -> Vec<NCPoly> {
        (0..q.num_arrows())
            .map(|a| {
                let (w, b) = self.cycle_of[a];
                let at = q.arrows()[a].target;
                let pw = path_of(q, &after(&self.white_cycles[w], a), at);
                let pb = path_of(q, &after(&self.black_cycles[b], a), at);
                NCPoly::from_terms([(Q::one(), pw), (-Q::one(), pb)])
            })
            .collect()
    }

    /// Positive integer path-order weights under which every vertex cycle
    /// has the same weight, so all `∂_a W` are weight-homogeneous.
    pub fn order_weights(&self) -> Result<Vec<u32>, DimerError> {
        let n = self.quiver.num_arrows();
        let cycles: Vec<&Vec<usize>> = self.white_cycles.iter().chain(&self.black_cycles).collect();
        // Variables t+, t-, s_a with weight(a) = t + s_a; maximize t.
        let rows: Vec<Vec<Q>> = cycles
            .iter()
            .map(|c| {
                let mut r = vec![Q::zero(); n + 2];
                r[0] = q(c.len() as i64);
                r[1] = -q(c.len() as i64);
                for &a in c.iter() {
                    r[2 + a] += q(1);
                }
                r
            })
            .collect();
        let b = vec![q(1); cycles.len()];
        let mut c = vec![Q::zero(); n + 2];
        c[0] = q(1);
        c[1] = -q(1);
        let LpOutcome::Optimal { x, value, .. } = maximize(&rows, &b, &c) else {
            return Err(DimerError::NoOrderWeights);
        };
        if !value.is_positive() {
            return Err(DimerError::NoOrderWeights);
        }
        let w: Vec<Q> = (0..n).map(|a| &value + &x[2 + a]).collect();
        let den = w.iter().fold(num::BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<num::BigInt> = w
            .iter()
            .map(|x| (x * Q::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(num::BigInt::zero(), |g, x| g.gcd(x));
        ints.iter()
            .map(|x| u32::try_from(x / &g).map_err(|_| DimerError::NoOrderWeights))
            .collect()
    }
}

fn graded_quiver(qp: &QuiverWithPotential, d: &DegreeFunction) -> Result<Quiver, DimerError> {
    let n = qp.quiver.num_arrows();
    if d.degrees.len() != n {
        return Err(DimerError::Arity {
            expected: n,
            got: d.degrees.len(),
        });
    }
    let arrows: Vec<Arrow> = qp
        .quiver
        .arrows()
        .iter()
        .zip(&d.degrees)
        .map(|(a, &deg)| Arrow {
            degree: deg,
            ..a.clone()
        })
        .collect();
    Ok(
        Quiver::new(qp.quiver.vertex_names().to_vec(), arrows)?
            .with_weights(qp.order_weights()?)?,
    )
}

/// Jacobian algebra graded by `d`: relations `∂_a W` of degree `l - d(a)`,
/// marked 3-Calabi-Yau of a-invariant `-l`.
pub fn jacobian_presentation(
    qp: &QuiverWithPotential,
    d: &DegreeFunction,
) -> Result<GradedQuiverPresentation, DimerError> {
    let quiver = graded_quiver(qp, d)?;
    let rels = qp.derivatives(&quiver);
    let twist = Twist::identity(&quiver);
    Ok(GradedQuiverPresentation::new(quiver, rels)?
        .with_twist(twist)?
        .with_cy(CyData {
            dimension: 3,
            a_invariant: d.a_invariant(),
        }))
}

/// The four-term complex `P_3 -> P_2 -> P_1 -> P_0` of the Jacobian
/// algebra, checked to square to zero modulo the relations up to `cap`.
pub fn cy3_complex(
    qp: &QuiverWithPotential,
    d: &DegreeFunction,
    cap: Option<u32>,
) -> Result<BimoduleComplex, DimerError> {
    let pres = jacobian_presentation(qp, d)?;
    let derivs = qp.derivatives(&pres.quiver);
    let cplx = potential_complex(&pres, &derivs, d.l)?;
    let cap = cap.unwrap_or_else(|| {
        let wmax = pres.quiver.weights().iter().copied().max().unwrap_or(1);
        pres.max_relation_weight() + 2 * wmax
    });
    let sys = truncated_rewriting(&pres, cap)?;
    if let Some((step, row, col, e)) = cplx.square_defect(&sys) {
        return Err(DimerError::NotComplex {
            step,
            row,
            col,
            entry: e.display(&pres.quiver),
        });
    }
    Ok(cplx)
}
