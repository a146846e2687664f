use serde::Serialize;

use super::model::{Color, DimerModel};
use super::DimerError;

pub const DEFAULT_MATCHING_CAP: usize = 1_000_000;

/// Edge indices of a perfect matching, increasing.
pub type Matching = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matchings {
    pub matchings: Vec<Matching>,
    /// Set when enumeration stopped at the cap.
    pub truncated: bool,
}

struct Search<'a> {
    dimer: &'a DimerModel,
    whites: Vec<usize>,
    used: Vec<bool>,
    chosen: Vec<usize>,
    out: Vec<Matching>,
    cap: usize,
    truncated: bool,
}

impl Search<'_> {
    fn go(&mut self, i: usize) {
        if self.truncated {
            return;
        }
        if i == self.whites.len() {
            if self.out.len() == self.cap {
                self.truncated = true;
                return;
            }
            let mut m = self.chosen.clone();
            m.sort_unstable();
            self.out.push(m);
            return;
        }
        let w = self.whites[i];
        let mut edges = self.dimer.rotation(w).to_vec();
        edges.sort_unstable();
        for e in edges {
            let b = self.dimer.edge(e).black;
            if self.used[b] {
                continue;
            }
            self.used[b] = true;
            self.chosen.push(e);
            self.go(i + 1);
            self.chosen.pop();
            self.used[b] = false;
        }
    }
}

/// All perfect matchings, by backtracking over white vertices; at most
/// `cap` are returned, sorted.
pub fn perfect_matchings(dimer: &DimerModel, cap: usize) -> Matchings {
    let whites: Vec<usize> = dimer.vertices_of(Color::White).collect();
    if whites.len() != dimer.vertices_of(Color::Black).count() {
        return Matchings {
            matchings: Vec::new(),
            truncated: false,
        };
    }
    let mut s = Search {
        dimer,
        whites,
        used: vec![false; dimer.num_vertices()],
        chosen: Vec::new(),
        out: Vec::new(),
        cap,
        truncated: false,
    };
    s.go(0);
    let mut matchings = s.out;
    matchings.sort();
    Matchings {
        matchings,
        truncated: s.truncated,
    }
}

/// Integer edge degrees whose sum around every vertex is the constant `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeFunction {
    pub degrees: Vec<i64>,
    pub l: i64,
}

impl DegreeFunction {
    pub fn new(dimer: &DimerModel, degrees: Vec<i64>) -> Result<Self, DimerError> {
        if degrees.len() != dimer.num_edges() {
            return Err(DimerError::Arity {
                expected: dimer.num_edges(),
                got: degrees.len(),
            });
        }
        let sums: Vec<i64> = (0..dimer.num_vertices())
            .map(|v| dimer.rotation(v).iter().map(|&e| degrees[e]).sum())
            .collect();
        let l = sums.first().copied().unwrap_or(0);
        if sums.iter().any(|&s| s != l) {
            return Err(DimerError::NotConstant(sums));
        }
        Ok(Self { degrees, l })
    }

    pub fn a_invariant(&self) -> i64 {
        -self.l
    }
}

/// `d(e) = Σ_k c_k [e ∈ P_k]`.
pub fn grading_from_matchings(
    dimer: &DimerModel,
    matchings: &[Matching],
    coefficients: &[i64],
) -> Result<DegreeFunction, DimerError> {
    if matchings.len() != coefficients.len() {
        return Err(DimerError::Arity {
            expected: matchings.len(),
            got: coefficients.len(),
        });
    }
    let mut d = vec![0i64; dimer.num_edges()];
    for (m, &c) in matchings.iter().zip(coefficients) {
        for &e in m {
            d[e] += c;
        }
    }
    DegreeFunction::new(dimer, d)
}
