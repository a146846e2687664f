//! Exact two-phase simplex for `max c·x` subject to `A x = b`, `x ≥ 0`,
//! with Bland's rule.

use num::{Signed, Zero};

use crate::linalg::{q, Q};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    /// Optimal `x`, with dual `y` satisfying `yᵀA ≥ c` and `yᵀb = c·x`.
    Optimal {
        x: Vec<Q>,
        y: Vec<Q>,
        value: Q,
    },
    /// Farkas vector: `yᵀA ≥ 0` and `yᵀb < 0`.
    Infeasible {
        y: Vec<Q>,
    },
    Unbounded,
}

struct Tableau {
    /// `m` rows of `[A | I | b]` after row operations.
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    n: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        self.rows[i].last().expect("nonempty row")
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        self.basis[r] = c;
    }

    /// `y = c_B B⁻¹`, read off the identity block and undoing row signs.
    fn duals(&self, cost: &[Q], signs: &[Q]) -> Vec<Q> {
        let m = self.rows.len();
        (0..m)
            .map(|k| {
                let mut s = Q::zero();
                for (i, &bi) in self.basis.iter().enumerate() {
                    s += &cost[bi] * &self.rows[i][self.n + k];
                }
                s * &signs[k]
            })
            .collect()
    }

    /// Runs the simplex for `cost` over the columns `allowed`; returns false
    /// when unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> bool {
        loop {
            // Reduced cost c_j - c_B B⁻¹ A_j; enter the first positive (Bland).
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut z = Q::zero();
                for (i, &bi) in self.basis.iter().enumerate() {
                    z += &cost[bi] * &self.rows[i][j];
                }
                (&cost[j] - z).is_positive()
            });
            let Some(j) = entering else { return true };
            let mut best: Option<(Q, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &best {
                        None => true,
                        Some((r, bi)) => {
                            ratio < *r || (ratio == *r && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            match best {
                Some((_, i)) => self.pivot(i, j),
                None => return false,
            }
        }
    }
}

pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let signs: Vec<Q> = b
        .iter()
        .map(|x| if x.is_negative() { -q(1) } else { q(1) })
        .collect();
    let rows: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut r: Vec<Q> = a[i].iter().map(|x| x * &signs[i]).collect();
            r.extend((0..m).map(|k| if k == i { q(1) } else { Q::zero() }));
            r.push(&b[i] * &signs[i]);
            r
        })
        .collect();
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        n,
    };

    let mut phase1 = vec![Q::zero(); n + m];
    for x in &mut phase1[n..] {
        *x = -q(1);
    }
    t.optimize(&phase1, n + m);
    let infeas: Q = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bi)| bi >= n)
        .map(|(i, _)| t.rhs(i).clone())
        .sum();
    if infeas.is_positive() {
        let y = t.duals(&phase1, &signs);
        return LpOutcome::Infeasible { y };
    }
    // Drive zero-level artificials out of the basis where possible.
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero() && !t.basis.contains(&j)) {
                t.pivot(i, j);
            }
        }
    }
    let mut cost = c.to_vec();
    cost.extend(std::iter::repeat_n(Q::zero(), m));
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        if bi < n {
            x[bi] = t.rhs(i).clone();
        }
    }
    let value = x.iter().zip(c).map(|(x, c)| x * c).sum();
    let y = t.duals(&cost, &signs);
    LpOutcome::Optimal { x, y, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q_frac;

    fn row(v: &[i64]) -> Vec<Q> {
        v.iter().map(|x| q(*x)).collect()
    }

    fn check_dual(a: &[Vec<Q>], b: &[Q], c: &[Q], y: &[Q]) -> Q {
        for j in 0..c.len() {
            let s: Q = (0..a.len()).map(|i| &y[i] * &a[i][j]).sum();
            assert!(s >= c[j], "column {j}");
        }
        y.iter().zip(b).map(|(y, b)| y * b).sum()
    }

    #[test]
    fn small_optimum_with_certificate() {
        // max x0 + x1 with x0 + 2x1 + s0 = 4, 3x0 + x1 + s1 = 6.
        let a = vec![row(&[1, 2, 1, 0]), row(&[3, 1, 0, 1])];
        let b = row(&[4, 6]);
        let c = row(&[1, 1, 0, 0]);
        let LpOutcome::Optimal { x, y, value } = maximize(&a, &b, &c) else {
            panic!()
        };
        assert_eq!(value, q_frac(14, 5));
        assert_eq!(x[0], q_frac(8, 5));
        assert_eq!(check_dual(&a, &b, &c, &y), value);
    }

    #[test]
    fn infeasible_system() {
        // x0 + x1 = 1 and x0 + x1 = 2.
        let a = vec![row(&[1, 1]), row(&[1, 1])];
        let b = row(&[1, 2]);
        let LpOutcome::Infeasible { y } = maximize(&a, &b, &row(&[0, 0])) else {
            panic!()
        };
        for j in 0..2 {
            assert!((&y[0] * &a[0][j] + &y[1] * &a[1][j]) >= q(0));
        }
        assert!((&y[0] * &b[0] + &y[1] * &b[1]) < q(0));
    }

    #[test]
    fn negative_right_hand_side() {
        // -x0 = -3, maximize -x0.
        let a = vec![row(&[-1])];
        let LpOutcome::Optimal { value, y, .. } = maximize(&a, &row(&[-3]), &row(&[-1])) else {
            panic!()
        };
        assert_eq!(value, q(-3));
        assert_eq!(check_dual(&a, &row(&[-3]), &row(&[-1]), &y), q(-3));
    }

    #[test]
    fn unbounded() {
        let a = vec![row(&[1, -1])];
        assert_eq!(
            maximize(&a, &row(&[0]), &row(&[1, 0])),
            LpOutcome::Unbounded
        );
    }
}
