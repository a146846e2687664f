//! Brute-force graded dimensions: span all paths of a degree and quotient
//! by the slice `{p r q}` of the ideal, using nothing from the rewriting code.

use std::collections::HashMap;

use cyalg::linalg::{Echelon, SparseVec};
use cyalg::quiver_algebra::{GradedQuiverPresentation, Path, VertexId};

/// All paths of the quiver with at most `max_len` arrows.
pub fn all_paths(pres: &GradedQuiverPresentation, max_len: usize) -> Vec<Path> {
    let q = &pres.quiver;
    let mut out: Vec<Path> = q.vertices().map(Path::lazy).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.target()) {
                next.push(p.compose(&Path::arrow(q, a)).unwrap());
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `dim e_from (kQ/I)_degree e_to`, where every path of the degree has at
/// most `max_len` arrows and the ideal slice uses `p r q` of length at most
/// `max_len`.
pub fn graded_dimension(
    pres: &GradedQuiverPresentation,
    degree: i64,
    from: VertexId,
    to: VertexId,
    max_len: usize,
) -> usize {
    let q = &pres.quiver;
    let paths = all_paths(pres, max_len);
    let slot: Vec<&Path> = paths
        .iter()
        .filter(|p| p.degree(q) == degree && p.source() == from && p.target() == to)
        .collect();
    let index: HashMap<&Path, usize> = slot.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut ideal = Echelon::new();
    for r in &pres.relations {
        let rlen = r.terms().map(|(p, _)| p.len()).max().unwrap_or(0);
        let (rs, rt) = r.endpoints().unwrap();
        for left in paths
            .iter()
            .filter(|p| p.source() == from && p.target() == rs)
        {
            for right in paths
                .iter()
                .filter(|p| p.source() == rt && p.target() == to)
            {
                if left.len() + rlen + right.len() > max_len {
                    continue;
                }
                let m = r.left_mul_path(left).right_mul_path(right);
                if m.terms().next().map(|(p, _)| p.degree(q)) != Some(degree) {
                    continue;
                }
                let v = SparseVec::from_entries(
                    m.terms().map(|(p, c)| (index[p], c.clone())).collect(),
                );
                ideal.insert(v);
            }
        }
    }
    slot.len() - ideal.rank()
}

/// Arrow-count matrix of a quiver.
pub fn adjacency(q: &cyalg::quiver_algebra::Quiver) -> Vec<Vec<usize>> {
    let n = q.num_vertices();
    let mut m = vec![vec![0; n]; n];
    for a in q.arrows() {
        m[a.source.idx()][a.target.idx()] += 1;
    }
    m
}

/// Whether some relabelling of vertices carries `m` onto the arrow list
/// `expected` (pairs of vertex indices, repeated for multiple arrows).
pub fn isomorphic(m: &[Vec<usize>], expected: &[(usize, usize)]) -> bool {
    let n = m.len();
    let mut e = vec![vec![0; n]; n];
    for &(s, t) in expected {
        if s >= n || t >= n {
            return false;
        }
        e[s][t] += 1;
    }
    fn extend(
        m: &[Vec<usize>],
        e: &[Vec<usize>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let k = perm.len();
        if k == m.len() {
            return true;
        }
        for c in 0..m.len() {
            if used[c] {
                continue;
            }
            perm.push(c);
            let ok =
                (0..=k).all(|i| m[perm[i]][perm[k]] == e[i][k] && m[perm[k]][perm[i]] == e[k][i]);
            if ok {
                used[c] = true;
                if extend(m, e, perm, used) {
                    return true;
                }
                used[c] = false;
            }
            perm.pop();
        }
        false
    }
    extend(m, &e, &mut Vec::new(), &mut vec![false; n])
}

/// Perfect matchings by testing every edge subset.
pub fn subset_matchings(dimer: &cyalg::dimer::DimerModel) -> Vec<Vec<usize>> {
    let n = dimer.num_edges();
    assert!(n <= 20, "too many edges for the subset oracle");
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let mut hits = vec![0; dimer.num_vertices()];
        for e in (0..n).filter(|e| mask >> e & 1 == 1) {
            hits[dimer.edge(e).black] += 1;
            hits[dimer.edge(e).white] += 1;
        }
        if hits.iter().all(|&h| h == 1) {
            out.push((0..n).filter(|e| mask >> e & 1 == 1).collect());
        }
    }
    out.sort();
    out
}
