use std::collections::HashMap;

use super::path::{NCPoly, Path};
use super::quiver::{ArrowId, Quiver, VertexId};
use super::QuiverError;
use crate::linalg::{Echelon, Inserted, SparseVec};

/// A finite-dimensional algebra receiving a map from a path algebra:
/// vertices go to idempotents and arrows to chosen elements.
pub trait PathRepresentation {
    fn dim(&self) -> usize;
    fn vertex_image(&self, v: VertexId) -> SparseVec;
    fn arrow_image(&self, a: ArrowId) -> SparseVec;
    fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec;
}

/// Minimal generators of the kernel of `kQ -> alg`, found length by length
/// up to `cap`. Each generator is a combination of parallel paths of length
/// at most its own length that is not already in the ideal generated by
/// earlier generators.
pub fn relations_from_structure(
    alg: &impl PathRepresentation,
    q: &Quiver,
    cap: usize,
) -> Result<Vec<NCPoly>, QuiverError> {
    let n = q.num_vertices();
    // paths[len] = all paths of exactly that length with their images.
    let mut by_len: Vec<Vec<(Path, SparseVec)>> = vec![q
        .vertices()
        .map(|v| (Path::lazy(v), alg.vertex_image(v)))
        .collect()];
    for len in 1..=cap {
        let mut next = Vec::new();
        for (p, img) in &by_len[len - 1] {
            for a in q.arrows_from(p.target()) {
                let ext = p.compose(&Path::arrow(q, a)).expect("composable");
                let im = if p.is_lazy() {
                    alg.arrow_image(a)
                } else {
                    alg.mul(img, &alg.arrow_image(a))
                };
                next.push((ext, im));
            }
        }
        by_len.push(next);
    }

    let mut span = Echelon::new();
    for level in &by_len {
        for (_, im) in level {
            span.insert(im.clone());
        }
    }
    if span.rank() < alg.dim() {
        return Err(QuiverError::NotSurjective {
            cap,
            rank: span.rank(),
            dim: alg.dim(),
        });
    }

    let mut gens: Vec<NCPoly> = Vec::new();
    for len in 1..=cap {
        for s in 0..n {
            for t in 0..n {
                let (s, t) = (VertexId(s as u32), VertexId(t as u32));
                let domain: Vec<&(Path, SparseVec)> = by_len[..=len]
                    .iter()
                    .flatten()
                    .filter(|(p, _)| p.source() == s && p.target() == t)
                    .collect();
                if domain.is_empty() {
                    continue;
                }
                let pos: HashMap<&Path, usize> = domain
                    .iter()
                    .enumerate()
                    .map(|(i, (p, _))| (p, i))
                    .collect();
                let to_vec = |f: &NCPoly| {
                    SparseVec::from_entries(f.terms().map(|(p, c)| (pos[p], c.clone())).collect())
                };
                // Ideal generated so far, restricted to this slot.
                let mut ideal = Echelon::new();
                for g in &gens {
                    for_each_multiple(q, g, s, t, len, |m| {
                        ideal.insert(to_vec(&m));
                    });
                }
                let mut ker = Echelon::tracking();
                for (_, im) in &domain {
                    if let Inserted::Dependent(c) = ker.insert_tracked(im.clone()) {
                        if ideal.insert(c.clone()) {
                            let mut f = NCPoly::zero();
                            for (i, x) in c.iter() {
                                f.add_term(x.clone(), domain[*i].0.clone());
                            }
                            gens.push(f.make_monic());
                        }
                    }
                }
            }
        }
    }
    Ok(gens)
}

/// Calls `f` on every `u * g * v` from `s` to `t` with all terms of length
/// at most `len`.
fn for_each_multiple(
    q: &Quiver,
    g: &NCPoly,
    s: VertexId,
    t: VertexId,
    len: usize,
    mut f: impl FnMut(NCPoly),
) {
    let Some((gs, gt)) = g.endpoints() else {
        return;
    };
    let glen = g.terms().map(|(p, _)| p.len()).max().unwrap_or(0);
    if glen > len {
        return;
    }
    let room = len - glen;
    let lefts = paths_between(q, s, gs, room);
    for u in &lefts {
        let rights = paths_between(q, gt, t, room - u.len());
        for v in &rights {
            let m = g.left_mul_path(u).right_mul_path(v);
            if !m.is_zero() {
                f(m);
            }
        }
    }
}

fn paths_between(q: &Quiver, s: VertexId, t: VertexId, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut frontier = vec![Path::lazy(s)];
    for _ in 0..=max_len {
        let mut next = Vec::new();
        for p in frontier {
            for a in q.arrows_from(p.target()) {
                next.push(p.compose(&Path::arrow(q, a)).expect("composable"));
            }
            if p.target() == t {
                out.push(p);
            }
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// k[t]/(t^2) with basis {1, t}.
    struct DualNumbers;

    impl PathRepresentation for DualNumbers {
        fn dim(&self) -> usize {
            2
        }
        fn vertex_image(&self, _: VertexId) -> SparseVec {
            SparseVec::unit(0)
        }
        fn arrow_image(&self, _: ArrowId) -> SparseVec {
            SparseVec::unit(1)
        }
        fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
            let (x0, x1, y0, y1) = (x.get(0), x.get(1), y.get(0), y.get(1));
            SparseVec::from_entries(vec![(0, &x0 * &y0), (1, &x0 * &y1 + &x1 * &y0)])
        }
    }

    #[test]
    fn dual_numbers_relation_is_t_squared() {
        let qv = Quiver::from_spec(&["0"], &[("t", "0", "0", -1)]).unwrap();
        let rels = relations_from_structure(&DualNumbers, &qv, 4).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].display(&qv), "t*t");
    }
}
