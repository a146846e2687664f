use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::QuiverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ArrowId(pub u32);

impl VertexId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl ArrowId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
    pub degree: i64,
}

/// Finite quiver with integer arrow degrees. Arrow declaration order is the
/// tie-break of the monomial order; `weights` refine path length (all 1 by
/// default, so the order is plain length-lex).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    weights: Vec<u32>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut names = HashMap::new();
        for a in &arrows {
            if names.insert(a.name.clone(), ()).is_some() {
                return Err(QuiverError::DuplicateArrow(a.name.clone()));
            }
            if a.source.idx() >= vertices.len() || a.target.idx() >= vertices.len() {
                return Err(QuiverError::UnknownVertex(a.name.clone()));
            }
        }
        let weights = vec![1; arrows.len()];
        Ok(Self {
            vertices,
            arrows,
            weights,
        })
    }

    /// Builds a quiver from `(name, source, target, degree)` tuples naming vertices.
    pub fn from_spec(
        vertices: &[&str],
        arrows: &[(&str, &str, &str, i64)],
    ) -> Result<Self, QuiverError> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |n: &str| {
            vs.iter()
                .position(|v| v == n)
                .map(|i| VertexId(i as u32))
                .ok_or_else(|| QuiverError::UnknownVertex(n.to_string()))
        };
        let mut arr = Vec::new();
        for (name, s, t, d) in arrows {
            arr.push(Arrow {
                name: name.to_string(),
                source: find(s)?,
                target: find(t)?,
                degree: *d,
            });
        }
        Self::new(vs, arr)
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Result<Self, QuiverError> {
        if weights.len() != self.arrows.len() || weights.contains(&0) {
            return Err(QuiverError::BadWeights);
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.idx()]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .map(|i| VertexId(i as u32))
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.idx()]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .map(|i| ArrowId(i as u32))
    }

    pub fn weight(&self, a: ArrowId) -> u32 {
        self.weights[a.idx()]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |a| self.arrow(*a).source == v)
    }

    pub fn arrows_between(&self, s: VertexId, t: VertexId) -> Vec<ArrowId> {
        self.arrow_ids()
            .filter(|a| self.arrow(*a).source == s && self.arrow(*a).target == t)
            .collect()
    }

    /// Same quiver with every arrow degree multiplied by `n`.
    pub fn scale_degrees(&self, n: i64) -> Self {
        let mut q = self.clone();
        for a in &mut q.arrows {
            a.degree *= n;
        }
        q
    }

    /// Reorders arrows so that `order` lists them from smallest to largest.
    pub fn reordered(&self, order: &[ArrowId]) -> Result<(Self, Vec<ArrowId>), QuiverError> {
        let mut sorted: Vec<ArrowId> = order.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.arrows.len() || order.len() != self.arrows.len() {
            return Err(QuiverError::BadOrder);
        }
        let arrows = order.iter().map(|a| self.arrows[a.idx()].clone()).collect();
        let weights = order.iter().map(|a| self.weights[a.idx()]).collect();
        let mut new_id = vec![ArrowId(0); self.arrows.len()];
        for (pos, a) in order.iter().enumerate() {
            new_id[a.idx()] = ArrowId(pos as u32);
        }
        Ok((
            Self {
                vertices: self.vertices.clone(),
                arrows,
                weights,
            },
            new_id,
        ))
    }

    /// True iff the quiver has no oriented cycle (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target.idx()] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|i| indeg[*i] == 0).collect();
        stack.reverse();
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(VertexId(v as u32));
            for a in &self.arrows {
                if a.source.idx() == v {
                    indeg[a.target.idx()] -= 1;
                    if indeg[a.target.idx()] == 0 {
                        stack.push(a.target.idx());
                    }
                }
            }
        }
        (out.len() == n).then_some(out)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.vertices.join(" "))?;
        for a in &self.arrows {
            writeln!(
                f,
                "  {}: {} -> {} (deg {})",
                a.name,
                self.vertex_name(a.source),
                self.vertex_name(a.target),
                a.degree
            )?;
        }
        Ok(())
    }
}
