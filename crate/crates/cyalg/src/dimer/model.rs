use std::collections::HashMap;

use serde::Serialize;

use super::DimerError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub name: String,
    pub black: usize,
    pub white: usize,
}

/// A boundary walk with the face on the left, as darts `(edge, from)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub darts: Vec<(usize, usize)>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: Vec<Face>,
    pub chi: i64,
}

/// Bipartite graph with a rotation system; rotations list incident edges
/// counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimerModel {
    names: Vec<String>,
    colors: Vec<Color>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<usize>>,
}

fn perr(line: usize, message: impl Into<String>) -> DimerError {
    DimerError::Parse {
        line,
        message: message.into(),
    }
}

impl DimerModel {
    /// Checks colors and that each rotation lists exactly the incident edges.
    pub fn new(
        vertices: Vec<(String, Color)>,
        edges: Vec<Edge>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<Self, DimerError> {
        let (names, colors): (Vec<String>, Vec<Color>) = vertices.into_iter().unzip();
        let n = names.len();
        for e in &edges {
            if e.black >= n
                || e.white >= n
                || colors[e.black] != Color::Black
                || colors[e.white] != Color::White
            {
                return Err(DimerError::NotBipartite(e.name.clone()));
            }
        }
        if rotation.len() != n {
            return Err(DimerError::Arity {
                expected: n,
                got: rotation.len(),
            });
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut listed = rot.clone();
            listed.sort_unstable();
            let mut incident: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.black == v || e.white == v)
                .map(|(i, _)| i)
                .collect();
            incident.sort_unstable();
            if listed != incident {
                return Err(DimerError::BadRotation {
                    vertex: names[v].clone(),
                    message: "must list every incident edge exactly once".into(),
                });
            }
        }
        Ok(Self {
            names,
            colors,
            edges,
            rotation,
        })
    }

    /// Reads `[vertices]` (`id white|black`), `[edges]` (`id black white`)
    /// and `[rotation]` (`vertex e1 e2 ...`, counterclockwise).
    pub fn parse(text: &str) -> Result<Self, DimerError> {
        #[derive(PartialEq)]
        enum Sec {
            None,
            Vertices,
            Edges,
            Rotation,
        }
        let mut sec = Sec::None;
        let mut vertices: Vec<(String, Color)> = Vec::new();
        let mut vidx: HashMap<String, usize> = HashMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        let mut eidx: HashMap<String, usize> = HashMap::new();
        let mut rot: Vec<Option<Vec<usize>>> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                sec = match line {
                    "[vertices]" => Sec::Vertices,
                    "[edges]" => Sec::Edges,
                    "[rotation]" => Sec::Rotation,
                    _ => return Err(perr(ln, format!("unknown section {line}"))),
                };
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match sec {
                Sec::None => return Err(perr(ln, "content before any section")),
                Sec::Vertices => {
                    let [id, color] = toks.as_slice() else {
                        return Err(perr(ln, "expected `id white|black`"));
                    };
                    let color = match *color {
                        "white" | "w" => Color::White,
                        "black" | "b" => Color::Black,
                        c => return Err(perr(ln, format!("unknown color `{c}`"))),
                    };
                    if vidx.insert(id.to_string(), vertices.len()).is_some() {
                        return Err(perr(ln, format!("duplicate vertex `{id}`")));
                    }
                    vertices.push((id.to_string(), color));
                    rot.push(None);
                }
                Sec::Edges => {
                    let [id, b, w] = toks.as_slice() else {
                        return Err(perr(ln, "expected `id black white`"));
                    };
                    let look = |v: &str| {
                        vidx.get(v)
                            .copied()
                            .ok_or_else(|| perr(ln, format!("unknown vertex `{v}`")))
                    };
                    let (black, white) = (look(b)?, look(w)?);
                    if eidx.insert(id.to_string(), edges.len()).is_some() {
                        return Err(perr(ln, format!("duplicate edge `{id}`")));
                    }
                    edges.push(Edge {
                        name: id.to_string(),
                        black,
                        white,
                    });
                }
                Sec::Rotation => {
                    let Some((v, es)) = toks.split_first() else {
                        unreachable!("nonempty line")
                    };
                    let v = *vidx
                        .get(*v)
                        .ok_or_else(|| perr(ln, format!("unknown vertex `{v}`")))?;
                    let es = es
                        .iter()
                        .map(|e| {
                            eidx.get(*e)
                                .copied()
                                .ok_or_else(|| perr(ln, format!("unknown edge `{e}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    if rot[v].replace(es).is_some() {
                        return Err(perr(
                            ln,
                            format!("rotation of `{}` given twice", vertices[v].0),
                        ));
                    }
                }
            }
        }
        let rotation = rot
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.ok_or_else(|| perr(0, format!("no rotation for `{}`", vertices[v].0))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vertices, edges, rotation)
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Incident edges of `v`, counterclockwise.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn vertices_of(&self, color: Color) -> impl Iterator<Item = usize> + '_ {
        (0..self.names.len()).filter(move |&v| self.colors[v] == color)
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let ed = &self.edges[e];
        if ed.black == v {
            ed.white
        } else {
            ed.black
        }
    }

    fn rot_pos(&self, v: usize, e: usize) -> usize {
        self.rotation[v]
            .iter()
            .position(|&x| x == e)
            .expect("edge in rotation")
    }

    /// Counterclockwise successor of `e` at `v`.
    pub fn next_ccw(&self, v: usize, e: usize) -> usize {
        let r = &self.rotation[v];
        r[(self.rot_pos(v, e) + 1) % r.len()]
    }

    /// Clockwise successor of `e` at `v`.
    pub fn next_cw(&self, v: usize, e: usize) -> usize {
        let r = &self.rotation[v];
        r[(self.rot_pos(v, e) + r.len() - 1) % r.len()]
    }

    /// Dart index: `2e` runs white to black, `2e + 1` black to white.
    pub fn dart(&self, e: usize, from: usize) -> usize {
        if self.edges[e].white == from {
            2 * e
        } else {
            2 * e + 1
        }
    }

    fn dart_from(&self, d: usize) -> usize {
        let e = &self.edges[d / 2];
        if d.is_multiple_of(2) {
            e.white
        } else {
            e.black
        }
    }

    /// Next dart on the face to the left of dart `d`.
    fn next_dart(&self, d: usize) -> usize {
        let e = d / 2;
        let head = self.other_end(e, self.dart_from(d));
        self.dart(self.next_cw(head, e), head)
    }

    /// Faces traced from the rotation system, each with its darts in order.
    pub fn faces(&self) -> Vec<Face> {
        let n = 2 * self.edges.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for d0 in 0..n {
            if seen[d0] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = d0;
            while !seen[d] {
                seen[d] = true;
                darts.push((d / 2, self.dart_from(d)));
                d = self.next_dart(d);
            }
            out.push(Face { darts });
        }
        out
    }

    /// Index of the face left of each dart.
    pub(crate) fn dart_faces(&self, faces: &[Face]) -> Vec<usize> {
        let mut left = vec![usize::MAX; 2 * self.edges.len()];
        for (f, face) in faces.iter().enumerate() {
            for &(e, from) in &face.darts {
                left[self.dart(e, from)] = f;
            }
        }
        left
    }

    fn is_connected(&self) -> bool {
        let n = self.names.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.rotation[v] {
                let u = self.other_end(e, v);
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Traces faces and checks that the surface is a torus.
    pub fn validate(&self) -> Result<TorusReport, DimerError> {
        if self.edges.is_empty() {
            return Err(DimerError::Empty);
        }
        if !self.is_connected() {
            return Err(DimerError::Disconnected);
        }
        let faces = self.faces();
        let chi = self.names.len() as i64 - self.edges.len() as i64 + faces.len() as i64;
        if chi != 0 {
            return Err(DimerError::NotTorus { chi });
        }
        Ok(TorusReport {
            vertices: self.names.len(),
            edges: self.edges.len(),
            faces,
            chi,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEX: &str = "[vertices]\nw white\nb black\n[edges]\nx b w\ny b w\nz b w\n[rotation]\nw x y z\nb x y z\n";

    #[test]
    fn hexagon_has_one_face() {
        let d = DimerModel::parse(HEX).unwrap();
        let r = d.validate().unwrap();
        assert_eq!(r.faces.len(), 1);
        assert_eq!(r.faces[0].len(), 6);
    }

    #[test]
    fn a_single_edge_is_a_sphere() {
        let d = DimerModel::parse(
            "[vertices]\nw white\nb black\n[edges]\ne b w\n[rotation]\nw e\nb e\n",
        )
        .unwrap();
        assert_eq!(d.validate(), Err(DimerError::NotTorus { chi: 2 }));
    }

    #[test]
    fn colors_must_alternate() {
        let err = DimerModel::parse(
            "[vertices]\nw white\nv white\n[edges]\ne v w\n[rotation]\nw e\nv e\n",
        )
        .unwrap_err();
        assert_eq!(err, DimerError::NotBipartite("e".into()));
    }

    #[test]
    fn rotations_list_incident_edges() {
        let err = DimerModel::parse(
            "[vertices]\nw white\nb black\n[edges]\ne b w\n[rotation]\nw e e\nb e\n",
        )
        .unwrap_err();
        assert!(matches!(err, DimerError::BadRotation { .. }));
    }
}
