//! Graphviz DOT output for quivers and knitted components. Node and edge
//! order follow the input order, so output is stable across runs.

use std::fmt::Write;

use crate::ar_shadow::Component;
use crate::quiver_algebra::Quiver;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per vertex, one edge per arrow labeled `name` or `name (deg)`
/// when the degree is nonzero.
pub fn quiver_dot(name: &str, q: &Quiver) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for v in q.vertex_names() {
        writeln!(out, "  {};", quote(v)).unwrap();
    }
    for a in q.arrows() {
        let label = if a.degree == 0 {
            a.name.clone()
        } else {
            format!("{} ({})", a.name, a.degree)
        };
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(q.vertex_name(a.source)),
            quote(q.vertex_name(a.target)),
            quote(&label)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Nodes carry the label and dimension vector; injectives are boxed and
/// arrows of multiplicity `m > 1` are labeled `m`.
pub fn component_dot(name: &str, c: &Component) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for (i, x) in c.vertices.iter().enumerate() {
        let shape = if x.injective { "box" } else { "ellipse" };
        writeln!(
            out,
            "  n{i} [label={}, shape={shape}];",
            quote(&format!("{}\\n{}", x.label, x.dim))
        )
        .unwrap();
    }
    for &(s, t, m) in &c.arrows {
        if m > 1 {
            writeln!(out, "  n{s} -> n{t} [label=\"{m}\"];").unwrap();
        } else {
            writeln!(out, "  n{s} -> n{t};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_dot() {
        let q = Quiver::from_spec(&["1", "2"], &[("x", "1", "2", 0), ("y", "1", "2", -1)]).unwrap();
        let dot = quiver_dot("K", &q);
        assert_eq!(
            dot,
            "digraph \"K\" {\n  rankdir=LR;\n  \"1\";\n  \"2\";\n  \"1\" -> \"2\" [label=\"x\"];\n  \"1\" -> \"2\" [label=\"y (-1)\"];\n}\n"
        );
    }
}
