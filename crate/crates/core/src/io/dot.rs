//! Graphviz export.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::bitset::VertexSet;
use crate::graph::Graph;

const MARK: &str = "color=red, penwidth=2";

/// Vertices and edges drawn with a distinct style.
#[derive(Debug, Clone, Default)]
pub struct Highlight {
    pub vertices: VertexSet,
    pub edges: BTreeSet<(usize, usize)>,
}

impl Highlight {
    fn from_walk(seq: &[usize], closed: bool) -> Self {
        let mut h = Highlight {
            vertices: seq.iter().copied().collect(),
            edges: BTreeSet::new(),
        };
        for w in seq.windows(2) {
            h.edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        if closed && seq.len() >= 3 {
            let (a, b) = (seq[0], seq[seq.len() - 1]);
            h.edges.insert((a.min(b), a.max(b)));
        }
        h
    }

    pub fn path(seq: &[usize]) -> Self {
        Highlight::from_walk(seq, false)
    }

    pub fn cycle(seq: &[usize]) -> Self {
        Highlight::from_walk(seq, true)
    }
}

/// `graph { ... }` with one statement per vertex and per edge.
pub fn write_dot(g: &Graph, highlight: &Highlight) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..g.n() {
        if highlight.vertices.contains(v) {
            writeln!(out, "  {v} [{MARK}];").unwrap();
        } else {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for (u, v) in g.edges() {
        if highlight.edges.contains(&(u, v)) {
            writeln!(out, "  {u} -- {v} [{MARK}];").unwrap();
        } else {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
