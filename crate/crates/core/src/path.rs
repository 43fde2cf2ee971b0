//! Oriented paths and cycles as vertex sequences.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// A path `v_1 v_2 ... v_k` oriented from its first to its last vertex.
///
/// Navigation (`successor`, `predecessor`, segments) is by position, so the
/// path keeps a reverse index from vertex id to position.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct OrientedPath {
    vertices: Vec<usize>,
    #[serde(skip)]
    position: Vec<usize>,
}

impl OrientedPath {
    /// Wraps a vertex sequence. Adjacency is not checked here; see
    /// [`OrientedPath::is_valid_in`].
    pub fn new(vertices: Vec<usize>) -> Self {
        let size = vertices.iter().max().map_or(0, |&m| m + 1);
        let mut position = vec![usize::MAX; size];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        OrientedPath { vertices, position }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn at(&self, i: usize) -> usize {
        self.vertices[i]
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        match self.position.get(v) {
            Some(&i) if i != usize::MAX => Some(i),
            _ => None,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.position(v).is_some()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// `x⁺`, undefined for the last vertex.
    pub fn successor(&self, x: usize) -> Option<usize> {
        self.position(x)
            .and_then(|i| self.vertices.get(i + 1).copied())
    }

    /// `x⁻`, undefined for the first vertex.
    pub fn predecessor(&self, x: usize) -> Option<usize> {
        self.position(x)
            .and_then(|i| i.checked_sub(1))
            .map(|i| self.vertices[i])
    }

    /// `S⁺ = {x⁺ : x ∈ S, x ≠ last}`; members of `S` off the path are ignored.
    pub fn shift_forward(&self, s: &VertexSet) -> VertexSet {
        s.iter().filter_map(|x| self.successor(x)).collect()
    }

    /// `S⁻ = {x⁻ : x ∈ S, x ≠ first}`.
    pub fn shift_backward(&self, s: &VertexSet) -> VertexSet {
        s.iter().filter_map(|x| self.predecessor(x)).collect()
    }

    /// Vertices at positions `lo..=hi`.
    pub fn range(&self, lo: usize, hi: usize) -> VertexSet {
        if lo > hi || lo >= self.len() {
            return VertexSet::new();
        }
        self.vertices[lo..=hi.min(self.len() - 1)]
            .iter()
            .copied()
            .collect()
    }

    /// Segment from `a` to `b` following the orientation (`a` not after `b`).
    pub fn forward(&self, a: usize, b: usize) -> &[usize] {
        let (i, j) = (self.position(a).unwrap(), self.position(b).unwrap());
        debug_assert!(i <= j);
        &self.vertices[i..=j]
    }

    /// Segment from `a` back to `b` against the orientation (`a` not before `b`).
    pub fn backward(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        let (i, j) = (self.position(a).unwrap(), self.position(b).unwrap());
        debug_assert!(i >= j);
        self.vertices[j..=i].iter().rev().copied()
    }

    /// Interior vertices `P*`.
    pub fn interior(&self) -> &[usize] {
        if self.len() < 2 {
            &[]
        } else {
            &self.vertices[1..self.len() - 1]
        }
    }

    pub fn reversed(&self) -> OrientedPath {
        let mut v = self.vertices.clone();
        v.reverse();
        OrientedPath::new(v)
    }

    /// Distinct vertices of `g`, consecutive ones adjacent.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        is_simple_walk(g, &self.vertices) && !self.vertices.is_empty()
    }
}

impl std::fmt::Debug for OrientedPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Path{:?}", self.vertices)
    }
}

/// A cycle `v_1 ... v_k v_1` stored without repeating the first vertex.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Wraps a vertex sequence; see [`Cycle::is_valid_in`] for the checks.
    pub fn new(vertices: Vec<usize>) -> Self {
        Cycle { vertices }
    }

    /// Joins two internally disjoint `(x, y)`-paths into a cycle.
    pub fn from_path_pair(first: &[usize], second: &[usize]) -> Self {
        let mut vertices = first.to_vec();
        vertices.extend(second.iter().rev().skip(1).take(second.len().saturating_sub(2)));
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// Consecutive pairs including the closing pair.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    /// True iff the cycle traverses edge `uv`.
    pub fn uses_edge(&self, u: usize, v: usize) -> bool {
        self.edges()
            .any(|(a, b)| (a == u && b == v) || (a == v && b == u))
    }

    /// Deletes the traversed edge `uv`, leaving a `(u, v)`-path.
    pub fn open_at(&self, u: usize, v: usize) -> Option<OrientedPath> {
        let k = self.vertices.len();
        let i = self.vertices.iter().position(|&x| x == u)?;
        let next = self.vertices[(i + 1) % k];
        let prev = self.vertices[(i + k - 1) % k];
        let seq: Vec<usize> = if next == v {
            (0..k).map(|j| self.vertices[(i + k - j) % k]).collect()
        } else if prev == v {
            (0..k).map(|j| self.vertices[(i + j) % k]).collect()
        } else {
            return None;
        };
        Some(OrientedPath::new(seq))
    }

    /// At least three distinct vertices of `g`, cyclically adjacent.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.vertices.len() >= 3
            && is_simple_walk(g, &self.vertices)
            && g.has_edge(self.vertices[self.vertices.len() - 1], self.vertices[0])
    }
}

impl std::fmt::Debug for Cycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cycle{:?}", self.vertices)
    }
}

fn is_simple_walk(g: &Graph, seq: &[usize]) -> bool {
    let mut seen = VertexSet::new();
    for &v in seq {
        if v >= g.n() || seen.contains(v) {
            return false;
        }
        seen.insert(v);
    }
    seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
}
