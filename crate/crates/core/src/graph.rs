//! Immutable simple undirected graphs over dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::bitset::{VertexSet, MAX_VERTICES};

/// Errors raised while building or querying a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("endpoints must be distinct (got {0} twice)")]
    SameEndpoints(usize),
}

/// Shortest-path distance; unreachable pairs are [`Distance::Infinite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// A simple undirected graph with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::new(); n],
        })
    }

    /// Builds a graph from unordered pairs; duplicates collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.check_pair(u, v)?;
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    /// Order `|G|`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Size `e(G)`.
    pub fn m(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Minimum degree; 0 for the null graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) + 1 == self.n)
    }

    /// `N_S(x)`: neighbors of `x` inside `s`.
    #[inline]
    pub fn neighbors_in(&self, x: usize, s: &VertexSet) -> VertexSet {
        self.adj[x].intersection(s)
    }

    /// `N[S] = S ∪ N(S)`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        s.iter().fold(*s, |acc, v| acc.union(&self.adj[v]))
    }

    /// True iff some edge joins `a` and `b`.
    pub fn has_edge_between(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().any(|x| !self.adj[x].is_disjoint(b))
    }

    /// BFS distances from `source`.
    pub fn distances_from(&self, source: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].finite().unwrap_or(0);
            for y in self.adj[x].iter() {
                if dist[y] == Distance::Infinite {
                    dist[y] = Distance::Finite(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Distance {
        self.distances_from(u)[v]
    }

    /// `N_i(v)`: vertices at distance exactly `i` from `v`.
    pub fn vertices_at_distance(&self, v: usize, i: usize) -> VertexSet {
        self.distances_from(v)
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == Distance::Finite(i))
            .map(|(x, _)| x)
            .collect()
    }

    /// Vertices reachable from `v` (its component).
    pub fn component_of(&self, v: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = frontier
                .iter()
                .fold(VertexSet::new(), |acc, x| acc.union(&self.adj[x]));
            frontier = next.difference(&seen);
            seen = seen.union(&frontier);
        }
        seen
    }

    /// Shortest `(u, v)`-path by BFS; ties broken towards smaller ids.
    pub fn shortest_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for y in self.adj[x].iter() {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[v] == usize::MAX {
            return None;
        }
        let mut path = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        Some(path)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0).len() == self.n
    }

    /// Connected, order at least three, and without a cut vertex.
    pub fn is_two_connected(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.cut_vertices().is_empty()
    }

    /// Articulation points via DFS lowpoints.
    pub fn cut_vertices(&self) -> VertexSet {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cuts = VertexSet::new();
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, parent, neighbours still to visit)
            let mut stack = vec![(root, usize::MAX, self.adj[root])];
            while let Some(frame) = stack.last_mut() {
                let (x, parent) = (frame.0, frame.1);
                if let Some(y) = frame.2.first() {
                    frame.2.remove(y);
                    if disc[y] == usize::MAX {
                        disc[y] = timer;
                        low[y] = timer;
                        timer += 1;
                        if x == root {
                            root_children += 1;
                        }
                        stack.push((y, x, self.adj[y]));
                    } else if y != parent {
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[x]);
                        if parent != root && low[x] >= disc[parent] {
                            cuts.insert(parent);
                        }
                    }
                }
            }
            if root_children > 1 {
                cuts.insert(root);
            }
        }
        cuts
    }

    /// `G + uv`; the receiver is left untouched.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.adj[u].insert(v);
        g.adj[v].insert(u);
        Ok(g)
    }

    /// `G[S]` together with the original id of each new vertex.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let ids: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![VertexSet::new(); ids.len()];
        for (i, &v) in ids.iter().enumerate() {
            for w in self.adj[v].intersection(s).iter() {
                adj[i].insert(index[w]);
            }
        }
        (Graph { n: ids.len(), adj }, ids)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let mut adj = vec![VertexSet::new(); self.n];
        for (u, v) in self.edges() {
            adj[perm[u]].insert(perm[v]);
            adj[perm[v]].insert(perm[u]);
        }
        Graph { n: self.n, adj }
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj = (0..self.n)
            .map(|v| {
                let mut row = all.difference(&self.adj[v]);
                row.remove(v);
                row
            })
            .collect();
        Graph { n: self.n, adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn from_edges_examples() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.degrees(), vec![1, 2, 1]);
        let k4 = complete(4);
        assert_eq!(k4.degrees(), vec![3, 3, 3, 3]);
        let k2 = Graph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(k2.m(), 1);
    }

    #[test]
    fn from_edges_errors() {
        assert_eq!(
            Graph::from_edges(3, [(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert!(matches!(
            Graph::empty(MAX_VERTICES + 1),
            Err(GraphError::TooManyVertices { .. })
        ));
    }

    #[test]
    fn closed_neighborhood_examples() {
        assert_eq!(cycle(5).closed_neighborhood(&set(&[0, 1])), set(&[4, 0, 1, 2]));
        assert_eq!(complete(4).closed_neighborhood(&set(&[0])), set(&[0, 1, 2, 3]));
        let e5 = Graph::empty(5).unwrap();
        assert_eq!(e5.closed_neighborhood(&set(&[2])), set(&[2]));
    }

    #[test]
    fn distance_examples() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.distance(0, 2), Distance::Finite(2));
        assert_eq!(complete(4).distance(0, 3), Distance::Finite(1));
        assert_eq!(Graph::empty(2).unwrap().distance(0, 1), Distance::Infinite);
    }

    #[test]
    fn layers() {
        assert_eq!(cycle(5).vertices_at_distance(0, 2), set(&[2, 3]));
        assert!(complete(4).vertices_at_distance(0, 2).is_empty());
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.vertices_at_distance(1, 1), set(&[0, 2]));
    }

    #[test]
    fn connectivity_examples() {
        let c5 = cycle(5);
        assert!(c5.is_connected() && c5.is_two_connected());
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(p3.is_connected());
        assert!(!p3.is_two_connected());
        assert_eq!(p3.cut_vertices(), set(&[1]));
        let k1 = Graph::empty(1).unwrap();
        assert!(k1.is_connected() && !k1.is_two_connected());
        // bowtie: two triangles sharing vertex 2
        let bowtie =
            Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(bowtie.cut_vertices(), set(&[2]));
    }

    #[test]
    fn add_edge_examples() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let c3 = p3.add_edge(0, 2).unwrap();
        assert_eq!(c3, cycle(3));
        assert_eq!(p3.m(), 2);
        assert_eq!(complete(4).add_edge(1, 2).unwrap(), complete(4));
        let k2 = Graph::empty(2).unwrap().add_edge(0, 1).unwrap();
        assert_eq!(k2, complete(2));
        assert_eq!(p3.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn induced_examples() {
        let (g, ids) = cycle(5).induced_subgraph(&set(&[0, 1, 2]));
        assert_eq!(g, Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
        assert_eq!(ids, vec![0, 1, 2]);
        let (k2, _) = complete(4).induced_subgraph(&set(&[0, 1]));
        assert_eq!(k2, complete(2));
        let (null, ids) = cycle(5).induced_subgraph(&VertexSet::new());
        assert_eq!(null.n(), 0);
        assert!(ids.is_empty());
    }

    #[test]
    fn shortest_path_prefers_small_ids() {
        assert_eq!(cycle(5).shortest_path(0, 2), Some(vec![0, 1, 2]));
        assert_eq!(complete(4).shortest_path(0, 3), Some(vec![0, 3]));
        assert_eq!(Graph::empty(2).unwrap().shortest_path(0, 1), None);
    }

    #[test]
    fn complement_of_cycle() {
        let c = cycle(5).complement();
        assert_eq!(c.m(), 5);
        assert!(c.has_edge(0, 2) && !c.has_edge(0, 1));
    }
}
