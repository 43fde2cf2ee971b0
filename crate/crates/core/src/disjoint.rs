//! Two internally disjoint `(x, y)`-paths by augmenting paths in the
//! vertex-split network (every vertex other than `x`, `y` has capacity 1).

use std::collections::VecDeque;

use crate::graph::{Graph, GraphError};

struct Network {
    head: Vec<usize>,
    cap: Vec<i32>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, from: usize, to: usize, cap: i32) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// One BFS augmentation; arcs are scanned in insertion order, which is
    /// ascending by neighbour id.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &a in &self.out[x] {
                let y = self.head[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut y = sink;
        while y != source {
            let a = via[y];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            y = self.head[a ^ 1];
        }
        true
    }
}

/// Two `(x, y)`-paths sharing only their endpoints.
///
/// Requires a 2-connected `g`. Output is deterministic: augmentations scan
/// neighbours in ascending order and decomposition follows the first
/// saturated arc.
pub fn two_disjoint_paths(
    g: &Graph,
    x: usize,
    y: usize,
) -> Result<(Vec<usize>, Vec<usize>), GraphError> {
    let n = g.n();
    for v in [x, y] {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
    }
    if x == y {
        return Err(GraphError::SameEndpoints(x));
    }
    if !g.is_two_connected() {
        return Err(GraphError::NotTwoConnected);
    }
    // node 2v is v_in, 2v+1 is v_out
    let mut net = Network::new(2 * n);
    for v in 0..n {
        let cap = if v == x || v == y { 2 } else { 1 };
        net.arc(2 * v, 2 * v + 1, cap);
    }
    let mut edge_arcs = Vec::new();
    for (u, v) in g.edges() {
        edge_arcs.push((u, v, net.head.len()));
        net.arc(2 * u + 1, 2 * v, 1);
        edge_arcs.push((v, u, net.head.len()));
        net.arc(2 * v + 1, 2 * u, 1);
    }
    // arcs were added edge by edge; re-sort each out-list by target id
    for list in net.out.iter_mut() {
        let head = &net.head;
        list.sort_by_key(|&a| head[a]);
    }
    let (source, sink) = (2 * x + 1, 2 * y);
    for _ in 0..2 {
        if !net.augment(source, sink) {
            return Err(GraphError::NotTwoConnected);
        }
    }
    // net flow on each undirected edge, antiparallel units cancelled
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let flow = |a: usize| 1 - net.cap[a];
    let mut i = 0;
    while i < edge_arcs.len() {
        let (u, v, a) = edge_arcs[i];
        let b = edge_arcs[i + 1].2;
        match flow(a) - flow(b) {
            1 => succ[u].push(v),
            -1 => succ[v].push(u),
            _ => {}
        }
        i += 2;
    }
    for list in succ.iter_mut() {
        list.sort_unstable();
    }
    let mut paths = Vec::with_capacity(2);
    for k in 0..2 {
        let mut path = vec![x];
        let mut cur = succ[x][k];
        while cur != y {
            path.push(cur);
            cur = succ[cur][0];
        }
        path.push(y);
        paths.push(path);
    }
    let second = paths.pop().unwrap();
    let first = paths.pop().unwrap();
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::VertexSet;

    fn check_pair(g: &Graph, x: usize, y: usize, a: &[usize], b: &[usize]) {
        for p in [a, b] {
            assert_eq!(p[0], x);
            assert_eq!(*p.last().unwrap(), y);
            assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])), "{p:?}");
        }
        let ia: VertexSet = a[1..a.len() - 1].iter().copied().collect();
        let ib: VertexSet = b[1..b.len() - 1].iter().copied().collect();
        assert!(ia.is_disjoint(&ib));
        assert!(!ia.contains(x) && !ia.contains(y));
    }

    #[test]
    fn cycle_arcs() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let (a, b) = two_disjoint_paths(&c5, 0, 2).unwrap();
        let mut got = [a, b];
        got.sort();
        assert_eq!(got, [vec![0, 1, 2], vec![0, 4, 3, 2]]);
    }

    #[test]
    fn complete_graph() {
        let k4 = Graph::from_edges(4, (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v)))).unwrap();
        let (a, b) = two_disjoint_paths(&k4, 0, 1).unwrap();
        check_pair(&k4, 0, 1, &a, &b);
    }

    #[test]
    fn k4_minus_edge() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let (a, b) = two_disjoint_paths(&g, 0, 3).unwrap();
        // the only internally disjoint pair, by enumeration
        let mut got = [a, b];
        got.sort();
        assert_eq!(got, [vec![0, 1, 3], vec![0, 2, 3]]);
    }

    #[test]
    fn rejects_non_two_connected() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(two_disjoint_paths(&p3, 0, 2), Err(GraphError::NotTwoConnected));
    }

    #[test]
    fn wheel_all_pairs() {
        // wheel W5: hub 0, rim 1..=5
        let mut edges: Vec<_> = (1..=5).map(|i| (0, i)).collect();
        edges.extend((1..=5).map(|i| (i, i % 5 + 1)));
        let g = Graph::from_edges(6, edges).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                if x != y {
                    let (a, b) = two_disjoint_paths(&g, x, y).unwrap();
                    check_pair(&g, x, y, &a, &b);
                }
            }
        }
    }
}
