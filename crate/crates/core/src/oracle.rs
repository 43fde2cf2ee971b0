//! Brute-force ground truth for small graphs: cycles and paths through a
//! prescribed vertex set, Hamiltonicity, Hamilton-connectedness.
//!
//! Everything here is plain backtracking and shares no code with the
//! constructive modules it is used to check.

use itertools::Itertools;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::path::{Cycle, OrientedPath};

/// Default instance-size guard.
pub const DEFAULT_MAX_N: usize = 14;

/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "BIHOLE_ORACLE_MAX_N";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle refuses n = {n} (limit {max}; raise it explicitly or via {MAX_N_ENV})")]
    TooLarge { n: usize, max: usize },
    #[error("path endpoints must differ")]
    SameEndpoints,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}

/// Backtracking oracle with an explicit size guard.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub max_n: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::from_env()
    }
}

impl Oracle {
    pub fn new(max_n: usize) -> Self {
        Oracle { max_n }
    }

    /// Reads the guard from `BIHOLE_ORACLE_MAX_N`, falling back to 14.
    pub fn from_env() -> Self {
        let max_n = std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_N);
        Oracle { max_n }
    }

    fn guard(&self, g: &Graph) -> Result<(), OracleError> {
        if g.n() > self.max_n {
            Err(OracleError::TooLarge {
                n: g.n(),
                max: self.max_n,
            })
        } else {
            Ok(())
        }
    }

    /// Some cycle whose vertex set contains `s`.
    pub fn cycle_through_set(&self, g: &Graph, s: &VertexSet) -> Result<Option<Cycle>, OracleError> {
        self.guard(g)?;
        if g.n() < 3 {
            return Ok(None);
        }
        let starts: Vec<usize> = match s.first() {
            Some(v) => vec![v],
            None => (0..g.n()).collect(),
        };
        for start in starts {
            let mut search = CycleSearch {
                g,
                start,
                must: *s,
                spanning: s.len() == g.n(),
                path: vec![start],
                visited: VertexSet::singleton(start),
            };
            if search.run() {
                return Ok(Some(Cycle::new(search.path)));
            }
        }
        Ok(None)
    }

    /// Some `(u, v)`-path whose vertex set contains `s`.
    pub fn path_through_set(
        &self,
        g: &Graph,
        u: usize,
        v: usize,
        s: &VertexSet,
    ) -> Result<Option<OrientedPath>, OracleError> {
        self.guard(g)?;
        for x in [u, v] {
            if x >= g.n() {
                return Err(OracleError::VertexOutOfRange(x));
            }
        }
        if u == v {
            return Err(OracleError::SameEndpoints);
        }
        let mut must = *s;
        must.insert(u);
        must.insert(v);
        let mut search = PathSearch {
            g,
            target: v,
            must,
            spanning: must.len() == g.n(),
            path: vec![u],
            visited: VertexSet::singleton(u),
        };
        Ok(search.run().then(|| OrientedPath::new(search.path)))
    }

    pub fn hamiltonian(&self, g: &Graph) -> Result<bool, OracleError> {
        self.guard(g)?;
        if g.n() < 3 || g.min_degree() < 2 {
            return Ok(false);
        }
        Ok(self.cycle_through_set(g, &g.vertices())?.is_some())
    }

    /// Hamilton path between every pair of distinct vertices.
    pub fn hamiltonian_connected(&self, g: &Graph) -> Result<bool, OracleError> {
        self.guard(g)?;
        let n = g.n();
        if n >= 3 && g.min_degree() < 2 {
            return Ok(false);
        }
        let all = g.vertices();
        for (u, v) in (0..n).tuple_combinations() {
            if self.path_through_set(g, u, v, &all)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn brute_cycle_through_set(g: &Graph, s: &VertexSet) -> Result<Option<Cycle>, OracleError> {
    Oracle::default().cycle_through_set(g, s)
}

pub fn brute_path_through_set(
    g: &Graph,
    u: usize,
    v: usize,
    s: &VertexSet,
) -> Result<Option<OrientedPath>, OracleError> {
    Oracle::default().path_through_set(g, u, v, s)
}

pub fn brute_hamiltonian(g: &Graph) -> Result<bool, OracleError> {
    Oracle::default().hamiltonian(g)
}

pub fn brute_hamiltonian_connected(g: &Graph) -> Result<bool, OracleError> {
    Oracle::default().hamiltonian_connected(g)
}

/// Independence number by trying every subset, largest first.
pub fn brute_independence_number(g: &Graph) -> usize {
    let n = g.n();
    (0..=n)
        .rev()
        .find(|&k| {
            (0..n).combinations(k).any(|c| {
                c.iter()
                    .tuple_combinations()
                    .all(|(&a, &b)| !g.has_edge(a, b))
            })
        })
        .unwrap_or(0)
}

/// Vertices reachable from `from` inside `allowed ∪ {from}`.
fn reach(g: &Graph, from: usize, allowed: &VertexSet) -> VertexSet {
    let mut seen = VertexSet::singleton(from);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let next = frontier
            .iter()
            .fold(VertexSet::new(), |acc, x| acc.union(g.neighbors(x)))
            .intersection(allowed)
            .difference(&seen);
        seen = seen.union(&next);
        frontier = next;
    }
    seen
}

struct CycleSearch<'a> {
    g: &'a Graph,
    start: usize,
    must: VertexSet,
    spanning: bool,
    path: Vec<usize>,
    visited: VertexSet,
}

impl CycleSearch<'_> {
    fn run(&mut self) -> bool {
        let end = *self.path.last().unwrap();
        if self.path.len() >= 3
            && self.must.is_subset(&self.visited)
            && self.g.has_edge(end, self.start)
        {
            return true;
        }
        let free = self.g.vertices().difference(&self.visited);
        if !self.feasible(end, &free) {
            return false;
        }
        for y in self.g.neighbors(end).intersection(&free).iter() {
            self.path.push(y);
            self.visited.insert(y);
            if self.run() {
                return true;
            }
            self.visited.remove(y);
            self.path.pop();
        }
        false
    }

    fn feasible(&self, end: usize, free: &VertexSet) -> bool {
        let missing = self.must.difference(&self.visited);
        let reachable = reach(self.g, end, free);
        if !missing.is_subset(&reachable) {
            return false;
        }
        let back = self.g.neighbors(self.start);
        if !back.contains(end) && reachable.intersection(free).is_disjoint(back) {
            return false;
        }
        if self.spanning {
            // every free vertex is entered and left: needs two usable neighbours
            let mut usable = *free;
            usable.insert(end);
            usable.insert(self.start);
            if free
                .iter()
                .any(|w| self.g.neighbors(w).intersection(&usable).len() < 2)
            {
                return false;
            }
        }
        true
    }
}

struct PathSearch<'a> {
    g: &'a Graph,
    target: usize,
    must: VertexSet,
    spanning: bool,
    path: Vec<usize>,
    visited: VertexSet,
}

impl PathSearch<'_> {
    fn run(&mut self) -> bool {
        let end = *self.path.last().unwrap();
        if end == self.target {
            return self.must.is_subset(&self.visited);
        }
        let free = self.g.vertices().difference(&self.visited);
        if !self.feasible(end, &free) {
            return false;
        }
        for y in self.g.neighbors(end).intersection(&free).iter() {
            self.path.push(y);
            self.visited.insert(y);
            if self.run() {
                return true;
            }
            self.visited.remove(y);
            self.path.pop();
        }
        false
    }

    fn feasible(&self, end: usize, free: &VertexSet) -> bool {
        let missing = self.must.difference(&self.visited);
        if !missing.is_subset(&reach(self.g, end, free)) {
            return false;
        }
        if self.spanning {
            let mut usable = *free;
            usable.insert(end);
            for w in free.iter() {
                let need = if w == self.target { 1 } else { 2 };
                if self.g.neighbors(w).intersection(&usable).len() < need {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, Family};

    fn g(f: Family) -> Graph {
        named(&f).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn cycle_examples() {
        let k4 = g(Family::Complete(4));
        let c = brute_cycle_through_set(&k4, &k4.vertices()).unwrap().unwrap();
        assert!(c.is_valid_in(&k4) && c.len() == 4);
        let p3 = g(Family::Path(3));
        assert!(brute_cycle_through_set(&p3, &set(&[0])).unwrap().is_none());
        let chorded = g(Family::Cycle(5)).add_edge(0, 2).unwrap();
        let c = brute_cycle_through_set(&chorded, &chorded.vertices()).unwrap().unwrap();
        // the only Hamilton cycle of C5 + chord is the rim
        let mut edges: Vec<_> = c.edges().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort();
        assert_eq!(edges, vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn empty_requirement_finds_any_cycle() {
        let c5 = g(Family::Cycle(5));
        let c = brute_cycle_through_set(&c5, &VertexSet::new()).unwrap().unwrap();
        assert!(c.is_valid_in(&c5));
        let star = g(Family::Star(5));
        assert!(brute_cycle_through_set(&star, &VertexSet::new()).unwrap().is_none());
    }

    #[test]
    fn path_examples() {
        let k4 = g(Family::Complete(4));
        let p = brute_path_through_set(&k4, 0, 3, &k4.vertices()).unwrap().unwrap();
        assert_eq!((p.len(), p.first(), p.last()), (4, 0, 3));
        let p3 = g(Family::Path(3));
        let p = brute_path_through_set(&p3, 0, 2, &set(&[1])).unwrap().unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2]);
        let c4 = g(Family::Cycle(4));
        let p = brute_path_through_set(&c4, 0, 1, &set(&[2, 3])).unwrap().unwrap();
        assert_eq!(p.vertices(), &[0, 3, 2, 1]);
        assert_eq!(
            brute_path_through_set(&c4, 1, 1, &VertexSet::new()),
            Err(OracleError::SameEndpoints)
        );
    }

    #[test]
    fn hamiltonicity_examples() {
        let k4 = g(Family::Complete(4));
        assert!(brute_hamiltonian(&k4).unwrap());
        assert!(brute_hamiltonian_connected(&k4).unwrap());
        let c5 = g(Family::Cycle(5));
        assert!(brute_hamiltonian(&c5).unwrap());
        assert!(!brute_hamiltonian_connected(&c5).unwrap());
        let pet = g(Family::Petersen);
        assert!(!brute_hamiltonian(&pet).unwrap());
        assert!(!brute_hamiltonian_connected(&pet).unwrap());
    }

    #[test]
    fn size_guard() {
        let big = g(Family::Cycle(15));
        assert_eq!(
            Oracle::new(14).hamiltonian(&big),
            Err(OracleError::TooLarge { n: 15, max: 14 })
        );
        assert!(Oracle::new(15).hamiltonian(&big).unwrap());
    }

    #[test]
    fn independence_reference() {
        assert_eq!(brute_independence_number(&g(Family::Petersen)), 4);
        assert_eq!(brute_independence_number(&g(Family::Cycle(5))), 2);
        assert_eq!(brute_independence_number(&Graph::empty(0).unwrap()), 0);
    }
}
