//! Bipartite holes and the bipartite-hole-number `α̃(G)`.
//!
//! An `(s, t)`-hole is a pair of disjoint sets `S`, `T` with `|S| = s`,
//! `|T| = t` and no edge between them. `α̃(G)` is the least `k` such that
//! some split `s + t = k + 1` (both positive) admits no hole. Splits with
//! `s + t > n` admit no hole vacuously, so `α̃(G) ≤ n` and the edgeless
//! graph on `n` vertices has `α̃ = n`.
//!
//! The fast search uses `T ⊆ V ∖ N[S]`: an `(s, t)`-hole exists iff some
//! `s`-set has `|N[S]| ≤ n − t`.

use std::cell::Cell;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoleError {
    #[error("subset size {size} out of range 1..={n}")]
    SizeOutOfRange { size: usize, n: usize },
}

/// Disjoint `S`, `T` with no edge between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HoleWitness {
    #[serde(rename = "S")]
    pub s_side: VertexSet,
    #[serde(rename = "T")]
    pub t_side: VertexSet,
}

impl HoleWitness {
    pub fn swapped(self) -> Self {
        HoleWitness {
            s_side: self.t_side,
            t_side: self.s_side,
        }
    }

    /// Sizes, disjointness and absence of crossing edges.
    pub fn validates(&self, g: &Graph, s: usize, t: usize) -> bool {
        let all = g.vertices();
        s >= 1
            && t >= 1
            && self.s_side.len() == s
            && self.t_side.len() == t
            && self.s_side.is_subset(&all)
            && self.t_side.is_subset(&all)
            && self.s_side.is_disjoint(&self.t_side)
            && !g.has_edge_between(&self.s_side, &self.t_side)
    }
}

/// A split `s + t` with `1 ≤ s ≤ t` that has no hole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Split {
    pub s: usize,
    pub t: usize,
}

/// Hole witness for one split of level `α̃(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelWitness {
    pub s: usize,
    pub t: usize,
    #[serde(flatten)]
    pub witness: HoleWitness,
}

/// `α̃(G)` with evidence on both sides of the minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HoleCertificate {
    pub value: usize,
    pub holefree_pair: Split,
    /// One witness for every `(s', t')` with `s' + t' = value`.
    pub level_witnesses: Vec<LevelWitness>,
}

impl HoleCertificate {
    /// Re-checks every witness and, exhaustively, the hole-free split.
    pub fn validates(&self, g: &Graph) -> bool {
        let Split { s, t } = self.holefree_pair;
        if self.value == 0 || s < 1 || t < 1 || s + t != self.value + 1 {
            return false;
        }
        if naive_hole_oracle(g, s, t).is_some() {
            return false;
        }
        let expected = self.value - 1;
        if self.level_witnesses.len() != expected {
            return false;
        }
        self.level_witnesses
            .iter()
            .enumerate()
            .all(|(i, lw)| lw.s == i + 1 && lw.s + lw.t == self.value && lw.witness.validates(g, lw.s, lw.t))
    }
}

/// Depth-first walk over `size`-subsets in lexicographic order, carrying
/// `N[S]` incrementally. `visit` returns `true` to stop; `prune` receives the
/// closed neighbourhood of a partial set and may cut the whole branch.
fn walk_subsets<P, V>(g: &Graph, size: usize, mut prune: P, mut visit: V)
where
    P: FnMut(&VertexSet) -> bool,
    V: FnMut(&VertexSet, &VertexSet) -> bool,
{
    fn rec<P, V>(
        g: &Graph,
        start: usize,
        left: usize,
        set: VertexSet,
        closed: VertexSet,
        prune: &mut P,
        visit: &mut V,
    ) -> bool
    where
        P: FnMut(&VertexSet) -> bool,
        V: FnMut(&VertexSet, &VertexSet) -> bool,
    {
        if left == 0 {
            return visit(&set, &closed);
        }
        let n = g.n();
        for v in start..=(n - left) {
            let mut next = set;
            next.insert(v);
            let mut nclosed = closed.union(g.neighbors(v));
            nclosed.insert(v);
            if prune(&nclosed) {
                continue;
            }
            if rec(g, v + 1, left - 1, next, nclosed, prune, visit) {
                return true;
            }
        }
        false
    }
    if size <= g.n() {
        rec(
            g,
            0,
            size,
            VertexSet::new(),
            VertexSet::new(),
            &mut prune,
            &mut visit,
        );
    }
}

/// Minimum `|N[S]|` over all `s`-subsets and the lexicographically first
/// minimiser.
pub fn min_closed_neighborhood(g: &Graph, s: usize) -> Result<(usize, VertexSet), HoleError> {
    if s == 0 || s > g.n() {
        return Err(HoleError::SizeOutOfRange { size: s, n: g.n() });
    }
    let best = Cell::new(usize::MAX);
    let mut argmin = VertexSet::new();
    walk_subsets(
        g,
        s,
        |closed| closed.len() >= best.get(),
        |set, closed| {
            if closed.len() < best.get() {
                best.set(closed.len());
                argmin = *set;
            }
            best.get() == s
        },
    );
    Ok((best.get(), argmin))
}

/// An `(s, t)`-hole, if one exists.
///
/// Enumerates the smaller side in lexicographic order and completes it with
/// the smallest ids of `V ∖ N[·]`; the first success is returned.
pub fn find_hole(g: &Graph, s: usize, t: usize) -> Option<HoleWitness> {
    let n = g.n();
    if s == 0 || t == 0 || s + t > n {
        return None;
    }
    let (small, large) = (s.min(t), s.max(t));
    let all = g.vertices();
    let mut found = None;
    walk_subsets(
        g,
        small,
        |closed| closed.len() > n - large,
        |set, closed| {
            if let Some(other) = all.difference(closed).smallest(large) {
                found = Some(HoleWitness {
                    s_side: *set,
                    t_side: other,
                });
                true
            } else {
                false
            }
        },
    );
    found.map(|w| if s <= t { w } else { w.swapped() })
}

/// Independent reference for [`find_hole`]: plain double enumeration over
/// all `(S, T)` pairs, intended for small graphs only.
pub fn naive_hole_oracle(g: &Graph, s: usize, t: usize) -> Option<HoleWitness> {
    let n = g.n();
    if s == 0 || t == 0 || s + t > n {
        return None;
    }
    for left in (0..n).combinations(s) {
        let rest: Vec<usize> = (0..n).filter(|v| !left.contains(v)).collect();
        for right in rest.into_iter().combinations(t) {
            let crossing = left
                .iter()
                .any(|&a| right.iter().any(|&b| g.has_edge(a, b)));
            if !crossing {
                return Some(HoleWitness {
                    s_side: left.iter().copied().collect(),
                    t_side: right.iter().copied().collect(),
                });
            }
        }
    }
    None
}

/// `α̃(G)` computed from [`naive_hole_oracle`] alone.
pub fn naive_bipartite_hole_number(g: &Graph) -> usize {
    (1..)
        .find(|&k| (1..=k).any(|s| naive_hole_oracle(g, s, k + 1 - s).is_none()))
        .unwrap()
}

/// `α̃(G)` with certificate. Levels ascend from `k = 1`; inside a level the
/// splits are tried with increasing `s ≤ t`, so the recorded hole-free pair
/// has the smallest `s`.
pub fn bipartite_hole_number(g: &Graph) -> HoleCertificate {
    let mut k: usize = 1;
    loop {
        let holefree = (1..=k.div_ceil(2)).find(|&s| find_hole(g, s, k + 1 - s).is_none());
        if let Some(s) = holefree {
            let level_witnesses = (1..k)
                .map(|s2| {
                    let t2 = k - s2;
                    // minimality of k guarantees every split of k has a hole
                    let witness = find_hole(g, s2, t2)
                        .expect("level below the hole number must be fully holed");
                    LevelWitness {
                        s: s2,
                        t: t2,
                        witness,
                    }
                })
                .collect();
            return HoleCertificate {
                value: k,
                holefree_pair: Split { s, t: k + 1 - s },
                level_witnesses,
            };
        }
        k += 1;
    }
}
