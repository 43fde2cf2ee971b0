//! A cycle through every vertex of degree at least `α̃(G)` in a 2-connected
//! graph.
//!
//! The construction closes the heavy set `H` into a clique by adding
//! missing heavy pairs one at a time, starts from the clique cycle on `H`,
//! and then removes the added edges in reverse order. Whenever the current
//! cycle uses the edge being removed, the cycle is opened into a path between
//! two nonadjacent heavy vertices and rotated back into a cycle of the
//! smaller graph.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::disjoint::two_disjoint_paths;
use crate::graph::{Graph, GraphError};
use crate::hole::{bipartite_hole_number, HoleCertificate, Split};
use crate::path::{Cycle, OrientedPath};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Which rotation produced the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RotationRule {
    /// `u` and `v` share an off-path neighbour.
    CommonNeighbor,
    /// `x ∈ U₁`, `y ∈ V₁`.
    OffPathPair,
    /// `x ∈ U₁`, `y ∈ N_P(v)⁺`.
    OffPathToSuccessor,
    /// `x ∈ U₂⁻`, `y ∈ V₁`.
    FrontToOffPath,
    /// `x ∈ U₂⁻`, `y ∈ V₂⁺`.
    FrontToBack,
    /// `x ∈ V₃⁺`, `y = v₁`.
    BackToStart,
    /// `x ∈ V₃⁺`, `y ∈ U₃⁺`.
    BackToFront,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation {
    pub cycle: Cycle,
    pub rule: RotationRule,
}

/// Degree threshold for the cycle: `α̃(G)`.
pub fn heavy_threshold(g: &Graph) -> usize {
    bipartite_hole_number(g).value
}

/// Vertices of degree at least `threshold`.
pub fn heavy_vertices(g: &Graph, threshold: usize) -> VertexSet {
    (0..g.n()).filter(|&v| g.degree(v) >= threshold).collect()
}

/// True iff `c` is a cycle of `g` containing every vertex of degree at least
/// `threshold`.
pub fn verify_heavy_cycle(g: &Graph, c: &Cycle, threshold: usize) -> bool {
    c.is_valid_in(g) && heavy_vertices(g, threshold).is_subset(&c.vertex_set())
}

/// Turns a `(u, v)`-path with `u ≁ v` into a cycle of `g` containing all of
/// `V(P)`, assuming `g` has no `(s, t)`-hole and `d(u), d(v) ≥ s + t − 1`.
pub fn rotation_to_cycle(
    g: &Graph,
    path: &OrientedPath,
    split: Split,
) -> Result<Cycle, CycleError> {
    rotate(g, path, split).map(|r| r.cycle)
}

/// [`rotation_to_cycle`], also reporting the rule that fired.
pub fn rotate(g: &Graph, path: &OrientedPath, split: Split) -> Result<Rotation, CycleError> {
    let p = path.vertices();
    let k = p.len();
    if k < 2 || !path.is_valid_in(g) {
        return Err(CycleError::Precondition("not a path of the graph".into()));
    }
    let (u, v) = (p[0], p[k - 1]);
    if g.has_edge(u, v) {
        return Err(CycleError::Precondition(format!("endpoints {u} and {v} are adjacent")));
    }
    let Split { s, t } = split;
    let on_path = path.vertex_set();
    let u1 = g.neighbors(u).difference(&on_path);
    let v1 = g.neighbors(v).difference(&on_path);

    let accept = |seq: Vec<usize>, rule: RotationRule| -> Result<Rotation, CycleError> {
        let cycle = Cycle::new(seq);
        if cycle.is_valid_in(g) && on_path.is_subset(&cycle.vertex_set()) {
            Ok(Rotation { cycle, rule })
        } else {
            Err(CycleError::InternalInconsistency(format!(
                "{rule:?} produced {cycle:?}, which is not a cycle through {path:?}"
            )))
        }
    };
    let idx = |x: usize| path.position(x).unwrap();

    if let Some(x) = u1.intersection(&v1).first() {
        let mut seq = p.to_vec();
        seq.push(x);
        return accept(seq, RotationRule::CommonNeighbor);
    }

    let v_succ = path.shift_forward(&g.neighbors_in(v, &on_path));
    for x in u1.iter() {
        if let Some(y) = v_succ.union(&v1).intersection(g.neighbors(x)).first() {
            if v1.contains(y) {
                let mut seq = p.to_vec();
                seq.extend([y, x]);
                return accept(seq, RotationRule::OffPathPair);
            }
            let j = idx(y);
            let mut seq = p[..j].to_vec();
            seq.extend(p[j..].iter().rev());
            seq.push(x);
            return accept(seq, RotationRule::OffPathToSuccessor);
        }
    }

    if u1.len() >= s {
        return Err(CycleError::InternalInconsistency(format!(
            "|U1| = {} >= s = {s} with no rotation edge",
            u1.len()
        )));
    }
    let need = s - u1.len();
    let nu = g.neighbors(u);
    let mut seen = 0;
    let r = (1..k.saturating_sub(1))
        .find(|&i| {
            seen += nu.contains(p[i]) as usize;
            seen == need
        })
        .ok_or_else(|| {
            CycleError::InternalInconsistency(format!(
                "u = {u} has fewer than {need} neighbours on the path"
            ))
        })?;
    let u2 = nu.intersection(&path.range(1, r));
    let u3 = nu.intersection(&path.range(r + 1, k - 2));
    let nv = g.neighbors(v);
    let v2 = nv.intersection(&path.range(r, k - 2));
    let v3 = nv.intersection(&path.range(1, r - 1));

    let v2_succ = path.shift_forward(&v2);
    for x in path.shift_backward(&u2).iter() {
        if let Some(y) = v1.union(&v2_succ).intersection(g.neighbors(x)).first() {
            let i = idx(x);
            let mut seq = p[..=i].to_vec();
            if v1.contains(y) {
                seq.push(y);
                seq.extend(p[i + 1..].iter().rev());
                return accept(seq, RotationRule::FrontToOffPath);
            }
            let j = idx(y);
            seq.extend(&p[j..]);
            seq.extend(p[i + 1..j].iter().rev());
            return accept(seq, RotationRule::FrontToBack);
        }
    }

    if v1.union(&v2).len() >= t || v3.len() < s {
        return Err(CycleError::InternalInconsistency(format!(
            "|V1 ∪ V2| = {}, |V3| = {} with s = {s}, t = {t} and no rotation edge",
            v1.union(&v2).len(),
            v3.len()
        )));
    }
    let mut targets = path.shift_forward(&u3);
    targets.insert(u);
    for x in path.shift_forward(&v3).iter() {
        if let Some(y) = targets.intersection(g.neighbors(x)).first() {
            let i = idx(x);
            let mut seq = p[..i].to_vec();
            if y == u {
                seq.extend(p[i..].iter().rev());
                return accept(seq, RotationRule::BackToStart);
            }
            let j = idx(y);
            seq.extend(p[j..].iter().rev());
            seq.extend(&p[i..j]);
            return accept(seq, RotationRule::BackToFront);
        }
    }
    Err(CycleError::InternalInconsistency(format!(
        "no rotation applies to {path:?} with (s, t) = ({s}, {t})"
    )))
}

/// Result of [`cycle_through_heavy_with`], with the closure trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeavyCycle {
    pub cycle: Cycle,
    pub threshold: usize,
    /// Heavy pairs added during closure, in order.
    pub closure: Vec<(usize, usize)>,
    /// Rules applied while unwinding, from the last closure level down.
    pub rotations: Vec<RotationRule>,
}

/// A cycle of `g` containing every vertex of degree at least `α̃(g)`.
pub fn cycle_through_heavy(g: &Graph) -> Result<Cycle, CycleError> {
    let cert = bipartite_hole_number(g);
    cycle_through_heavy_with(g, &cert).map(|h| h.cycle)
}

/// As [`cycle_through_heavy`], reusing a certificate for `g`.
pub fn cycle_through_heavy_with(g: &Graph, cert: &HoleCertificate) -> Result<HeavyCycle, CycleError> {
    if !g.is_two_connected() {
        return Err(CycleError::NotTwoConnected);
    }
    let threshold = cert.value;
    let heavy = heavy_vertices(g, threshold);
    let finish = |cycle: Cycle, closure, rotations| {
        if verify_heavy_cycle(g, &cycle, threshold) {
            Ok(HeavyCycle {
                cycle,
                threshold,
                closure,
                rotations,
            })
        } else {
            Err(CycleError::InternalInconsistency(format!(
                "{cycle:?} misses a vertex of degree >= {threshold}"
            )))
        }
    };

    if heavy.len() <= 2 {
        let (x, y) = match heavy.to_vec()[..] {
            [a, b] => (a, b),
            [a] => (a, g.neighbors(a).first().unwrap()),
            _ => (0, g.neighbors(0).first().unwrap()),
        };
        let (a, b) = two_disjoint_paths(g, x, y).map_err(|e| match e {
            GraphError::NotTwoConnected => CycleError::NotTwoConnected,
            other => CycleError::InternalInconsistency(other.to_string()),
        })?;
        return finish(Cycle::from_path_pair(&a, &b), vec![], vec![]);
    }

    let mut levels = vec![g.clone()];
    let mut closure = Vec::new();
    loop {
        let top = levels.last().unwrap();
        let missing = heavy
            .iter()
            .find_map(|a| heavy.iter().find(|&b| b > a && !top.has_edge(a, b)).map(|b| (a, b)));
        let Some((a, b)) = missing else { break };
        levels.push(top.add_edge(a, b).expect("distinct heavy vertices"));
        closure.push((a, b));
    }

    let mut cycle = Cycle::new(heavy.to_vec());
    let mut rotations = Vec::new();
    for (level, &(a, b)) in closure.iter().enumerate().rev() {
        if !cycle.uses_edge(a, b) {
            continue;
        }
        let path = cycle.open_at(a, b).expect("edge is on the cycle");
        let rotation = rotate(&levels[level], &path, cert.holefree_pair)?;
        rotations.push(rotation.rule);
        cycle = rotation.cycle;
    }
    finish(cycle, closure, rotations)
}
