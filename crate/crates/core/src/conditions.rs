//! Sufficient conditions for Hamiltonicity and Hamilton-connectedness.
//!
//! Each condition is a [`Condition`] trait object registered by name in a
//! [`ConditionRegistry`]; callers pick the battery at runtime. Checkers only
//! evaluate hypotheses. They never call the constructive modules.

use std::cell::OnceCell;
use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{Distance, Graph};
use crate::hole::bipartite_hole_number;

/// Exact independence number by branch and bound.
///
/// Candidates are branched in ascending order; the bound is a greedy clique
/// cover of the remaining candidates (an independent set meets each clique at
/// most once).
pub fn independence_number(g: &Graph) -> usize {
    fn clique_cover_bound(g: &Graph, cand: &VertexSet) -> usize {
        let mut left = *cand;
        let mut cliques = 0;
        while let Some(v) = left.first() {
            left.remove(v);
            let mut common = g.neighbors(v).intersection(&left);
            while let Some(w) = common.first() {
                left.remove(w);
                common = common.intersection(g.neighbors(w));
                common.remove(w);
            }
            cliques += 1;
        }
        cliques
    }

    fn search(g: &Graph, cand: VertexSet, size: usize, best: &mut usize) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        if size + clique_cover_bound(g, &cand) <= *best {
            return;
        }
        let v = cand.first().unwrap();
        // take v
        let mut with = cand.difference(g.neighbors(v));
        with.remove(v);
        search(g, with, size + 1, best);
        // skip v; only useful if some neighbour of v can be taken instead
        let mut without = cand;
        without.remove(v);
        if !g.neighbors(v).intersection(&without).is_empty() {
            search(g, without, size, best);
        }
    }

    let mut best = 0;
    search(g, g.vertices(), 0, &mut best);
    best
}

/// `I(x, y) = |N(x) ∩ N(y)|`.
pub fn common_neighbors(g: &Graph, x: usize, y: usize) -> usize {
    g.neighbors(x).intersection(g.neighbors(y)).len()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("vertices {x} and {y} are at distance {distance}, not 2")]
    NotAtDistanceTwo { x: usize, y: usize, distance: Distance },
    #[error("unknown condition `{name}` (valid: {valid})")]
    Unknown { name: String, valid: String },
}

/// Independence number of `G[N_2(x) ∩ N_2(y)]`, or 0 when that set is empty.
pub fn alpha2(g: &Graph, x: usize, y: usize) -> Result<usize, ConditionError> {
    let dist = g.distances_from(x);
    if dist[y] != Distance::Finite(2) {
        return Err(ConditionError::NotAtDistanceTwo {
            x,
            y,
            distance: dist[y],
        });
    }
    let layer = |d: &[Distance]| -> VertexSet {
        d.iter()
            .enumerate()
            .filter(|(_, &dv)| dv == Distance::Finite(2))
            .map(|(v, _)| v)
            .collect()
    };
    let common = layer(&dist).intersection(&layer(&g.distances_from(y)));
    if common.is_empty() {
        return Ok(0);
    }
    let (sub, _) = g.induced_subgraph(&common);
    Ok(independence_number(&sub))
}

/// Graph plus lazily computed invariants shared across a battery.
pub struct ConditionInput<'a> {
    pub graph: &'a Graph,
    alpha_tilde: OnceCell<usize>,
    distances: OnceCell<Vec<Vec<Distance>>>,
}

impl<'a> ConditionInput<'a> {
    pub fn new(graph: &'a Graph) -> Self {
        ConditionInput {
            graph,
            alpha_tilde: OnceCell::new(),
            distances: OnceCell::new(),
        }
    }

    /// Reuses an already computed `α̃(G)`.
    pub fn with_alpha_tilde(graph: &'a Graph, alpha_tilde: usize) -> Self {
        let input = ConditionInput::new(graph);
        let _ = input.alpha_tilde.set(alpha_tilde);
        input
    }

    pub fn alpha_tilde(&self) -> usize {
        *self
            .alpha_tilde
            .get_or_init(|| bipartite_hole_number(self.graph).value)
    }

    fn distance(&self, x: usize, y: usize) -> Distance {
        self.distances
            .get_or_init(|| (0..self.graph.n()).map(|v| self.graph.distances_from(v)).collect())[x][y]
    }

    /// Pairs `x < y` at distance exactly 2.
    pub fn distance_two_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.graph.n();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.distance(x, y) == Distance::Finite(2))
            .collect()
    }
}

/// One failing vertex, pair, or global requirement, with what was measured.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertices: Vec<usize>,
    pub reason: String,
    pub measured: BTreeMap<String, i64>,
}

impl Violation {
    fn new(vertices: Vec<usize>, reason: &str, measured: &[(&str, usize)]) -> Self {
        Violation {
            vertices,
            reason: reason.to_string(),
            measured: measured
                .iter()
                .map(|(k, v)| (k.to_string(), *v as i64))
                .collect(),
        }
    }
}

/// Graph parameters a report was evaluated against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub n: usize,
    pub min_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_tilde: Option<usize>,
}

/// Outcome of one hypothesis check. `holds` iff `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition: String,
    pub holds: bool,
    pub parameters: Parameters,
    pub violations: Vec<Violation>,
    /// Pairs excused by a guard (reported for transparency, never failing).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub exempt: Vec<Violation>,
}

impl ConditionReport {
    fn build(
        name: &str,
        input: &ConditionInput<'_>,
        uses_alpha_tilde: bool,
        violations: Vec<Violation>,
        exempt: Vec<Violation>,
    ) -> Self {
        ConditionReport {
            condition: name.to_string(),
            holds: violations.is_empty(),
            parameters: Parameters {
                n: input.graph.n(),
                min_degree: input.graph.min_degree(),
                alpha_tilde: uses_alpha_tilde.then(|| input.alpha_tilde()),
            },
            violations,
            exempt,
        }
    }
}

/// A named sufficient condition.
pub trait Condition: Send + Sync {
    /// Registry key.
    fn name(&self) -> &'static str;
    /// One-line statement of the hypothesis.
    fn statement(&self) -> &'static str;
    fn evaluate(&self, input: &ConditionInput<'_>) -> ConditionReport;
}

fn order_violation(g: &Graph) -> Option<Violation> {
    (g.n() < 3).then(|| Violation::new(vec![], "order below three", &[("n", g.n())]))
}

/// Vertices whose degree fails `ok(degree)`.
fn degree_violations(g: &Graph, reason: &str, ok: impl Fn(usize) -> bool) -> Vec<Violation> {
    (0..g.n())
        .filter(|&v| !ok(g.degree(v)))
        .map(|v| Violation::new(vec![v], reason, &[("degree", g.degree(v))]))
        .collect()
}

pub struct Dirac;

impl Condition for Dirac {
    fn name(&self) -> &'static str {
        "dirac"
    }
    fn statement(&self) -> &'static str {
        "n >= 3 and 2*delta >= n"
    }
    fn evaluate(&self, input: &ConditionInput<'_>) -> ConditionReport {
        let g = input.graph;
        let mut v: Vec<_> = order_violation(g).into_iter().collect();
        v.extend(degree_violations(g, "2*degree < n", |d| 2 * d >= g.n()));
        ConditionReport::build(self.name(), input, false, v, vec![])
    }
}

pub struct ErdosGallai;

impl Condition for ErdosGallai {
    fn name(&self) -> &'static str {
        "erdos-gallai"
    }
    fn statement(&self) -> &'static str {
        "n >= 3 and 2*delta >= n + 1"
    }
    fn evaluate(&self, input: &ConditionInput<'_>) -> ConditionReport {
        let g = input.graph;
        let mut v: Vec<_> = order_violation(g).into_iter().collect();
        v.extend(degree_violations(g, "2*degree < n + 1", |d| 2 * d > g.n()));
        ConditionReport::build(self.name(), input, false, v, vec![])
    }
}

pub struct OreConnected;

impl Condition for OreConnected {
    fn name(&self) -> &'static str {
        "ore"
    }
    fn statement(&self) -> &'static str {
        "n >= 3 and d(x) + d(y) >= n + 1 for every nonadjacent pair"
    }
    fn evaluate(&self, input: &ConditionInput<'_>) -> ConditionReport {
        let g = input.graph;
        let n = g.n();
        let mut v: Vec<_> = order_violation(g).into_iter().collect();
        for x in 0..n {
            for y in x + 1..n {
                let sum = g.degree(x) + g.degree(y);
                if !g.has_edge(x, y) && sum < n + 1 {
                    v.push(Violation::new(
                        vec![x, y],
                        "nonadjacent degree sum < n + 1",
                        &[("degree_sum", sum)],
                    ));
                }
            }
        }
        ConditionReport::build(self.name(), input, false, v, vec![])
    }
}

pub struct McDiarmidYolov;

impl Condition for McDiarmidYolov {
    fn name(&self) -> &'static str {
        "my"
    }
    fn statement(&self) -> &'static str {
        "n >= 3 and delta >= alpha_tilde"
    }
    fn evaluate(&self, input: &ConditionInput<'_>) -> ConditionReport {
        let g = input.graph;
        let at = input.alpha_tilde();
        let mut v: Vec<_> = order_violation(g).into_iter().collect();
        v.extend(degree_violations(g, "degree < alpha_tilde", |d| d >= at));
        ConditionReport::build(self.name(), input, true, v, vec![])
    }
}

pub struct Zhou;

impl Condition for Zhou {
    fn name(&self) -> &'static str {
        "zhou"
    }
    fn statement(&self) -> &'static str {
        "n >= 3 and delta >= alpha_tilde + 1"
    }
    fn evaluate(&self, input: &ConditionInput<'_>) -> ConditionReport {
        let g = input.graph;
        let at = input.alpha_tilde();
        let mut v: Vec<_> = order_violation(g).into_iter().collect();
        v.extend(degree_violations(g, "degree < alpha_tilde + 1", |d| d > at));
        ConditionReport::build(self.name(), input, true, v, vec![])
    }
}

/// `I(x, y) ≥ α₂(x, y) + 2` for every distance-2 pair with
/// `max(d(x), d(y)) < α̃(G)`; other distance-2 pairs are exempt.
pub struct FanType;

impl Condition for FanType {
    fn name(&self) -> &'static str {
        "fan-type"
    }
    fn statement(&self) -> &'static str {
        "I(x,y) >= alpha2(x,y) + 2 whenever d(x,y) = 2 and max(d(x), d(y)) < alpha_tilde"
    }
    fn evaluate(&self, input: &ConditionInput<'_>) -> ConditionReport {
        let g = input.graph;
        let at = input.alpha_tilde();
        let mut violations = Vec::new();
        let mut exempt = Vec::new();
        for (x, y) in input.distance_two_pairs() {
            let max_deg = g.degree(x).max(g.degree(y));
            if max_deg >= at {
                exempt.push(Violation::new(
                    vec![x, y],
                    "max degree >= alpha_tilde",
                    &[("max_degree", max_deg)],
                ));
                continue;
            }
            let i = common_neighbors(g, x, y);
            let a2 = alpha2(g, x, y).expect("pair taken from the distance-2 list");
            if i < a2 + 2 {
                violations.push(Violation::new(
                    vec![x, y],
                    "I(x,y) < alpha2(x,y) + 2",
                    &[("I", i), ("alpha2", a2), ("max_degree", max_deg)],
                ));
            }
        }
        ConditionReport::build(self.name(), input, true, violations, exempt)
    }
}

/// `min{max(d(x), d(y)) : d(x, y) = 2} ≥ α̃(G)`.
pub struct Corollary9;

impl Condition for Corollary9 {
    fn name(&self) -> &'static str {
        "corollary9"
    }
    fn statement(&self) -> &'static str {
        "max(d(x), d(y)) >= alpha_tilde for every pair at distance 2"
    }
    fn evaluate(&self, input: &ConditionInput<'_>) -> ConditionReport {
        let g = input.graph;
        let at = input.alpha_tilde();
        let violations = input
            .distance_two_pairs()
            .into_iter()
            .filter_map(|(x, y)| {
                let max_deg = g.degree(x).max(g.degree(y));
                (max_deg < at).then(|| {
                    Violation::new(
                        vec![x, y],
                        "max degree < alpha_tilde",
                        &[("max_degree", max_deg)],
                    )
                })
            })
            .collect();
        ConditionReport::build(self.name(), input, true, violations, vec![])
    }
}

/// Name-keyed collection of [`Condition`] objects.
pub struct ConditionRegistry {
    entries: BTreeMap<&'static str, Box<dyn Condition>>,
}

impl Default for ConditionRegistry {
    fn default() -> Self {
        let mut r = ConditionRegistry::empty();
        r.register(Box::new(Dirac));
        r.register(Box::new(ErdosGallai));
        r.register(Box::new(OreConnected));
        r.register(Box::new(McDiarmidYolov));
        r.register(Box::new(Zhou));
        r.register(Box::new(FanType));
        r.register(Box::new(Corollary9));
        r
    }
}

impl ConditionRegistry {
    pub fn empty() -> Self {
        ConditionRegistry {
            entries: BTreeMap::new(),
        }
    }

    /// Adds or replaces a condition under its own name.
    pub fn register(&mut self, condition: Box<dyn Condition>) {
        self.entries.insert(condition.name(), condition);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Condition, ConditionError> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| ConditionError::Unknown {
                name: name.to_string(),
                valid: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Condition> {
        self.entries.values().map(|b| b.as_ref())
    }

    /// Evaluates the named conditions (all when `names` is empty), keyed by
    /// name in sorted order.
    pub fn evaluate(
        &self,
        g: &Graph,
        names: &[&str],
    ) -> Result<BTreeMap<String, ConditionReport>, ConditionError> {
        let chosen: Vec<&dyn Condition> = if names.is_empty() {
            self.iter().collect()
        } else {
            names.iter().map(|n| self.get(n)).collect::<Result<_, _>>()?
        };
        let input = ConditionInput::new(g);
        Ok(chosen
            .into_iter()
            .map(|c| (c.name().to_string(), c.evaluate(&input)))
            .collect())
    }
}

pub fn check_dirac(g: &Graph) -> ConditionReport {
    Dirac.evaluate(&ConditionInput::new(g))
}

pub fn check_erdos_gallai(g: &Graph) -> ConditionReport {
    ErdosGallai.evaluate(&ConditionInput::new(g))
}

pub fn check_ore_hc(g: &Graph) -> ConditionReport {
    OreConnected.evaluate(&ConditionInput::new(g))
}

pub fn check_mcdiarmid_yolov(g: &Graph) -> ConditionReport {
    McDiarmidYolov.evaluate(&ConditionInput::new(g))
}

pub fn check_zhou(g: &Graph) -> ConditionReport {
    Zhou.evaluate(&ConditionInput::new(g))
}

pub fn check_fan_type(g: &Graph) -> ConditionReport {
    FanType.evaluate(&ConditionInput::new(g))
}

pub fn check_corollary9(g: &Graph) -> ConditionReport {
    Corollary9.evaluate(&ConditionInput::new(g))
}
