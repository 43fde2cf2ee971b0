//! Property sweeps: run a battery of named checks over a stream of graphs,
//! in parallel, with a deterministic summary and replayable counterexamples.

use std::cell::OnceCell;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::conditions::{check_corollary9, check_fan_type};
use crate::generators::{enumerate_labeled, erdos_renyi_stream, GeneratorError};
use crate::graph::Graph;
use crate::heavy_cycle::{cycle_through_heavy_with, verify_heavy_cycle};
use crate::heavy_path::{heavy_path_with, verify_heavy_path};
use crate::hole::{bipartite_hole_number, naive_bipartite_hole_number, HoleCertificate};
use crate::io::{parse_graph6, write_graph6};
use crate::oracle::{Oracle, OracleError};

/// Version tag carried by every serialized summary.
pub const SCHEMA: u32 = 1;

/// Counterexamples kept in a summary (counts are always exact).
pub const MAX_COUNTEREXAMPLES: usize = 100;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("unknown property `{name}` (valid: {valid})")]
    UnknownProperty { name: String, valid: String },
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// Verdict of one property on one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// Hypothesis not met; nothing to check.
    Skip,
    Fail(String),
}

/// A graph plus lazily computed, shared facts about it.
pub struct Subject<'a> {
    pub graph: &'a Graph,
    pub oracle: Oracle,
    cert: OnceCell<HoleCertificate>,
    two_connected: OnceCell<bool>,
    hamiltonian: OnceCell<Result<bool, OracleError>>,
}

impl<'a> Subject<'a> {
    pub fn new(graph: &'a Graph, oracle: Oracle) -> Self {
        Subject {
            graph,
            oracle,
            cert: OnceCell::new(),
            two_connected: OnceCell::new(),
            hamiltonian: OnceCell::new(),
        }
    }

    pub fn certificate(&self) -> &HoleCertificate {
        self.cert.get_or_init(|| bipartite_hole_number(self.graph))
    }

    pub fn alpha_tilde(&self) -> usize {
        self.certificate().value
    }

    pub fn two_connected(&self) -> bool {
        *self.two_connected.get_or_init(|| self.graph.is_two_connected())
    }

    pub fn hamiltonian(&self) -> Result<bool, OracleError> {
        self.hamiltonian
            .get_or_init(|| self.oracle.hamiltonian(self.graph))
            .clone()
    }
}

/// A named check applied to each graph of a sweep.
pub trait Property: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn check(&self, subject: &Subject<'_>) -> Outcome;
}

fn fail(msg: impl Into<String>) -> Outcome {
    Outcome::Fail(msg.into())
}

fn oracle_says_hamiltonian(subject: &Subject<'_>, why: &str) -> Outcome {
    match subject.hamiltonian() {
        Ok(true) => Outcome::Pass,
        Ok(false) => fail(format!("{why}, yet the oracle finds no Hamilton cycle")),
        Err(e) => fail(e.to_string()),
    }
}

pub struct AlphaOracle;

impl Property for AlphaOracle {
    fn name(&self) -> &'static str {
        "alpha-oracle"
    }
    fn description(&self) -> &'static str {
        "alpha_tilde equals the naive double enumeration; certificate validates"
    }
    fn check(&self, s: &Subject<'_>) -> Outcome {
        let cert = s.certificate();
        let naive = naive_bipartite_hole_number(s.graph);
        if cert.value != naive {
            fail(format!("fast value {} but naive value {naive}", cert.value))
        } else if !cert.validates(s.graph) {
            fail("certificate does not validate")
        } else {
            Outcome::Pass
        }
    }
}

pub struct HeavyCycleSound;

impl Property for HeavyCycleSound {
    fn name(&self) -> &'static str {
        "thm4"
    }
    fn description(&self) -> &'static str {
        "2-connected: the constructed cycle covers every vertex of degree >= alpha_tilde"
    }
    fn check(&self, s: &Subject<'_>) -> Outcome {
        if !s.two_connected() {
            return Outcome::Skip;
        }
        match cycle_through_heavy_with(s.graph, s.certificate()) {
            Ok(h) if verify_heavy_cycle(s.graph, &h.cycle, s.alpha_tilde()) => Outcome::Pass,
            Ok(h) => fail(format!("invalid cycle {:?}", h.cycle)),
            Err(e) => fail(e.to_string()),
        }
    }
}

pub struct HamiltonFromMinDegree;

impl Property for HamiltonFromMinDegree {
    fn name(&self) -> &'static str {
        "thm3"
    }
    fn description(&self) -> &'static str {
        "n >= 3 and delta >= alpha_tilde: the constructed cycle is Hamiltonian and the oracle agrees"
    }
    fn check(&self, s: &Subject<'_>) -> Outcome {
        let g = s.graph;
        if g.n() < 3 || g.min_degree() < s.alpha_tilde() {
            return Outcome::Skip;
        }
        match cycle_through_heavy_with(g, s.certificate()) {
            Ok(h) if h.cycle.len() == g.n() && h.cycle.is_valid_in(g) => {
                oracle_says_hamiltonian(s, "constructed a Hamilton cycle")
            }
            Ok(h) => fail(format!("cycle {:?} is not Hamiltonian", h.cycle)),
            Err(e) => fail(e.to_string()),
        }
    }
}

/// All ordered pairs of distinct vertices with degree at least `threshold`.
fn heavy_pairs(g: &Graph, threshold: usize) -> Vec<(usize, usize)> {
    let heavy: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= threshold).collect();
    heavy
        .iter()
        .flat_map(|&u| heavy.iter().filter(move |&&v| v != u).map(move |&v| (u, v)))
        .collect()
}

pub struct HeavyPathSound;

impl Property for HeavyPathSound {
    fn name(&self) -> &'static str {
        "thm7"
    }
    fn description(&self) -> &'static str {
        "connected: for every pair of degree >= alpha_tilde + 1 the constructed path covers all such vertices"
    }
    fn check(&self, s: &Subject<'_>) -> Outcome {
        let g = s.graph;
        if !g.is_connected() {
            return Outcome::Skip;
        }
        let threshold = s.alpha_tilde() + 1;
        let pairs = heavy_pairs(g, threshold);
        if pairs.is_empty() {
            return Outcome::Skip;
        }
        for (u, v) in pairs {
            match heavy_path_with(g, s.certificate(), u, v) {
                Ok(h) if verify_heavy_path(g, &h.path, u, v, threshold) => {}
                Ok(h) => return fail(format!("({u}, {v}): invalid path {:?}", h.path)),
                Err(e) => return fail(format!("({u}, {v}): {e}")),
            }
        }
        Outcome::Pass
    }
}

pub struct HamiltonConnectedFromMinDegree;

impl Property for HamiltonConnectedFromMinDegree {
    fn name(&self) -> &'static str {
        "thm6"
    }
    fn description(&self) -> &'static str {
        "delta >= alpha_tilde + 1: Hamilton paths between all pairs, and the oracle agrees"
    }
    fn check(&self, s: &Subject<'_>) -> Outcome {
        let g = s.graph;
        let threshold = s.alpha_tilde() + 1;
        if g.n() < 2 || g.min_degree() < threshold {
            return Outcome::Skip;
        }
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u == v {
                    continue;
                }
                match heavy_path_with(g, s.certificate(), u, v) {
                    Ok(h) if h.path.len() == g.n() && verify_heavy_path(g, &h.path, u, v, 0) => {}
                    Ok(h) => return fail(format!("({u}, {v}): {:?} is not a Hamilton path", h.path)),
                    Err(e) => return fail(format!("({u}, {v}): {e}")),
                }
            }
        }
        match s.oracle.hamiltonian_connected(g) {
            Ok(true) => Outcome::Pass,
            Ok(false) => fail("constructed all Hamilton paths, yet the oracle disagrees"),
            Err(e) => fail(e.to_string()),
        }
    }
}

pub struct FanTypeConsistent;

impl Property for FanTypeConsistent {
    fn name(&self) -> &'static str {
        "fan"
    }
    fn description(&self) -> &'static str {
        "2-connected and the fan-type hypothesis holds: the oracle finds a Hamilton cycle"
    }
    fn check(&self, s: &Subject<'_>) -> Outcome {
        if !s.two_connected() || !check_fan_type(s.graph).holds {
            return Outcome::Skip;
        }
        oracle_says_hamiltonian(s, "fan-type hypothesis holds")
    }
}

pub struct Corollary9Consistent;

impl Property for Corollary9Consistent {
    fn name(&self) -> &'static str {
        "cor9"
    }
    fn description(&self) -> &'static str {
        "2-connected and max-degree over distance-2 pairs >= alpha_tilde: the oracle finds a Hamilton cycle"
    }
    fn check(&self, s: &Subject<'_>) -> Outcome {
        if !s.two_connected() || !check_corollary9(s.graph).holds {
            return Outcome::Skip;
        }
        oracle_says_hamiltonian(s, "distance-2 degree hypothesis holds")
    }
}

pub struct DiracChain;

impl Property for DiracChain {
    fn name(&self) -> &'static str {
        "dirac-chain"
    }
    fn description(&self) -> &'static str {
        "2*delta >= n implies alpha_tilde <= ceil(n/2)"
    }
    fn check(&self, s: &Subject<'_>) -> Outcome {
        let g = s.graph;
        if g.n() == 0 || 2 * g.min_degree() < g.n() {
            return Outcome::Skip;
        }
        let bound = g.n().div_ceil(2);
        if s.alpha_tilde() <= bound {
            Outcome::Pass
        } else {
            fail(format!("alpha_tilde {} > ceil(n/2) = {bound}", s.alpha_tilde()))
        }
    }
}

pub struct Graph6RoundTrip;

impl Property for Graph6RoundTrip {
    fn name(&self) -> &'static str {
        "graph6"
    }
    fn description(&self) -> &'static str {
        "parse(write(G)) == G"
    }
    fn check(&self, s: &Subject<'_>) -> Outcome {
        let text = write_graph6(s.graph);
        match parse_graph6(&text) {
            Ok(back) if &back == s.graph => Outcome::Pass,
            Ok(_) => fail(format!("`{text}` decodes to a different graph")),
            Err(e) => fail(format!("`{text}`: {e}")),
        }
    }
}

/// Name-keyed collection of [`Property`] objects.
pub struct PropertyRegistry {
    entries: BTreeMap<&'static str, Box<dyn Property>>,
}

impl Default for PropertyRegistry {
    fn default() -> Self {
        let mut r = PropertyRegistry::empty();
        r.register(Box::new(AlphaOracle));
        r.register(Box::new(HeavyCycleSound));
        r.register(Box::new(HamiltonFromMinDegree));
        r.register(Box::new(HeavyPathSound));
        r.register(Box::new(HamiltonConnectedFromMinDegree));
        r.register(Box::new(FanTypeConsistent));
        r.register(Box::new(Corollary9Consistent));
        r.register(Box::new(DiracChain));
        r.register(Box::new(Graph6RoundTrip));
        r
    }
}

impl PropertyRegistry {
    pub fn empty() -> Self {
        PropertyRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, property: Box<dyn Property>) {
        self.entries.insert(property.name(), property);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Property, SweepError> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| SweepError::UnknownProperty {
                name: name.to_string(),
                valid: self.names().join(", "),
            })
    }

    /// Resolves names (all properties when `names` is empty).
    pub fn select(&self, names: &[&str]) -> Result<Vec<&dyn Property>, SweepError> {
        if names.is_empty() {
            return Ok(self.entries.values().map(|b| b.as_ref()).collect());
        }
        names.iter().map(|n| self.get(n)).collect()
    }
}

/// Where the graphs of a sweep come from.
#[derive(Debug, Clone)]
pub enum Source {
    /// Every labeled graph on `n` vertices.
    Enumerate { n: usize, allow_large: bool },
    /// `count` draws from `G(n, num/den)` with one seeded stream.
    Random {
        count: usize,
        n: usize,
        num: u64,
        den: u64,
        seed: u64,
    },
    /// Explicit graphs, e.g. parsed from a graph6 file.
    Graphs(Vec<Graph>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertySummary {
    pub property: String,
    pub passed: u64,
    pub skipped: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Position of the graph in the source stream.
    pub index: u64,
    pub graph6: String,
    pub property: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub schema: u32,
    pub graphs: u64,
    pub properties: Vec<PropertySummary>,
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl SweepSummary {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    pub fn property(&self, name: &str) -> Option<&PropertySummary> {
        self.properties.iter().find(|p| p.property == name)
    }

    /// One graph6 line per distinct failing graph, in stream order.
    pub fn dump(&self) -> String {
        let mut seen = std::collections::BTreeSet::new();
        self.counterexamples
            .iter()
            .filter(|c| seen.insert(c.index))
            .map(|c| format!("{}\n", c.graph6))
            .collect()
    }
}

#[derive(Default)]
struct Tally {
    graphs: u64,
    counts: Vec<[u64; 3]>,
    examples: Vec<Counterexample>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.graphs += other.graphs;
        if self.counts.is_empty() {
            self.counts = other.counts;
        } else {
            for (a, b) in self.counts.iter_mut().zip(other.counts) {
                for i in 0..3 {
                    a[i] += b[i];
                }
            }
        }
        self.examples.extend(other.examples);
        self.examples.sort_by(|a, b| (a.index, &a.property).cmp(&(b.index, &b.property)));
        self.examples.truncate(MAX_COUNTEREXAMPLES);
        self
    }
}

fn check_one(index: u64, g: &Graph, props: &[&dyn Property], oracle: Oracle, tally: &mut Tally) {
    if tally.counts.is_empty() {
        tally.counts = vec![[0; 3]; props.len()];
    }
    tally.graphs += 1;
    let subject = Subject::new(g, oracle);
    for (i, p) in props.iter().enumerate() {
        match p.check(&subject) {
            Outcome::Pass => tally.counts[i][0] += 1,
            Outcome::Skip => tally.counts[i][1] += 1,
            Outcome::Fail(detail) => {
                tally.counts[i][2] += 1;
                if tally.examples.len() < MAX_COUNTEREXAMPLES {
                    tally.examples.push(Counterexample {
                        index,
                        graph6: write_graph6(g),
                        property: p.name().to_string(),
                        detail,
                    });
                }
            }
        }
    }
}

/// Runs `props` over every graph of `source` on `jobs` worker threads
/// (`0` = one per core). The summary does not depend on `jobs`.
pub fn run_sweep(
    source: &Source,
    props: &[&dyn Property],
    oracle: Oracle,
    jobs: usize,
) -> Result<SweepSummary, SweepError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    let fold = |mut t: Tally, (i, g): (u64, Graph)| {
        check_one(i, &g, props, oracle, &mut t);
        t
    };
    let tally = pool.install(|| -> Result<Tally, SweepError> {
        Ok(match source {
            Source::Enumerate { n, allow_large } => {
                let all = enumerate_labeled(*n, *allow_large)?;
                (0..all.total())
                    .into_par_iter()
                    .map(|mask| (mask, all.graph(mask)))
                    .fold(Tally::default, fold)
                    .reduce(Tally::default, Tally::merge)
            }
            Source::Random {
                count,
                n,
                num,
                den,
                seed,
            } => erdos_renyi_stream(*count, *n, *num, *den, *seed)?
                .enumerate()
                .map(|(i, g)| (i as u64, g))
                .par_bridge()
                .fold(Tally::default, fold)
                .reduce(Tally::default, Tally::merge),
            Source::Graphs(graphs) => graphs
                .par_iter()
                .enumerate()
                .map(|(i, g)| (i as u64, g.clone()))
                .fold(Tally::default, fold)
                .reduce(Tally::default, Tally::merge),
        })
    })?;
    let counts = if tally.counts.is_empty() {
        vec![[0; 3]; props.len()]
    } else {
        tally.counts
    };
    let mut properties: Vec<PropertySummary> = props
        .iter()
        .zip(counts)
        .map(|(p, [passed, skipped, failed])| PropertySummary {
            property: p.name().to_string(),
            passed,
            skipped,
            failed,
        })
        .collect();
    properties.sort_by(|a, b| a.property.cmp(&b.property));
    Ok(SweepSummary {
        schema: SCHEMA,
        graphs: tally.graphs,
        failures: properties.iter().map(|p| p.failed).sum(),
        properties,
        counterexamples: tally.examples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, Family};

    #[test]
    fn registry_names() {
        let reg = PropertyRegistry::default();
        assert_eq!(
            reg.names(),
            vec!["alpha-oracle", "cor9", "dirac-chain", "fan", "graph6", "thm3", "thm4", "thm6", "thm7"]
        );
        assert!(matches!(reg.select(&["nope"]), Err(SweepError::UnknownProperty { .. })));
    }

    #[test]
    fn small_enumeration_is_clean() {
        let reg = PropertyRegistry::default();
        let props = reg.select(&[]).unwrap();
        let summary = run_sweep(&Source::Enumerate { n: 4, allow_large: false }, &props, Oracle::new(14), 2)
            .unwrap();
        assert_eq!(summary.graphs, 64);
        assert!(summary.ok(), "{summary:?}");
        assert_eq!(summary.property("alpha-oracle").unwrap().passed, 64);
        // 2-connected labeled graphs on 4 vertices: 3 four-cycles, 6 K4-minus-edge, K4
        assert_eq!(summary.property("thm4").unwrap().passed, 10);
    }

    #[test]
    fn summary_independent_of_jobs() {
        let reg = PropertyRegistry::default();
        let props = reg.select(&["thm4", "thm7", "graph6"]).unwrap();
        let source = Source::Random {
            count: 60,
            n: 8,
            num: 1,
            den: 2,
            seed: 42,
        };
        let a = run_sweep(&source, &props, Oracle::new(14), 1).unwrap();
        let b = run_sweep(&source, &props, Oracle::new(14), 4).unwrap();
        assert_eq!(a, b);
    }

    struct AlwaysFails;

    impl Property for AlwaysFails {
        fn name(&self) -> &'static str {
            "always-fails"
        }
        fn description(&self) -> &'static str {
            "fails on graphs with an edge"
        }
        fn check(&self, s: &Subject<'_>) -> Outcome {
            if s.graph.m() > 0 {
                fail("has an edge")
            } else {
                Outcome::Pass
            }
        }
    }

    #[test]
    fn counterexamples_are_replayable() {
        let mut reg = PropertyRegistry::empty();
        reg.register(Box::new(AlwaysFails));
        let props = reg.select(&[]).unwrap();
        let graphs = vec![
            named(&Family::Empty(3)).unwrap(),
            named(&Family::Cycle(5)).unwrap(),
            named(&Family::Petersen).unwrap(),
        ];
        let summary = run_sweep(&Source::Graphs(graphs.clone()), &props, Oracle::new(14), 3).unwrap();
        assert_eq!(summary.failures, 2);
        let indices: Vec<u64> = summary.counterexamples.iter().map(|c| c.index).collect();
        assert_eq!(indices, vec![1, 2]);
        let replay = crate::io::parse_graph6_lines(&summary.dump()).unwrap();
        assert_eq!(replay, graphs[1..].to_vec());
    }
}
