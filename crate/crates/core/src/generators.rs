//! Deterministic graph sources: named families, seeded `G(n, p)`, and
//! exhaustive labeled enumeration.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::MAX_VERTICES;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("unknown family `{0}` (known: complete, cycle, path, complete_bipartite, star, petersen, theta, empty)")]
    UnknownFamily(String),
    #[error("bad parameters for `{family}`: {reason}")]
    BadParams { family: String, reason: String },
    #[error("probability {num}/{den} is not in [0, 1]")]
    BadProbability { num: u64, den: u64 },
    #[error("exhaustive enumeration of n = {n} needs the large-enumeration flag (default limit {limit})")]
    EnumerationGated { n: usize, limit: usize },
    #[error("exhaustive enumeration supports n <= {max}, got {n}")]
    EnumerationTooLarge { n: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Named families. Numbering:
/// * `Complete(n)`, `Empty(n)`: vertices `0..n`.
/// * `Cycle(n)`: edges `i ~ i+1 (mod n)`, `n ≥ 3`.
/// * `Path(n)`: edges `i ~ i+1`, `n ≥ 1`.
/// * `CompleteBipartite(a, b)`: sides `0..a` and `a..a+b`.
/// * `Star(n)`: centre `0` joined to `1..n` (`n` vertices in total).
/// * `Petersen`: outer cycle `0..5`, spokes `i ~ i+5`, inner pentagram
///   `5+i ~ 5+(i+2 mod 5)`.
/// * `Theta(a, b, c)`: poles `0` and `1` joined by internally disjoint paths
///   of lengths `a`, `b`, `c`; interior vertices numbered path by path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    Petersen,
    Theta(usize, usize, usize),
    Empty(usize),
}

impl FromStr for Family {
    type Err = GeneratorError;

    /// Parses `name[,param...]`, e.g. `cycle,5` or `theta,2,2,2`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut parts = text.split(',').map(str::trim);
        let name = parts.next().unwrap_or_default().to_ascii_lowercase();
        let params: Vec<&str> = parts.collect();
        let bad = |reason: &str| GeneratorError::BadParams {
            family: name.clone(),
            reason: reason.to_string(),
        };
        let nums = params
            .iter()
            .map(|p| p.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad("parameters must be non-negative integers"))?;
        let arity = |k: usize| -> Result<(), GeneratorError> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} parameter(s), got {}", nums.len())))
            }
        };
        let fam = match name.as_str() {
            "complete" => {
                arity(1)?;
                Family::Complete(nums[0])
            }
            "cycle" => {
                arity(1)?;
                Family::Cycle(nums[0])
            }
            "path" => {
                arity(1)?;
                Family::Path(nums[0])
            }
            "complete_bipartite" => {
                arity(2)?;
                Family::CompleteBipartite(nums[0], nums[1])
            }
            "star" => {
                arity(1)?;
                Family::Star(nums[0])
            }
            "petersen" => {
                arity(0)?;
                Family::Petersen
            }
            "theta" => {
                arity(3)?;
                Family::Theta(nums[0], nums[1], nums[2])
            }
            "empty" => {
                arity(1)?;
                Family::Empty(nums[0])
            }
            _ => return Err(GeneratorError::UnknownFamily(name)),
        };
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete,{n}"),
            Family::Cycle(n) => write!(f, "cycle,{n}"),
            Family::Path(n) => write!(f, "path,{n}"),
            Family::CompleteBipartite(a, b) => write!(f, "complete_bipartite,{a},{b}"),
            Family::Star(n) => write!(f, "star,{n}"),
            Family::Petersen => f.write_str("petersen"),
            Family::Theta(a, b, c) => write!(f, "theta,{a},{b},{c}"),
            Family::Empty(n) => write!(f, "empty,{n}"),
        }
    }
}

/// Builds a member of a named family.
pub fn named(family: &Family) -> Result<Graph, GeneratorError> {
    let bad = |reason: &str| GeneratorError::BadParams {
        family: family.to_string(),
        reason: reason.to_string(),
    };
    let g = match *family {
        Family::Complete(n) => {
            Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))?
        }
        Family::Empty(n) => Graph::empty(n)?,
        Family::Cycle(n) => {
            if n < 3 {
                return Err(bad("a cycle needs at least 3 vertices"));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?
        }
        Family::Path(n) => {
            if n < 1 {
                return Err(bad("a path needs at least 1 vertex"));
            }
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?
        }
        Family::CompleteBipartite(a, b) => {
            Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))?
        }
        Family::Star(n) => {
            if n < 1 {
                return Err(bad("a star needs at least 1 vertex"));
            }
            Graph::from_edges(n, (1..n).map(|v| (0, v)))?
        }
        Family::Petersen => {
            let mut edges = Vec::with_capacity(15);
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::from_edges(10, edges)?
        }
        Family::Theta(a, b, c) => {
            let lengths = [a, b, c];
            if lengths.contains(&0) {
                return Err(bad("path lengths must be positive"));
            }
            if lengths.iter().filter(|&&l| l == 1).count() > 1 {
                return Err(bad("at most one path may have length 1"));
            }
            let n = 2 + lengths.iter().map(|l| l - 1).sum::<usize>();
            let mut edges = Vec::new();
            let mut next = 2;
            for l in lengths {
                let mut prev = 0;
                for _ in 0..l - 1 {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, 1));
            }
            Graph::from_edges(n, edges)?
        }
    };
    Ok(g)
}

/// Maps one ChaCha8 output word onto `[0, den)` by multiply-shift and
/// compares with `num`. The stream is consumed one word per pair.
fn bernoulli(rng: &mut ChaCha8Rng, num: u64, den: u64) -> bool {
    let x = rng.next_u64();
    (((x as u128) * (den as u128)) >> 64) < num as u128
}

/// `G(n, p)` with `p = num/den`. Pairs are visited in lexicographic order
/// `(0,1), (0,2), ..., (n-2,n-1)`, one ChaCha8 word each, seeded by `seed`.
pub fn erdos_renyi(n: usize, num: u64, den: u64, seed: u64) -> Result<Graph, GeneratorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    erdos_renyi_with(n, num, den, &mut rng)
}

fn erdos_renyi_with(
    n: usize,
    num: u64,
    den: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Graph, GeneratorError> {
    if den == 0 || num > den {
        return Err(GeneratorError::BadProbability { num, den });
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if bernoulli(rng, num, den) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// A seeded stream of `count` graphs from `G(n, num/den)`, all drawn from
/// one ChaCha8 stream.
pub fn erdos_renyi_stream(
    count: usize,
    n: usize,
    num: u64,
    den: u64,
    seed: u64,
) -> Result<impl Iterator<Item = Graph>, GeneratorError> {
    if den == 0 || num > den {
        return Err(GeneratorError::BadProbability { num, den });
    }
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n, max: MAX_VERTICES }.into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(move |_| erdos_renyi_with(n, num, den, &mut rng).unwrap()))
}

/// Edge densities used by [`mixed_stream`].
pub const MIXED_DENSITIES: [(u64, u64); 6] = [(1, 5), (1, 3), (1, 2), (3, 5), (2, 3), (4, 5)];

/// A seeded stream of `count` random graphs with `n` drawn uniformly from
/// `min_n..=max_n` and `p` from [`MIXED_DENSITIES`].
pub fn mixed_stream(
    count: usize,
    min_n: usize,
    max_n: usize,
    seed: u64,
) -> impl Iterator<Item = Graph> {
    assert!(min_n <= max_n && max_n <= MAX_VERTICES);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |_| {
        let n = rng.gen_range(min_n..=max_n);
        let (num, den) = MIXED_DENSITIES[rng.gen_range(0..MIXED_DENSITIES.len())];
        erdos_renyi_with(n, num, den, &mut rng).unwrap()
    })
}

/// Default exhaustive limit; larger orders require `allow_large`.
pub const ENUMERATION_DEFAULT_LIMIT: usize = 6;
/// Hard exhaustive limit (`2^28` graphs at n = 8).
pub const ENUMERATION_MAX: usize = 8;

/// All labeled simple graphs on `n` vertices.
///
/// Graph `i` contains pair number `j` (lexicographic pair order) iff bit `j`
/// of `i` is set, so the stream has exactly `2^(n(n-1)/2)` distinct members.
pub fn enumerate_labeled(
    n: usize,
    allow_large: bool,
) -> Result<LabeledGraphs, GeneratorError> {
    if n > ENUMERATION_MAX {
        return Err(GeneratorError::EnumerationTooLarge {
            n,
            max: ENUMERATION_MAX,
        });
    }
    if n > ENUMERATION_DEFAULT_LIMIT && !allow_large {
        return Err(GeneratorError::EnumerationGated {
            n,
            limit: ENUMERATION_DEFAULT_LIMIT,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let end = 1u64 << pairs.len();
    Ok(LabeledGraphs {
        n,
        pairs,
        next: 0,
        end,
    })
}

/// Iterator returned by [`enumerate_labeled`]; supports index-range sharding.
#[derive(Clone)]
pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl LabeledGraphs {
    /// Total number of graphs in the full stream.
    pub fn total(&self) -> u64 {
        1u64 << self.pairs.len()
    }

    /// Restricts the stream to masks in `start..end`.
    pub fn shard(mut self, start: u64, end: u64) -> Self {
        self.next = start.min(self.total());
        self.end = end.min(self.total());
        self
    }

    /// The graph for edge mask `mask`.
    pub fn graph(&self, mask: u64) -> Graph {
        Graph::from_edges(
            self.n,
            self.pairs
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, &p)| p),
        )
        .unwrap()
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let g = self.graph(self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn named_examples() {
        assert_eq!(named(&Family::Cycle(5)).unwrap().m(), 5);
        assert_eq!(named(&Family::CompleteBipartite(2, 3)).unwrap().m(), 6);
        let theta = named(&Family::Theta(2, 2, 2)).unwrap();
        let k23 = named(&Family::CompleteBipartite(2, 3)).unwrap();
        // poles {0,1}, middles {2,3,4}: the same labeled graph as K_{2,3}
        assert_eq!(theta, k23);
        let pet = named(&Family::Petersen).unwrap();
        assert_eq!(pet.m(), 15);
        assert!(pet.degrees().iter().all(|&d| d == 3));
        assert_eq!(named(&Family::Star(4)).unwrap().degrees(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn family_parse() {
        assert_eq!("cycle,5".parse::<Family>().unwrap(), Family::Cycle(5));
        assert_eq!("petersen".parse::<Family>().unwrap(), Family::Petersen);
        assert_eq!(
            "theta, 1, 2, 3".parse::<Family>().unwrap(),
            Family::Theta(1, 2, 3)
        );
        assert!(matches!(
            "hypercube,3".parse::<Family>(),
            Err(GeneratorError::UnknownFamily(_))
        ));
        assert!(matches!(
            "cycle".parse::<Family>(),
            Err(GeneratorError::BadParams { .. })
        ));
        assert!(named(&Family::Cycle(2)).is_err());
        assert!(named(&Family::Theta(1, 1, 2)).is_err());
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        assert_eq!(erdos_renyi(6, 1, 1, 7).unwrap(), named(&Family::Complete(6)).unwrap());
        assert_eq!(erdos_renyi(6, 0, 3, 7).unwrap(), named(&Family::Empty(6)).unwrap());
        assert_eq!(erdos_renyi(12, 1, 2, 42).unwrap(), erdos_renyi(12, 1, 2, 42).unwrap());
        assert_ne!(erdos_renyi(12, 1, 2, 42).unwrap(), erdos_renyi(12, 1, 2, 43).unwrap());
        assert!(erdos_renyi(3, 3, 2, 0).is_err());
        assert!(erdos_renyi(3, 0, 0, 0).is_err());
    }

    #[test]
    fn gnp_density_is_plausible() {
        let total: usize = erdos_renyi_stream(200, 10, 1, 2, 1).unwrap().map(|g| g.m()).sum();
        let mean = total as f64 / 200.0;
        assert!((mean - 22.5).abs() < 1.5, "mean edges {mean}");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_labeled(2, false).unwrap().count(), 2);
        assert_eq!(enumerate_labeled(3, false).unwrap().count(), 8);
        let all: Vec<Graph> = enumerate_labeled(4, false).unwrap().collect();
        assert_eq!(all.len(), 64);
        let distinct: HashSet<Graph> = all.into_iter().collect();
        assert_eq!(distinct.len(), 64);
        assert!(matches!(
            enumerate_labeled(7, false),
            Err(GeneratorError::EnumerationGated { .. })
        ));
        assert!(enumerate_labeled(7, true).is_ok());
        assert!(enumerate_labeled(9, true).is_err());
    }

    #[test]
    fn enumeration_shards_cover_stream() {
        let full: Vec<Graph> = enumerate_labeled(4, false).unwrap().collect();
        let base = enumerate_labeled(4, false).unwrap();
        let mut sharded: Vec<Graph> = base.clone().shard(0, 20).collect();
        sharded.extend(base.shard(20, 64));
        assert_eq!(full, sharded);
    }
}
