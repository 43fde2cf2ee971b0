//! Bipartite-hole-number toolkit.
//!
//! * [`hole`]: exact `α̃(G)` with certificates.
//! * [`heavy_cycle`]: a cycle through all vertices of degree `≥ α̃(G)` in a
//!   2-connected graph.
//! * [`heavy_path`]: a `(u, v)`-path through all vertices of degree
//!   `≥ α̃(G) + 1`.
//! * [`conditions`]: hypothesis checkers for classical Hamiltonicity
//!   conditions.
//! * [`oracle`]: brute-force ground truth for small graphs.
//! * [`sweep`]: property sweeps over graph streams.

pub mod bitset;
pub mod conditions;
pub mod disjoint;
pub mod generators;
pub mod graph;
pub mod heavy_cycle;
pub mod heavy_path;
pub mod hole;
pub mod io;
pub mod oracle;
pub mod path;
pub mod sweep;

pub use bitset::VertexSet;
pub use graph::{Distance, Graph, GraphError};
pub use hole::{bipartite_hole_number, HoleCertificate, HoleWitness, Split};
pub use path::{Cycle, OrientedPath};
