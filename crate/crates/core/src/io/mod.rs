//! Graph interchange: graph6 and edge lists (both directions), DOT (export).

mod dot;
mod edgelist;
mod graph6;

use thiserror::Error;

use crate::graph::GraphError;

pub use dot::{write_dot, Highlight};
pub use edgelist::{parse_edge_list, parse_edge_list_with, write_edge_list, EdgeListOptions};
pub use graph6::{parse_graph6, parse_graph6_lines, write_graph6, GRAPH6_HEADER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("graph6: {reason} at byte {offset}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge list: {reason} on line {line}")]
    EdgeList { line: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl FormatError {
    pub(crate) fn graph6(offset: usize, reason: impl Into<String>) -> Self {
        FormatError::Graph6 {
            offset,
            reason: reason.into(),
        }
    }

    pub(crate) fn edge_list(line: usize, reason: impl Into<String>) -> Self {
        FormatError::EdgeList {
            line,
            reason: reason.into(),
        }
    }
}
