//! Plain edge lists: a header line `n m`, then `m` lines `u v`.

use super::FormatError;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, Default)]
pub struct EdgeListOptions {
    /// Ids in the file start at 1 and are shifted down on ingest.
    pub one_based: bool,
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    parse_edge_list_with(text, EdgeListOptions::default())
}

/// Blank lines after the last edge are ignored; everything else is strict.
/// Line numbers in errors are 1-based.
pub fn parse_edge_list_with(text: &str, opts: EdgeListOptions) -> Result<Graph, FormatError> {
    let lines: Vec<&str> = text.lines().collect();
    let pair = |idx: usize, what: &str| -> Result<(usize, usize), FormatError> {
        let line = idx + 1;
        let mut tok = lines[idx].split_whitespace();
        let mut next = || -> Result<usize, FormatError> {
            let t = tok
                .next()
                .ok_or_else(|| FormatError::edge_list(line, format!("expected two integers ({what})")))?;
            t.parse()
                .map_err(|_| FormatError::edge_list(line, format!("`{t}` is not a non-negative integer")))
        };
        let a = next()?;
        let b = next()?;
        if let Some(extra) = tok.next() {
            return Err(FormatError::edge_list(line, format!("unexpected token `{extra}`")));
        }
        Ok((a, b))
    };
    if lines.is_empty() {
        return Err(FormatError::edge_list(1, "missing header `n m`"));
    }
    let (n, m) = pair(0, "header `n m`")?;
    let mut edges = Vec::with_capacity(m);
    for i in 1..=m {
        if i >= lines.len() {
            return Err(FormatError::edge_list(
                i + 1,
                format!("expected {m} edges, found {}", i - 1),
            ));
        }
        let (mut a, mut b) = pair(i, "edge `u v`")?;
        if opts.one_based {
            if a == 0 || b == 0 {
                return Err(FormatError::edge_list(i + 1, "id 0 in a 1-based edge list"));
            }
            a -= 1;
            b -= 1;
        }
        for x in [a, b] {
            if x >= n {
                return Err(FormatError::edge_list(
                    i + 1,
                    format!("vertex {x} out of range for n = {n}"),
                ));
            }
        }
        if a == b {
            return Err(FormatError::edge_list(i + 1, format!("self-loop at vertex {a}")));
        }
        edges.push((a, b));
    }
    if let Some(extra) = (m + 1..lines.len()).find(|&i| !lines[i].trim().is_empty()) {
        return Err(FormatError::edge_list(
            extra + 1,
            format!("more than the {m} edges announced in the header"),
        ));
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Header then edges `u < v` in lexicographic order, LF-terminated.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_path() {
        let g = parse_edge_list("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
        assert_eq!(write_edge_list(&g), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn errors_name_lines() {
        match parse_edge_list("3 2\n0 1\n") {
            Err(FormatError::EdgeList { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_edge_list("3 1\n0 3\n") {
            Err(FormatError::EdgeList { line: 2, reason }) => assert!(reason.contains("out of range")),
            other => panic!("{other:?}"),
        }
        match parse_edge_list("3 1\n0 1\n1 2\n") {
            Err(FormatError::EdgeList { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_edge_list("3 x\n") {
            Err(FormatError::EdgeList { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_edge_list(""), Err(FormatError::EdgeList { line: 1, .. })));
        assert!(matches!(parse_edge_list("2 1\n1 1\n"), Err(FormatError::EdgeList { line: 2, .. })));
    }

    #[test]
    fn one_based_ingest() {
        let opts = EdgeListOptions { one_based: true };
        let g = parse_edge_list_with("3 2\n1 2\n2 3\n", opts).unwrap();
        assert_eq!(g, Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
        assert!(parse_edge_list_with("3 1\n0 1\n", opts).is_err());
    }

    #[test]
    fn trailing_blank_lines_ok() {
        assert!(parse_edge_list("2 1\n0 1\n\n\n").is_ok());
    }
}
