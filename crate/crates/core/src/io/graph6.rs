//! McKay's graph6 format, bit-exact.
//!
//! Layout: a size header (one byte `n + 63` for `n ≤ 62`, otherwise `~`
//! followed by three or six bytes of 6-bit big-endian groups), then the upper
//! triangle in column-major order (`for j in 1..n, for i in 0..j`) packed
//! six bits per byte, high bit first, each byte offset by 63. Padding bits in
//! the last byte must be zero.

use super::FormatError;
use crate::bitset::MAX_VERTICES;
use crate::graph::{Graph, GraphError};

/// Optional header some tools prepend.
pub const GRAPH6_HEADER: &str = ">>graph6<<";

const BIAS: u8 = 63;

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Parses one graph6 line. Accepts an optional `>>graph6<<` prefix and a
/// single trailing newline (`\n` or `\r\n`). Offsets in errors count from
/// the start of `text`.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    parse_bytes(text.as_bytes())
}

fn parse_bytes(raw: &[u8]) -> Result<Graph, FormatError> {
    let mut end = raw.len();
    if raw[..end].ends_with(b"\n") {
        end -= 1;
        if raw[..end].ends_with(b"\r") {
            end -= 1;
        }
    }
    let start = if raw[..end].starts_with(GRAPH6_HEADER.as_bytes()) {
        GRAPH6_HEADER.len()
    } else {
        0
    };
    let body = &raw[start..end];
    let at = |i: usize| start + i;
    for (i, &b) in body.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(FormatError::graph6(
                at(i),
                format!("byte 0x{b:02x} outside the printable range 63..=126"),
            ));
        }
    }
    let group = |i: usize| -> Result<usize, FormatError> {
        body.get(i)
            .map(|&b| (b - BIAS) as usize)
            .ok_or_else(|| FormatError::graph6(at(i), "truncated size header"))
    };
    let (n, header_len) = match body.first() {
        None => return Err(FormatError::graph6(at(0), "empty input")),
        Some(&126) if body.get(1) == Some(&126) => {
            let n = (2..8).try_fold(0usize, |acc, i| Ok::<_, FormatError>((acc << 6) | group(i)?))?;
            (n, 8)
        }
        Some(&126) => {
            let n = (1..4).try_fold(0usize, |acc, i| Ok::<_, FormatError>((acc << 6) | group(i)?))?;
            (n, 4)
        }
        Some(&b) => ((b - BIAS) as usize, 1),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n, max: MAX_VERTICES }.into());
    }
    let pairs = pair_count(n);
    let need = pairs.div_ceil(6);
    let data = &body[header_len..];
    if data.len() < need {
        return Err(FormatError::graph6(
            at(body.len()),
            format!("expected {need} adjacency bytes for n = {n}, found {}", data.len()),
        ));
    }
    if data.len() > need {
        return Err(FormatError::graph6(at(header_len + need), "trailing bytes"));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[bit / 6] - BIAS;
            if byte & (0x20 >> (bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    if !pairs.is_multiple_of(6) {
        let last = data[need - 1] - BIAS;
        let pad_mask = (1u8 << (6 - pairs % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(FormatError::graph6(
                at(header_len + need - 1),
                "nonzero padding bits",
            ));
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Parses every non-empty line. Errors carry the 1-based line number in the
/// reason and the offset within that line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, FormatError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l.trim_end()).map_err(|e| match e {
                FormatError::Graph6 { offset, reason } => FormatError::Graph6 {
                    offset,
                    reason: format!("line {}: {reason}", i + 1),
                },
                other => other,
            })
        })
        .collect()
}

/// Canonical graph6 encoding, without a trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        // MAX_VERTICES stays far below 258048, so the 4-byte form always fits
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
