//! The graph6 text encoding of simple graphs.

use super::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Parses one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are ignored. Edge ids follow lexicographic endpoint order.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    let body = trimmed.strip_prefix(">>graph6<<").unwrap_or(trimmed);
    let base = trimmed.len() - body.len();
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(err(base, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(err(
                base + i,
                format!("byte {b:#04x} outside the printable range"),
            ));
        }
    }

    let (n, header_len) = if bytes[0] != 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        return Err(err(
            base + 1,
            "vertex counts above 258047 are not supported",
        ));
    } else {
        if bytes.len() < 4 {
            return Err(err(base + bytes.len(), "truncated vertex count"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        (n, 4)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    let data = &bytes[header_len..];
    if data.len() < needed {
        return Err(err(
            base + bytes.len(),
            format!(
                "truncated: expected {needed} adjacency bytes, found {}",
                data.len()
            ),
        ));
    }
    if data.len() > needed {
        return Err(err(
            base + header_len + needed,
            "trailing bytes after adjacency data",
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Graph::new(n, edges)
}

/// Encodes a simple graph; multigraphs and self-loops are rejected.
pub fn emit_graph6(g: &Graph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::precondition("graph6 encodes simple graphs only"));
    }
    let n = g.n();
    if n > 258_047 {
        return Err(Error::precondition("too many vertices for graph6"));
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + BIAS));
    }
    let mut adj = vec![false; n * n];
    for &(u, v) in g.edges() {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | adj[i * n + j] as u8;
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
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}
