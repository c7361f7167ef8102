//! graph6 codec for orders 1..=62 (single-byte header form only).
//!
//! Layout: one header byte `n + 63`, then the upper triangle of the
//! adjacency matrix read column by column — pair order (0,1), (0,2), (1,2),
//! (0,3), ... — packed big-endian into 6-bit groups, each emitted as
//! `group + 63`. Trailing pad bits must be zero. Every byte sits in
//! `63..=126`.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_ORDER: usize = 62;

/// Decode a single graph6 string (no surrounding whitespace, no header line).
pub fn parse_graph6(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::graph6("empty string"));
    };
    if first == b'~' {
        return Err(Error::graph6(
            "multi-byte order form (n > 62) is not supported",
        ));
    }
    if !(OFFSET..=126).contains(&first) {
        return Err(Error::graph6(format!(
            "header byte {first:#04x} outside printable range 63..=126"
        )));
    }
    let n = (first - OFFSET) as usize;
    if n == 0 {
        return Err(Error::graph6("order 0 is not representable here"));
    }
    let npairs = n * (n - 1) / 2;
    let nbytes = npairs.div_ceil(6);
    let data = &bytes[1..];
    if data.len() < nbytes {
        return Err(Error::graph6(format!(
            "truncated: order {n} needs {nbytes} data bytes, got {}",
            data.len()
        )));
    }
    if data.len() > nbytes {
        return Err(Error::graph6(format!(
            "{} trailing bytes after a complete order-{n} graph",
            data.len() - nbytes
        )));
    }
    let mut groups = Vec::with_capacity(nbytes);
    for &b in data {
        if !(OFFSET..=126).contains(&b) {
            return Err(Error::graph6(format!(
                "data byte {b:#04x} outside printable range 63..=126"
            )));
        }
        groups.push(b - OFFSET);
    }
    let bit = |i: usize| groups[i / 6] >> (5 - i % 6) & 1 == 1;
    for i in npairs..nbytes * 6 {
        if bit(i) {
            return Err(Error::graph6("nonzero padding bits"));
        }
    }
    let mut edges = Vec::new();
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(i) {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Encode a graph of order ≤ 62.
pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_ORDER {
        return Err(Error::graph6(format!(
            "cannot emit order {n} in the single-byte form (max 62)"
        )));
    }
    let npairs = n * (n - 1) / 2;
    let mut out = vec![OFFSET + n as u8];
    out.resize(1 + npairs.div_ceil(6), OFFSET);
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                out[1 + i / 6] += 1 << (5 - i % 6);
            }
            i += 1;
        }
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Read one graph per line. Blank lines are skipped and a leading
/// `>>graph6<<` file header (with or without its own line) is tolerated.
pub fn read_graph6_file(path: &std::path::Path) -> Result<Vec<Graph>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let mut line = raw.trim();
        if let Some(rest) = line.strip_prefix(">>graph6<<") {
            line = rest.trim();
        }
        if line.is_empty() {
            continue;
        }
        out.push(parse_graph6(line).map_err(|e| match e {
            Error::Graph6 { msg } => Error::graph6(format!("line {}: {msg}", lineno + 1)),
            other => other,
        })?);
    }
    Ok(out)
}
