//! graph6 and DOT.

use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

/// Encodes `g` in graph6, without header or newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Decodes one graph6 line; an optional `>>graph6<<` header is accepted.
pub fn from_graph6(line: &str) -> Result<Graph> {
    let text = line.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("byte {b} is not valid graph6")));
    }
    let sixes = |slice: &[u8]| slice.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
    let (n, body) = match bytes {
        [] => return Err(Error::Parse("empty graph6 string".into())),
        [126, 126, rest @ ..] if rest.len() >= 6 => (sixes(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 => (sixes(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(Error::Parse("truncated graph6 size".into())),
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {} for n={n}",
            body.len(),
            bits.div_ceil(6)
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    g.sort_neighbors();
    Ok(g)
}

/// DOT source with vertex labels.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut s = format!("graph \"{}\" {{\n", name.replace('"', "\\\""));
    for v in 0..g.n() {
        let _ = writeln!(s, "  {v} [label=\"{}\"];", g.label(v).replace('"', "\\\""));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}
