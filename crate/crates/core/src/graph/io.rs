//! Text formats: the `mg` multigraph format and graph6.
//!
//! ```text
//! # optional comments
//! mg 3
//! 0 1
//! 0 1
//! 1 2
//! ```
//!
//! Repeated lines are parallel edges; edge ids follow line order.

use std::fmt::Write;

use super::Multigraph;
use crate::error::{Error, Result};

/// Largest order accepted by the graph6 reader (the 4-byte size form).
pub const GRAPH6_MAX_ORDER: usize = 258_047;

pub fn parse_multigraph(text: &str) -> Result<Multigraph> {
    let mut graph: Option<Multigraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line, msg };
        let mut tokens = l.split_whitespace();
        match graph.as_mut() {
            None => {
                if tokens.next() != Some("mg") {
                    return Err(err(format!("expected header `mg <n>`, found {l:?}")));
                }
                let n = tokens
                    .next()
                    .ok_or_else(|| err("header is missing the vertex count".into()))?;
                let n: usize = n
                    .parse()
                    .map_err(|_| err(format!("vertex count {n:?} is not an integer")))?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens after header".into()));
                }
                graph = Some(Multigraph::new(n));
            }
            Some(g) => {
                let mut ends = [0usize; 2];
                for slot in &mut ends {
                    let tok = tokens
                        .next()
                        .ok_or_else(|| err("edge line needs two vertex ids".into()))?;
                    *slot = tok
                        .parse()
                        .map_err(|_| err(format!("{tok:?} is not a vertex id")))?;
                }
                if tokens.next().is_some() {
                    return Err(err("trailing tokens after edge".into()));
                }
                g.add_edge(ends[0], ends[1]).map_err(|e| err(e.to_string()))?;
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: 0,
        msg: "missing `mg <n>` header".into(),
    })
}

/// Emits the `mg` form: header, then one `tail head` line per edge in id order.
pub fn serialize(g: &Multigraph) -> String {
    let mut s = String::with_capacity(8 + 8 * g.m());
    let _ = writeln!(s, "mg {}", g.n());
    for e in g.edges() {
        let _ = writeln!(s, "{} {}", e.tail, e.head);
    }
    s
}

/// Decodes one graph6 line (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(text: &str) -> Result<Multigraph> {
    let line = text.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let err = |msg: String| Error::Parse { line: 1, msg };
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(err(format!("invalid graph6 character {:?}", b as char)));
    }
    if bytes.is_empty() {
        return Err(err("empty graph6 string".into()));
    }
    let (n, body) = if bytes[0] != 126 {
        (usize::from(bytes[0] - 63), &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
        (n, &bytes[4..])
    } else {
        return Err(err(format!(
            "graph order exceeds the supported bound {GRAPH6_MAX_ORDER}"
        )));
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if body.len() != need {
        return Err(err(format!(
            "graph6 body has {} bytes, expected {need} for n = {n}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Multigraph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    // padding bits must be zero
    if (k..need * 6).any(bit) {
        return Err(err("nonzero padding bits".into()));
    }
    Ok(g)
}

/// graph6 encoding of a simple graph; fails on parallel edges.
pub fn to_graph6(g: &Multigraph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::SizeBound {
            what: "graph6 order",
            size: n,
            bound: GRAPH6_MAX_ORDER,
        });
    }
    if g.max_multiplicity() > 1 {
        return Err(Error::Domain("graph6 cannot encode parallel edges".into()));
    }
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    }
    let mut adj = vec![false; n * n];
    for e in g.edges() {
        adj[e.tail * n + e.head] = true;
        adj[e.head * n + e.tail] = true;
    }
    let bits: Vec<bool> = (1..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .map(|(i, j)| adj[i * n + j])
        .collect();
    for chunk in bits.chunks(6) {
        let mut b = 0u8;
        for (i, &set) in chunk.iter().enumerate() {
            b |= u8::from(set) << (5 - i);
        }
        out.push(b + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// Reads a graph file: an `mg` document holds one graph; anything else is
/// treated as graph6 with one graph per non-empty, non-`#` line. Returns
/// `(label, graph)` pairs, labels being `""` for `mg` and `"line <k>"` for graph6.
pub fn parse_graph_file(text: &str) -> Result<Vec<(String, Multigraph)>> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with("mg") => Ok(vec![(String::new(), parse_multigraph(text)?)]),
        Some(_) => text
            .lines()
            .enumerate()
            .filter(|(_, l)| {
                let l = l.trim();
                !l.is_empty() && !l.starts_with('#')
            })
            .map(|(i, l)| {
                parse_graph6(l)
                    .map(|g| (format!("line {}", i + 1), g))
                    .map_err(|e| match e {
                        Error::Parse { msg, .. } => Error::Parse { line: i + 1, msg },
                        other => other,
                    })
            })
            .collect(),
        None => Err(Error::Parse {
            line: 0,
            msg: "no graph in input".into(),
        }),
    }
}
