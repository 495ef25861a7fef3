// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


//! graph6 and DIMACS `.col` readers and writers.
//!
//! graph6 sizes up to 258047 vertices are supported (the one- and
//! four-byte size headers). Errors carry the byte offset (graph6) or the
//! 1-based line number (DIMACS).

use avd_core::graph::{Graph, GraphError};
use thiserror::Error;

/// Largest vertex count the four-byte graph6 header can encode.
pub const GRAPH6_MAX_N: usize = 258_047;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("graph6: {reason} at byte {offset}")]
    Graph6 { offset: usize, reason: &'static str },
    #[error("graph6: {n} vertices exceeds the supported maximum {GRAPH6_MAX_N}")]
    Capacity { n: usize },
    #[error("dimacs line {line}: {reason}")]
    Dimacs { line: usize, reason: String },
}

fn g6_err(offset: usize, reason: &'static str) -> FormatError {
    FormatError::Graph6 { offset, reason }
}

/// Parses one graph6 line. Surrounding whitespace and an optional
/// `>>graph6<<` prefix are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (body, base) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (trimmed.as_bytes(), 0),
    };
    let sextet = |i: usize| -> Result<u32, FormatError> {
        match body.get(i) {
            None => Err(g6_err(base + i, "truncated input")),
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u32),
            Some(_) => Err(g6_err(base + i, "byte outside 63..=126")),
        }
    };
    if body.is_empty() {
        return Err(g6_err(base, "empty input"));
    }
    let (n, mut pos) = if body[0] != 126 {
        (sextet(0)? as usize, 1)
    } else {
        if body.get(1) == Some(&126) {
            return Err(g6_err(base + 1, "eight-byte size header unsupported"));
        }
        let mut n = 0usize;
        for i in 1..4 {
            n = n << 6 | sextet(i)? as usize;
        }
        if n < 63 {
            return Err(g6_err(base, "non-canonical size header"));
        }
        (n, 4)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let mut edges = Vec::new();
    let (mut i, mut j) = (0usize, 1usize);
    for chunk in 0..need {
        let s = sextet(pos)?;
        for b in 0..6 {
            let bit = chunk * 6 + b;
            let set = s >> (5 - b) & 1 == 1;
            if bit >= bits {
                if set {
                    return Err(g6_err(base + pos, "nonzero padding bits"));
                }
                continue;
            }
            if set {
                edges.push((i, j));
            }
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
        pos += 1;
    }
    if pos < body.len() {
        return Err(g6_err(base + pos, "stray bytes after adjacency"));
    }
    Ok(Graph::from_edges(n, edges).expect("graph6 pairs are in range and loop-free"))
}

pub fn write_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(FormatError::Capacity { n });
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let bits = n * n.saturating_sub(1) / 2;
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
    debug_assert_eq!(out.len() - if n <= 62 { 1 } else { 4 }, bits.div_ceil(6));
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses every non-blank line of a graph6 listing. The error carries the
/// 1-based line number.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<(usize, Graph)>, (usize, FormatError)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim()).map(|g| (i + 1, g)).map_err(|e| (i + 1, e)))
        .collect()
}

fn dimacs_err(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Dimacs {
        line,
        reason: reason.into(),
    }
}

/// Reads DIMACS `.col` text: `c` comments, one `p edge n m` (or `p col`)
/// line, then `e u v` lines with 1-based endpoints.
pub fn parse_dimacs(text: &str) -> Result<Graph, FormatError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut parts = raw.split_whitespace();
        let Some(tag) = parts.next() else { continue };
        let fields: Vec<&str> = parts.collect();
        let num = |s: &str| -> Result<usize, FormatError> {
            s.parse()
                .map_err(|_| dimacs_err(line, format!("expected an integer, found {s:?}")))
        };
        match tag {
            "c" => {}
            "p" => {
                if n.is_some() {
                    return Err(dimacs_err(line, "second problem line"));
                }
                match fields.as_slice() {
                    [kind, nv, ne] if *kind == "edge" || *kind == "col" => {
                        n = Some(num(nv)?);
                        num(ne)?;
                    }
                    _ => return Err(dimacs_err(line, "expected `p edge <n> <m>`")),
                }
            }
            "e" => {
                let Some(nv) = n else {
                    return Err(dimacs_err(line, "edge before the problem line"));
                };
                let [a, b] = fields.as_slice() else {
                    return Err(dimacs_err(line, "expected `e <u> <v>`"));
                };
                let (a, b) = (num(a)?, num(b)?);
                for x in [a, b] {
                    if x == 0 || x > nv {
                        return Err(dimacs_err(line, format!("endpoint {x} out of range 1..={nv}")));
                    }
                }
                if a == b {
                    return Err(dimacs_err(line, format!("self-loop at {a}")));
                }
                edges.push((a - 1, b - 1));
            }
            other => return Err(dimacs_err(line, format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| dimacs_err(text.lines().count().max(1), "missing problem line"))?;
    Graph::from_edges(n, edges).map_err(|e: GraphError| dimacs_err(0, e.to_string()))
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.num_edges());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graph6_strings() {
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.n(), k2.edges()), (2, &[(0, 1)][..]));
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3.num_edges(), 3);
        let one = parse_graph6("@").unwrap();
        assert_eq!((one.n(), one.num_edges()), (1, 0));
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        assert_eq!(write_graph6(&k2).unwrap(), "A_");
        assert_eq!(write_graph6(&one).unwrap(), "@");
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), k3);
    }

    #[test]
    fn graph6_errors_name_offsets() {
        assert_eq!(parse_graph6("B"), Err(g6_err(1, "truncated input")));
        assert_eq!(parse_graph6("Bw?"), Err(g6_err(2, "stray bytes after adjacency")));
        assert_eq!(parse_graph6("B\u{1}"), Err(g6_err(1, "byte outside 63..=126")));
        assert_eq!(parse_graph6("A~"), Err(g6_err(1, "nonzero padding bits")));
        assert_eq!(parse_graph6(""), Err(g6_err(0, "empty input")));
    }

    #[test]
    fn long_header_round_trip() {
        let g = Graph::from_edges(100, [(0, 99), (3, 50)]).unwrap();
        let s = write_graph6(&g).unwrap();
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 99]);
        assert_eq!(parse_graph6(&s).unwrap(), g);
        assert_eq!(
            write_graph6(&Graph::empty(GRAPH6_MAX_N + 1)),
            Err(FormatError::Capacity { n: GRAPH6_MAX_N + 1 })
        );
    }

    #[test]
    fn dimacs_examples() {
        let k2 = parse_dimacs("p edge 2 1\ne 1 2").unwrap();
        assert_eq!(k2.edges(), &[(0, 1)]);
        let k3 = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(k3.num_edges(), 3);
        let dup = parse_dimacs("p edge 2 2\ne 1 2\ne 1 2\n").unwrap();
        assert_eq!(dup.num_edges(), 1);
        assert_eq!(parse_dimacs(&write_dimacs(&k3)).unwrap(), k3);
    }

    #[test]
    fn dimacs_errors() {
        assert!(matches!(parse_dimacs("e 1 2"), Err(FormatError::Dimacs { line: 1, .. })));
        assert!(matches!(parse_dimacs("c only"), Err(FormatError::Dimacs { .. })));
        assert!(matches!(parse_dimacs("p edge 2 1\ne 1 3"), Err(FormatError::Dimacs { line: 2, .. })));
        assert!(matches!(parse_dimacs("p edge 2 1\ne 2 2"), Err(FormatError::Dimacs { line: 2, .. })));
        assert!(matches!(parse_dimacs("p edge x 1"), Err(FormatError::Dimacs { line: 1, .. })));
    }
}
