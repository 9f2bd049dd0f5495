//! Text formats for graphs: edge lists and graph6.
//!
//! Edge list: the first non-blank line holds the vertex count `n`, every
//! further non-blank line an edge `u v` with `0 <= u, v < n`. Lines starting
//! with `#` are comments.
//!
//! graph6 follows the usual definition: a size header (`n + 63` for
//! `n <= 62`, otherwise `~` plus 18 bits or `~~` plus 36 bits), then the
//! upper triangle of the adjacency matrix in column order, six bits per
//! byte, padded with zeros, each byte offset by 63.

use std::fmt::Write as _;

use crate::cotree::Cotree;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: first,
        message: format!("expected a vertex count, found {header:?}"),
    })?;
    let mut edges = Vec::new();
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("expected a vertex id, found {s:?}"),
            })
        };
        let [a, b] = fields[..] else {
            return Err(Error::Parse {
                line,
                message: format!("expected two vertex ids, found {} fields", fields.len()),
            });
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                message: format!("vertex {} out of range 0..{n}", u.max(v)),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim().as_bytes();
    let err = |message: String| Error::Parse { line: 1, message };
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(format!("byte {pos} is outside the graph6 range")));
    }
    let value = |b: u8| (b - 63) as usize;
    let (n, body) = match bytes {
        [] => return Err(err("empty graph6 string".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(err("truncated size header".into()));
            }
            let n = rest[..6].iter().fold(0, |acc, &b| (acc << 6) | value(b));
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err("truncated size header".into()));
            }
            let n = rest[..3].iter().fold(0, |acc, &b| (acc << 6) | value(b));
            (n, &rest[3..])
        }
        [first, rest @ ..] => (value(*first), rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(err(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = value(body[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

pub fn format_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Recognized graph encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
    Cotree,
}

impl GraphFormat {
    /// Format implied by a file extension (`el`, `g6`, `ct`).
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext {
            "el" | "txt" => Some(GraphFormat::EdgeList),
            "g6" => Some(GraphFormat::Graph6),
            "ct" => Some(GraphFormat::Cotree),
            _ => None,
        }
    }

    /// Guess from content: anything with parentheses is a cotree, a single
    /// token of graph6 characters is graph6, everything else an edge list.
    pub fn sniff(text: &str) -> Self {
        let t = text.trim();
        if t.contains('(') {
            GraphFormat::Cotree
        } else if !t.is_empty()
            && !t.contains(char::is_whitespace)
            && t.bytes().all(|b| (63..=126).contains(&b))
        {
            GraphFormat::Graph6
        } else {
            GraphFormat::EdgeList
        }
    }

    pub fn parse(self, text: &str) -> Result<Graph> {
        match self {
            GraphFormat::EdgeList => parse_edge_list(text),
            GraphFormat::Graph6 => parse_graph6(text),
            GraphFormat::Cotree => Ok(text.parse::<Cotree>()?.to_graph()),
        }
    }

    /// Fails with [`Error::NotCograph`] when a cotree is asked of a non-cograph.
    pub fn format(self, g: &Graph) -> Result<String> {
        Ok(match self {
            GraphFormat::EdgeList => format_edge_list(g),
            GraphFormat::Graph6 => format!("{}\n", format_graph6(g)),
            GraphFormat::Cotree => format!("{}\n", crate::cotree::build_cotree(g)?),
        })
    }
}

/// Whitespace-separated vertex ids, as used for induced-subgraph selections.
pub fn parse_vertex_set(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            out.push(tok.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("expected a vertex id, found {tok:?}"),
            })?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_list_examples() {
        assert_eq!(parse_edge_list("4\n0 1\n1 2\n2 3").unwrap(), Graph::path(4));
        assert_eq!(parse_edge_list("1").unwrap(), Graph::empty(1));
        assert_eq!(parse_edge_list("3\n0 1\n1 0\n1 2").unwrap(), Graph::path(3));
    }

    #[test]
    fn edge_list_errors_name_the_line() {
        let e = parse_edge_list("3\n0 1\n1 x").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_edge_list("3\n0 3").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_edge_list("3\n\n2 2").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_edge_list("3\n0 1 2").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(parse_edge_list("").is_err());
    }

    // Straightforward decoder written from the format definition, kept
    // separate from `parse_graph6`.
    fn reference_decode_small(s: &str) -> Vec<(usize, usize)> {
        let b = s.as_bytes();
        let n = (b[0] - 63) as usize;
        let bits: Vec<u8> = b[1..]
            .iter()
            .flat_map(|&c| (0..6).rev().map(move |i| ((c - 63) >> i) & 1))
            .collect();
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 0..n {
            for i in 0..j {
                if bits[k] == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        edges
    }

    #[test]
    fn graph6_examples() {
        assert_eq!(reference_decode_small("C~").len(), 6);
        assert_eq!(parse_graph6("C~").unwrap(), Graph::complete(4));
        assert_eq!(format_graph6(&Graph::empty(1)), "@");
        assert_eq!(format_graph6(&Graph::complete(4)), "C~");
        assert_eq!(parse_graph6("?").unwrap(), Graph::empty(0));
        // P4 = 0-1-2-3: bits x01 x02 x12 x03 x13 x23 = 1 0 1 0 0 1.
        assert_eq!(format_graph6(&Graph::path(4)), "Ch");
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C\u{7f}").is_err());
        assert!(parse_graph6("~?").is_err());
    }

    #[test]
    fn graph6_large_header() {
        let g = Graph::path(100);
        let s = format_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn sniffing() {
        assert_eq!(GraphFormat::sniff("J(0,U(1,2))"), GraphFormat::Cotree);
        assert_eq!(GraphFormat::sniff("C~\n"), GraphFormat::Graph6);
        assert_eq!(GraphFormat::sniff("2\n0 1"), GraphFormat::EdgeList);
        assert_eq!(GraphFormat::sniff("1"), GraphFormat::EdgeList);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn graph6_round_trip(g in arb_graph(32)) {
            prop_assert_eq!(parse_graph6(&format_graph6(&g)).unwrap(), g);
        }

        #[test]
        fn edge_list_round_trip(g in arb_graph(12)) {
            prop_assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g);
        }

        #[test]
        fn complement_is_an_involution(g in arb_graph(16)) {
            prop_assert_eq!(g.complement().complement(), g);
        }
    }
}
