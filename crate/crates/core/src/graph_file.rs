//! Text format for oriented graphs.
//!
//! ```text
//! # comment
//! N M
//! u v        (M arc lines, 1-based, u -> v)
//! coord u a b   (optional, binds vertex u to lattice position (a, b))
//! ```
//!
//! Comment and blank lines may appear anywhere. Arc order is preserved.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::OrientedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected header \"N M\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: expected arc \"u v\"")]
    MalformedArc { line: usize },
    #[error("line {line}: expected \"coord u a b\"")]
    MalformedCoord { line: usize },
    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate arc {u} {v}")]
    DuplicateArc { line: usize, u: usize, v: usize },
    #[error("line {line}: arc {u} {v} closes a 2-cycle")]
    TwoCycle { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {vertex} already has a coordinate")]
    DuplicateCoord { line: usize, vertex: usize },
    #[error("header declares {expected} arcs but {found} were given")]
    ArcCount { expected: usize, found: usize },
    #[error("missing header line")]
    Empty,
}

/// A parsed graph file: the digraph plus any coordinates it carried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: OrientedGraph,
    pub coords: Vec<Option<(i64, i64)>>,
}

impl GraphFile {
    /// All coordinates, if every vertex has one.
    pub fn complete_coords(&self) -> Option<Vec<(i64, i64)>> {
        self.coords.iter().copied().collect()
    }
}

pub fn parse_digraph(text: &str) -> Result<OrientedGraph, ParseError> {
    parse_graph_file(text).map(|f| f.graph)
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();
    let mut seen = HashSet::new();
    let mut coords: Vec<Option<(i64, i64)>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let Some((n, _)) = header else {
            let parsed = match fields.as_slice() {
                [a, b] => a.parse().ok().zip(b.parse().ok()),
                _ => None,
            };
            let (n, m) = parsed.ok_or(ParseError::MalformedHeader { line })?;
            header = Some((n, m));
            coords = vec![None; n];
            continue;
        };
        let vertex = |s: &str, bad: ParseError| -> Result<usize, ParseError> {
            let v: usize = s.parse().map_err(|_| bad.clone())?;
            if v == 0 || v > n {
                return Err(ParseError::VertexOutOfRange { line, vertex: v, n });
            }
            Ok(v - 1)
        };
        if fields[0] == "coord" {
            let bad = ParseError::MalformedCoord { line };
            let [_, u, a, b] = fields.as_slice() else {
                return Err(bad);
            };
            let u = vertex(u, bad.clone())?;
            let a: i64 = a.parse().map_err(|_| bad.clone())?;
            let b: i64 = b.parse().map_err(|_| bad)?;
            if coords[u].replace((a, b)).is_some() {
                return Err(ParseError::DuplicateCoord {
                    line,
                    vertex: u + 1,
                });
            }
            continue;
        }
        let bad = ParseError::MalformedArc { line };
        let [u, v] = fields.as_slice() else {
            return Err(bad);
        };
        let u = vertex(u, bad.clone())?;
        let v = vertex(v, bad)?;
        if u == v {
            return Err(ParseError::SelfLoop {
                line,
                vertex: u + 1,
            });
        }
        if seen.contains(&(v, u)) {
            return Err(ParseError::TwoCycle {
                line,
                u: u + 1,
                v: v + 1,
            });
        }
        if !seen.insert((u, v)) {
            return Err(ParseError::DuplicateArc {
                line,
                u: u + 1,
                v: v + 1,
            });
        }
        arcs.push((u, v));
    }

    let (n, m) = header.ok_or(ParseError::Empty)?;
    if arcs.len() != m {
        return Err(ParseError::ArcCount {
            expected: m,
            found: arcs.len(),
        });
    }
    let graph = OrientedGraph::new(n, arcs).expect("invariants checked while parsing");
    Ok(GraphFile { graph, coords })
}

/// Canonical text form: header plus arc lines, no comments.
pub fn serialize_digraph(g: &OrientedGraph) -> String {
    let mut out = format!("{} {}\n", g.n_vertices(), g.n_arcs());
    for &(u, v) in g.arcs() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

pub fn serialize_with_coords(g: &OrientedGraph, coords: &[(i64, i64)]) -> String {
    let mut out = serialize_digraph(g);
    for (u, &(a, b)) in coords.iter().enumerate() {
        let _ = writeln!(out, "coord {} {} {}", u + 1, a, b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal() {
        let g = parse_digraph("2 1\n1 2").unwrap();
        assert_eq!(g, OrientedGraph::new(2, vec![(0, 1)]).unwrap());
    }

    #[test]
    fn comments_and_coords() {
        let f = parse_graph_file("# hi\n3 2\n1 2\n\n# mid\n3 2\ncoord 2 4 -1\n").unwrap();
        assert_eq!(f.graph.arcs(), &[(0, 1), (2, 1)]);
        assert_eq!(f.coords, vec![None, Some((4, -1)), None]);
        assert_eq!(f.complete_coords(), None);
    }

    #[test]
    fn errors_name_lines() {
        assert_eq!(
            parse_digraph("2 2\n1 2\n2 1").unwrap_err(),
            ParseError::TwoCycle {
                line: 3,
                u: 2,
                v: 1
            }
        );
        assert_eq!(
            parse_digraph("2 2\n1 2\n1 2").unwrap_err(),
            ParseError::DuplicateArc {
                line: 3,
                u: 1,
                v: 2
            }
        );
        assert_eq!(
            parse_digraph("2 1\n1 3").unwrap_err(),
            ParseError::VertexOutOfRange {
                line: 2,
                vertex: 3,
                n: 2
            }
        );
        assert_eq!(
            parse_digraph("x\n").unwrap_err(),
            ParseError::MalformedHeader { line: 1 }
        );
        assert_eq!(
            parse_digraph("2 1\n1").unwrap_err(),
            ParseError::MalformedArc { line: 2 }
        );
        assert_eq!(
            parse_digraph("2 1\n1 1").unwrap_err(),
            ParseError::SelfLoop { line: 2, vertex: 1 }
        );
        assert_eq!(
            parse_digraph("2 2\n1 2").unwrap_err(),
            ParseError::ArcCount {
                expected: 2,
                found: 1
            }
        );
        assert_eq!(parse_digraph("# only\n").unwrap_err(), ParseError::Empty);
        assert_eq!(
            parse_graph_file("2 0\ncoord 1 0 0\ncoord 1 1 1").unwrap_err(),
            ParseError::DuplicateCoord { line: 3, vertex: 1 }
        );
    }

    fn arb_oriented() -> impl Strategy<Value = OrientedGraph> {
        (1usize..9).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let len = pairs.len();
            (
                Just(n),
                Just(pairs),
                proptest::collection::vec(0u8..3, len),
                any::<u64>(),
            )
                .prop_map(|(n, pairs, choice, salt)| {
                    let mut arcs: Vec<_> = pairs
                        .into_iter()
                        .zip(choice)
                        .filter_map(|((u, v), c)| match c {
                            0 => None,
                            1 => Some((u, v)),
                            _ => Some((v, u)),
                        })
                        .collect();
                    // arbitrary but deterministic arc order
                    arcs.sort_by_key(|&(u, v)| (u as u64 * 31 + v as u64) ^ salt);
                    OrientedGraph::new(n, arcs).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn roundtrip(g in arb_oriented()) {
            let text = serialize_digraph(&g);
            let back = parse_digraph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(serialize_digraph(&back), text);
        }
    }
}
