//! Plain-text edge list.
//!
//! ```text
//! # comment
//! n m
//! u v w      (m lines, 0 <= u < v < n, w >= 0)
//! ```

use std::fmt::Write as _;

use crate::capacity::Capacity;
use crate::error::{Error, ParseError, ParseErrorKind, Result};

use super::ContractibleGraph;

pub fn parse_graph<C: Capacity>(text: &str) -> Result<ContractibleGraph<C>> {
    let err = |line: usize, kind| Error::Parse(ParseError { line, kind });

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(err(1, ParseErrorKind::MissingHeader))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match fields.as_slice() {
        [n, m] => match (n.parse::<usize>(), m.parse::<usize>()) {
            (Ok(n), Ok(m)) => (n, m),
            _ => return Err(err(header_line, ParseErrorKind::MalformedHeader)),
        },
        _ => return Err(err(header_line, ParseErrorKind::MalformedHeader)),
    };
    if n < 2 {
        return Err(err(header_line, ParseErrorKind::TooFewVertices(n)));
    }

    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(err(line, ParseErrorKind::EdgeCount { expected: m, found: m + 1 }));
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let [u, v, w] = fields.as_slice() else {
            return Err(err(line, ParseErrorKind::MalformedEdge));
        };
        let (Ok(u), Ok(v)) = (u.parse::<usize>(), v.parse::<usize>()) else {
            return Err(err(line, ParseErrorKind::MalformedEdge));
        };
        for vertex in [u, v] {
            if vertex >= n {
                return Err(err(line, ParseErrorKind::VertexOutOfRange { vertex, n }));
            }
        }
        if u == v {
            return Err(err(line, ParseErrorKind::SelfLoop(u)));
        }
        if u > v {
            return Err(err(line, ParseErrorKind::UnorderedEndpoints(u, v)));
        }
        let w = C::parse_token(w).map_err(|negative| {
            err(
                line,
                if negative { ParseErrorKind::NegativeCapacity } else { ParseErrorKind::MalformedEdge },
            )
        })?;
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(err(last_line + 1, ParseErrorKind::EdgeCount { expected: m, found: edges.len() }));
    }
    ContractibleGraph::new(n, &edges)
}

/// Writes the live graph, supernodes relabeled `0..n_current` by id.
pub fn serialize_graph<C: Capacity>(g: &ContractibleGraph<C>) -> String {
    let edges = g.canonical_edges();
    let mut out = format!("{} {}\n", g.n_current(), edges.len());
    for (u, v, w) in edges {
        let _ = writeln!(out, "{u} {v} {w}");
    }
    out
}
