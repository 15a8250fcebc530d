//! Text formats: graph6, a plain edge list, and DOT export.

use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::Graph;

const GRAPH6_HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;
/// Largest order with a graph6 encoding this module emits (the four-byte size form).
pub const GRAPH6_MAX_ORDER: usize = 258_047;

fn g6_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Parses one graph6 line, with or without the `>>graph6<<` header.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let trimmed = line.trim_end_matches(['\n', '\r']);
    let (skip, body) = match trimmed.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (GRAPH6_HEADER.len(), rest),
        None => (0, trimmed),
    };
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(g6_err(skip, "empty graph6 record"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(g6_err(skip + i, format!("byte {b} outside 63..=126")));
        }
    }
    let read_wide = |from: usize, count: usize| -> Result<usize> {
        let digits = bytes
            .get(from..from + count)
            .ok_or_else(|| g6_err(skip + bytes.len(), "truncated order prefix"))?;
        Ok(digits
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize))
    };
    let (order, header_len) = if bytes[0] != 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        (read_wide(1, 3)?, 4)
    } else {
        (read_wide(2, 6)?, 8)
    };

    let payload = &bytes[header_len..];
    let bit_count = order * order.saturating_sub(1) / 2;
    let needed = bit_count.div_ceil(6);
    if payload.len() < needed {
        return Err(g6_err(
            skip + bytes.len(),
            format!("truncated payload: {} of {needed} bytes", payload.len()),
        ));
    }
    if payload.len() > needed {
        return Err(g6_err(
            skip + header_len + needed,
            format!("{} unexpected trailing bytes", payload.len() - needed),
        ));
    }
    let bit = |k: usize| (payload[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    if (bit_count..needed * 6).any(bit) {
        return Err(g6_err(
            skip + header_len + needed - 1,
            "nonzero padding bits",
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..order {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(order, edges)
}

/// Encodes a graph as a graph6 line (no header, no newline).
pub fn emit_graph6(graph: &Graph) -> Result<String> {
    let n = graph.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= GRAPH6_MAX_ORDER {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + BIAS));
    } else {
        return Err(Error::InvalidParameter(format!(
            "graph6 emission supports order up to {GRAPH6_MAX_ORDER}, got {n}"
        )));
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | graph.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + BIAS);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + BIAS);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Reads graph6 records line by line, skipping blank lines.
///
/// Yields `(line_number, record)` with 1-based line numbers; a malformed line
/// yields an error without ending the stream.
pub struct Graph6Reader<R> {
    input: R,
    line: usize,
}

impl<R: BufRead> Graph6Reader<R> {
    pub fn new(input: R) -> Self {
        Self { input, line: 0 }
    }
}

impl<R: BufRead> Iterator for Graph6Reader<R> {
    type Item = (usize, std::io::Result<Result<Graph>>);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let mut buf = String::new();
            self.line += 1;
            match self.input.read_line(&mut buf) {
                Ok(0) => return None,
                Ok(_) => {
                    let text = buf.trim();
                    if text.is_empty() || text == GRAPH6_HEADER {
                        continue;
                    }
                    return Some((self.line, Ok(parse_graph6(text))));
                }
                Err(e) => return Some((self.line, Err(e))),
            }
        }
    }
}

/// Parses `"n m"` followed by `m` lines of `"u v"`. Blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let pair = |line: usize, l: &str| -> Result<(usize, usize)> {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::EdgeList {
                line,
                message: format!("not a vertex number: {s:?}"),
            })
        };
        match fields.as_slice() {
            [a, b] => Ok((parse(a)?, parse(b)?)),
            _ => Err(Error::EdgeList {
                line,
                message: format!("expected two integers, found {:?}", l),
            }),
        }
    };
    let (header_line, header) = lines.next().ok_or(Error::EdgeList {
        line: 1,
        message: "missing \"n m\" header".into(),
    })?;
    let (n, m) = pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, l) = lines.next().ok_or(Error::EdgeList {
            line: text.lines().count() + 1,
            message: format!("expected {m} edges, found {}", edges.len()),
        })?;
        let (u, v) = pair(line, l)?;
        if u >= n || v >= n || u == v {
            return Err(Error::EdgeList {
                line,
                message: if u == v {
                    format!("self-loop at {u}")
                } else {
                    format!("edge ({u}, {v}) out of range for order {n}")
                },
            });
        }
        edges.push((u, v));
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::EdgeList {
            line,
            message: format!("more than the declared {m} edges"),
        });
    }
    Graph::new(n, edges)
}

pub fn emit_edge_list(graph: &Graph) -> String {
    let mut out = format!("{} {}\n", graph.order(), graph.size());
    for &(u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// DOT source for an undirected graph, optionally with vertex labels.
pub fn emit_dot(graph: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..graph.order() {
        match labels.and_then(|l| l.get(v)) {
            Some(label) => {
                let _ = writeln!(out, "  {v} [label=\"{}\"];", label.replace('"', "\\\""));
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for &(u, v) in graph.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

/// Guesses the format from the first non-blank line: two integers mean an
/// edge list, a single token of graph6 bytes means graph6.
pub fn detect_format(text: &str) -> Option<Format> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty())?;
    let fields: Vec<&str> = first.split_whitespace().collect();
    if fields.len() == 2 && fields.iter().all(|f| f.parse::<usize>().is_ok()) {
        return Some(Format::EdgeList);
    }
    let token = first.strip_prefix(GRAPH6_HEADER).unwrap_or(first);
    if fields.len() == 1 && !token.is_empty() && token.bytes().all(|b| (BIAS..=126).contains(&b)) {
        return Some(Format::Graph6);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_graph;

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        make_graph(n, &e).unwrap()
    }

    #[test]
    fn hand_decoded_vectors() {
        assert_eq!(parse_graph6("C~").unwrap(), complete(4));
        assert_eq!(parse_graph6("Bw").unwrap(), complete(3));
        let k1 = parse_graph6("@").unwrap();
        assert_eq!((k1.order(), k1.size()), (1, 0));
        assert_eq!(emit_graph6(&complete(4)).unwrap(), "C~");
        assert_eq!(emit_graph6(&complete(3)).unwrap(), "Bw");
        assert_eq!(emit_graph6(&k1).unwrap(), "@");
    }

    #[test]
    fn column_major_bit_order() {
        // Only x(0,2) set: second bit of the first group -> 010000b = 16.
        let g = make_graph(3, &[(0, 2)]).unwrap();
        assert_eq!(emit_graph6(&g).unwrap(), format!("B{}", (63 + 16) as u8 as char));
        // Only x(1,2): third bit -> 001000b = 8.
        let g = make_graph(3, &[(1, 2)]).unwrap();
        assert_eq!(parse_graph6(&format!("B{}", (63 + 8) as u8 as char)).unwrap(), g);
    }

    #[test]
    fn header_and_newline_accepted() {
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), complete(4));
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(parse_graph6("C~ "), Err(Error::Graph6 { offset: 2, .. })));
        assert!(matches!(parse_graph6("C"), Err(Error::Graph6 { .. })));
        assert!(matches!(parse_graph6("C~~"), Err(Error::Graph6 { .. })));
        // 'x' = 63 + 57 = 111001b: three real bits for K3, padding bit set.
        assert!(matches!(parse_graph6("Bx"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(parse_graph6("").is_err());
    }

    #[test]
    fn wide_order_roundtrip() {
        let g = make_graph(70, &[(0, 69), (3, 4)]).unwrap();
        let line = emit_graph6(&g).unwrap();
        assert_eq!(line.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&line).unwrap(), g);
    }

    #[test]
    fn edge_list_examples() {
        let p3 = parse_edge_list("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(p3, make_graph(3, &[(0, 1), (1, 2)]).unwrap());
        assert_eq!(emit_edge_list(&p3), "3 2\n0 1\n1 2\n");
        assert!(matches!(
            parse_edge_list("2 1\n0 2\n"),
            Err(Error::EdgeList { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n1 x\n"),
            Err(Error::EdgeList { line: 3, .. })
        ));
        assert!(parse_edge_list("3 1\n0 1\n1 2\n").is_err());
        assert_eq!(parse_edge_list("  3   1 \n\n 2\t0 \n").unwrap().edges(), &[(0, 2)]);
    }

    #[test]
    fn dot_output() {
        let k1 = make_graph(1, &[]).unwrap();
        assert_eq!(emit_dot(&k1, None), "graph G {\n  0;\n}\n");
        let labels = vec!["s".to_string(), "x_{0,1}".to_string()];
        let g = make_graph(2, &[(0, 1)]).unwrap();
        let dot = emit_dot(&g, Some(&labels));
        assert!(dot.contains("0 [label=\"s\"];"));
        assert!(dot.contains("0 -- 1;"));
    }

    #[test]
    fn stream_skips_blank_lines_and_reports_bad_ones() {
        let input = ">>graph6<<\nC~\n\nB!\nBw\n";
        let items: Vec<_> = Graph6Reader::new(input.as_bytes())
            .map(|(line, r)| (line, r.unwrap().is_ok()))
            .collect();
        assert_eq!(items, vec![(2, true), (4, false), (5, true)]);
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format("3 2\n0 1\n"), Some(Format::EdgeList));
        assert_eq!(detect_format("C~\n"), Some(Format::Graph6));
        assert_eq!(detect_format(">>graph6<<Bw"), Some(Format::Graph6));
        assert_eq!(detect_format("5\n"), None);
    }
}
