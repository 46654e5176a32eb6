//! graph6 (short form) and edge-list JSON.

use serde::{Deserialize, Serialize};

use super::{Edge, GraphCollection, LabeledGraph};
use crate::error::{GraphError, ParseError};

/// Largest order expressible in the graph6 short form.
pub const GRAPH6_MAX: usize = 62;
const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeListJson,
}

impl GraphFormat {
    /// Guesses the format from the first non-blank character.
    pub fn sniff(text: &str) -> GraphFormat {
        if text.trim_start().starts_with('{') {
            GraphFormat::EdgeListJson
        } else {
            GraphFormat::Graph6
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct CollectionJson {
    k: usize,
    graphs: Vec<GraphJson>,
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<LabeledGraph, ParseError> {
    match format {
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::EdgeListJson => {
            let raw: GraphJson = serde_json::from_str(text).map_err(|e| json_error(text, &e))?;
            graph_from_json(raw)
        }
    }
}

pub fn emit_graph(g: &LabeledGraph, format: GraphFormat) -> Result<String, GraphError> {
    match format {
        GraphFormat::Graph6 => emit_graph6(g),
        GraphFormat::EdgeListJson => Ok(serde_json::to_string(&graph_to_json(g)).expect("plain data serializes")),
    }
}

pub fn parse_collection(text: &str) -> Result<GraphCollection, ParseError> {
    let raw: CollectionJson = serde_json::from_str(text).map_err(|e| json_error(text, &e))?;
    let graphs = raw
        .graphs
        .into_iter()
        .map(graph_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    GraphCollection::new(raw.k, graphs).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn emit_collection(gc: &GraphCollection) -> String {
    let raw = CollectionJson {
        k: gc.k(),
        graphs: gc.graphs().iter().map(graph_to_json).collect(),
    };
    serde_json::to_string(&raw).expect("plain data serializes")
}

fn graph_to_json(g: &LabeledGraph) -> GraphJson {
    GraphJson {
        n: g.n(),
        edges: g.edges().into_iter().map(Into::into).collect(),
    }
}

fn graph_from_json(raw: GraphJson) -> Result<LabeledGraph, ParseError> {
    let mut g = LabeledGraph::try_empty(raw.n).map_err(|e| ParseError::new(0, e.to_string()))?;
    for (i, [a, b]) in raw.edges.into_iter().enumerate() {
        g.add_edge(a, b)
            .map_err(|e| ParseError::new(0, format!("edge #{i}: {e}")))?;
    }
    Ok(g)
}

fn json_error(text: &str, e: &serde_json::Error) -> ParseError {
    // serde_json reports 1-based line/column; convert to a byte offset
    let offset: usize = text
        .split_inclusive('\n')
        .take(e.line().saturating_sub(1))
        .map(str::len)
        .sum::<usize>()
        + e.column().saturating_sub(1);
    ParseError::new(offset, e.to_string())
}

fn emit_graph6(g: &LabeledGraph) -> Result<String, GraphError> {
    let n = g.n();
    if n > GRAPH6_MAX {
        return Err(GraphError::Parameters(format!(
            "graph6 short form holds at most {GRAPH6_MAX} vertices, got {n}"
        )));
    }
    let mut out = String::with_capacity(1 + (n * n) / 12 + 1);
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 2..=n {
        for i in 1..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

fn parse_graph6(text: &str) -> Result<LabeledGraph, ParseError> {
    let (offset, body) = match text.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (GRAPH6_HEADER.len(), rest),
        None => (0, text),
    };
    let body = body.trim_end();
    let bytes = body.as_bytes();
    let first = *bytes
        .first()
        .ok_or_else(|| ParseError::new(offset, "empty graph6 string"))?;
    if first == 126 {
        return Err(ParseError::new(
            offset,
            "long-form graph6 (more than 62 vertices) is not supported",
        ));
    }
    if !(63..126).contains(&first) {
        return Err(ParseError::new(offset, format!("invalid size byte {first:#04x}")));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(ParseError::new(offset, "graph6 string encodes zero vertices"));
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() != expected {
        return Err(ParseError::new(
            offset + 1 + data.len().min(expected),
            format!("expected {expected} data bytes for n={n}, found {}", data.len()),
        ));
    }
    let mut g = LabeledGraph::empty(n);
    let mut pairs = (2..=n).flat_map(|j| (1..j).map(move |i| (i, j)));
    for (pos, &byte) in data.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(ParseError::new(
                offset + 1 + pos,
                format!("byte {byte:#04x} outside the graph6 alphabet"),
            ));
        }
        let word = byte - 63;
        for shift in (0..6).rev() {
            let bit = word >> shift & 1;
            match pairs.next() {
                Some((i, j)) => {
                    if bit == 1 {
                        g.add_edge(i, j).expect("in range");
                    }
                }
                None if bit == 1 => {
                    return Err(ParseError::new(offset + 1 + pos, "nonzero padding bit"));
                }
                None => {}
            }
        }
    }
    Ok(g)
}

/// Parses a list of `[a, b]` pairs into edges (helper for CLI inputs).
pub fn edges_from_pairs(pairs: &[[usize; 2]]) -> Result<Vec<Edge>, GraphError> {
    pairs.iter().map(|&p| Edge::try_from(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, hnk, path};

    #[test]
    fn json_k2() {
        let g = parse_graph(r#"{"n":2,"edges":[[1,2]]}"#, GraphFormat::EdgeListJson).unwrap();
        assert_eq!(g, complete(2));
    }

    #[test]
    fn graph6_triangle() {
        // n=3 -> 'B'; bits x01 x02 x12 = 111, padded 111000 = 56 -> 'w'
        assert_eq!(emit_graph(&complete(3), GraphFormat::Graph6).unwrap(), "Bw");
        assert_eq!(parse_graph("Bw", GraphFormat::Graph6).unwrap(), complete(3));
        assert_eq!(parse_graph(">>graph6<<Bw\n", GraphFormat::Graph6).unwrap(), complete(3));
    }

    #[test]
    fn graph6_known_strings() {
        // P_4 with edges 12, 23, 34: bits x12=1 x13=0 x23=1 x14=0 x24=0 x34=1
        assert_eq!(emit_graph(&path(4), GraphFormat::Graph6).unwrap(), "Ch");
        assert_eq!(emit_graph(&complete(5), GraphFormat::Graph6).unwrap(), "D~{");
        assert_eq!(emit_graph(&LabeledGraph::empty(1), GraphFormat::Graph6).unwrap(), "@");
    }

    #[test]
    fn round_trip_hnk() {
        let g = hnk(7, 2, 7, &[1]).unwrap();
        for fmt in [GraphFormat::Graph6, GraphFormat::EdgeListJson] {
            let text = emit_graph(&g, fmt).unwrap();
            assert_eq!(parse_graph(&text, fmt).unwrap(), g);
        }
    }

    #[test]
    fn graph6_errors_carry_positions() {
        assert_eq!(parse_graph("", GraphFormat::Graph6).unwrap_err().position, 0);
        let e = parse_graph("~??", GraphFormat::Graph6).unwrap_err();
        assert!(e.message.contains("long-form"));
        let e = parse_graph("D~", GraphFormat::Graph6).unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_graph("B ", GraphFormat::Graph6).unwrap_err();
        assert!(e.message.contains("expected 1 data bytes"));
        let e = parse_graph("C!", GraphFormat::Graph6).unwrap_err();
        assert_eq!(e.position, 1);
        // n=3 has 3 data bits; setting a padding bit must fail
        let e = parse_graph("Bx", GraphFormat::Graph6).unwrap_err();
        assert!(e.message.contains("padding"));
    }

    #[test]
    fn graph6_rejects_too_large() {
        assert!(emit_graph(&complete(63), GraphFormat::Graph6).is_err());
        assert!(emit_graph(&complete(62), GraphFormat::Graph6).is_ok());
    }

    #[test]
    fn json_errors() {
        let e = parse_graph(r#"{"n":2,"edges":[[1,3]]}"#, GraphFormat::EdgeListJson).unwrap_err();
        assert!(e.message.contains("not in 1..=2"));
        let e = parse_graph("{\"n\":2,\n\"edges\":[[1,2],]}", GraphFormat::EdgeListJson).unwrap_err();
        assert!(e.position > 7);
        assert!(parse_graph(r#"{"n":0,"edges":[]}"#, GraphFormat::EdgeListJson).is_err());
        assert!(parse_graph(r#"{"n":3,"edges":[[2,2]]}"#, GraphFormat::EdgeListJson).is_err());
    }

    #[test]
    fn collection_round_trip() {
        let gc = GraphCollection::new(1, vec![complete(4), path(4)]).unwrap();
        let text = emit_collection(&gc);
        assert_eq!(parse_collection(&text).unwrap(), gc);
        assert!(parse_collection(r#"{"k":1,"graphs":[{"n":2,"edges":[]},{"n":3,"edges":[]}]}"#).is_err());
    }

    #[test]
    fn sniffing() {
        assert_eq!(GraphFormat::sniff("  {\"n\":1}"), GraphFormat::EdgeListJson);
        assert_eq!(GraphFormat::sniff("Bw"), GraphFormat::Graph6);
    }
}
