//! Graph interchange formats: graph6, DIMACS edge format and a JSON edge list.
//!
//! All writers emit vertices relabeled to `0..n` in id order, since none of
//! the formats can carry arbitrary vertex ids.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("dimacs line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// JSON edge list `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
}

impl EdgeList {
    pub fn from_graph(g: &Graph) -> Self {
        let (c, _) = g.relabel_compact();
        EdgeList {
            n: c.vertex_count(),
            edges: c.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        let pairs: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        crate::graph::make_graph(self.n, &pairs)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&EdgeList::from_graph(g)).expect("edge list serializes")
}

pub fn from_json(s: &str) -> Result<Graph, FormatError> {
    let list: EdgeList = serde_json::from_str(s)?;
    Ok(list.to_graph()?)
}

const GRAPH6_HEADER: &str = ">>graph6<<";

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes the graph in graph6 (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let (c, _) = g.relabel_compact();
    let n = c.vertex_count();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(c.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ascii")
}

/// Decodes one graph6 string. An optional `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn from_graph6(s: &str) -> Result<Graph, FormatError> {
    let s = s.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(bad) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(FormatError::Graph6(format!("invalid byte {bad}")));
    }
    let data = |b: u8| (b - 63) as usize;
    let (n, rest) = match bytes {
        [] => return Err(FormatError::Graph6("empty input".into())),
        [126, 126, tail @ ..] => {
            if tail.len() < 6 {
                return Err(FormatError::Graph6("truncated size".into()));
            }
            let n = tail[..6].iter().fold(0, |acc, &b| (acc << 6) | data(b));
            (n, &tail[6..])
        }
        [126, tail @ ..] => {
            if tail.len() < 3 {
                return Err(FormatError::Graph6("truncated size".into()));
            }
            let n = tail[..3].iter().fold(0, |acc, &b| (acc << 6) | data(b));
            (n, &tail[3..])
        }
        [b, tail @ ..] => (data(*b), tail),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if rest.len() != expected {
        return Err(FormatError::Graph6(format!(
            "expected {expected} adjacency bytes for {n} vertices, found {}",
            rest.len()
        )));
    }
    let bit = |k: usize| (data(rest[k / 6]) >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(crate::graph::make_graph(n, &edges)?)
}

/// Reads the DIMACS edge format (`p edge n m`, `e u v` with 1-based ids,
/// `c` comment lines).
pub fn from_dimacs(s: &str) -> Result<Graph, FormatError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, line) in s.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: &str| FormatError::Dimacs {
            line: line_no,
            msg: msg.to_string(),
        };
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(err("duplicate problem line"));
                }
                let _kind = tok.next().ok_or_else(|| err("missing problem kind"))?;
                let count = tok
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err("bad vertex count"))?;
                n = Some(count);
            }
            Some("e") => {
                let count = n.ok_or_else(|| err("edge before problem line"))?;
                let mut end = || {
                    tok.next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .filter(|&v| (1..=count).contains(&v))
                        .ok_or_else(|| err("bad endpoint"))
                };
                let (u, v) = (end()?, end()?);
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(err(&format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or(FormatError::Dimacs {
        line: 0,
        msg: "missing problem line".into(),
    })?;
    Ok(crate::graph::make_graph(n, &edges)?)
}

pub fn to_dimacs(g: &Graph) -> String {
    let (c, _) = g.relabel_compact();
    let mut out = format!("p edge {} {}\n", c.vertex_count(), c.edge_count());
    for (u, v) in c.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_graph;
    use proptest::prelude::*;

    #[test]
    fn graph6_known_strings() {
        // edges a-c, a-e, b-d, d-e
        let g = make_graph(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);
        let k4 = make_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(to_graph6(&k4), "C~");
        assert_eq!(from_graph6(">>graph6<<C~\n").unwrap(), k4);
        assert_eq!(to_graph6(&Graph::empty()), "?");
    }

    #[test]
    fn graph6_long_size_prefix() {
        let g = make_graph(100, &[(0, 99)]).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_truncated() {
        assert!(from_graph6("D").is_err());
        assert!(from_graph6("").is_err());
    }

    #[test]
    fn dimacs_reads_one_based() {
        let g = from_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n").unwrap();
        assert_eq!(g, make_graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap());
        assert!(from_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(from_dimacs("e 1 2\n").is_err());
    }

    #[test]
    fn json_edge_list() {
        let g = from_json(r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(to_json(&g), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert!(from_json(r#"{"n": 2, "edges": [[0, 0]]}"#).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..70).prop_flat_map(|n| {
            let pairs = if n < 2 { 0 } else { n * 3 };
            proptest::collection::vec((0..n.max(1), 0..n.max(1)), pairs).prop_map(move |es| {
                let es: Vec<_> = es.into_iter().filter(|(u, v)| u != v).collect();
                make_graph(n, &es).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn formats_round_trip(g in arb_graph()) {
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
            prop_assert_eq!(from_json(&to_json(&g)).unwrap(), g.clone());
            prop_assert_eq!(from_dimacs(&to_dimacs(&g)).unwrap(), g);
        }
    }
}
