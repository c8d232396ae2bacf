//! Line-oriented text format for labelled graphs.
//!
//! ```text
//! # comment
//! p <n> <m>                 header, first record, exactly once
//! e <u> <v>                 edge, 0-indexed, u != v, no duplicates
//! l <name> <v1> ... <vk>    predicate block, repeatable, sets are unioned
//! ```
//!
//! Everything after a `#` is ignored. `write_graph` emits the header, then the
//! edges in lexicographic order, then one `l` line per predicate in name order.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::{Graph, Vertex, VertexSet};

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut adj: Vec<Vec<Vertex>> = Vec::new();
    let mut labels: BTreeMap<String, VertexSet> = BTreeMap::new();
    let mut seen_edges: HashSet<(Vertex, Vertex)> = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        let malformed = |msg: &str| ParseError::Malformed {
            line,
            msg: msg.to_string(),
        };
        let number = |tok: Option<&str>, what: &str| -> Result<usize, ParseError> {
            tok.ok_or_else(|| malformed(&format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|_| malformed(&format!("bad {what}")))
        };
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let n = number(tokens.next(), "vertex count")?;
                let m = number(tokens.next(), "edge count")?;
                if tokens.next().is_some() {
                    return Err(malformed("trailing tokens after header"));
                }
                header = Some((n, m));
                adj = vec![Vec::new(); n];
            }
            "e" => {
                let (n, _) = header.ok_or(ParseError::MissingHeader { line })?;
                let u = number(tokens.next(), "edge endpoint")?;
                let v = number(tokens.next(), "edge endpoint")?;
                if tokens.next().is_some() {
                    return Err(malformed("trailing tokens after edge"));
                }
                for vertex in [u, v] {
                    if vertex >= n {
                        return Err(ParseError::VertexOutOfRange { line, vertex, n });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                if !seen_edges.insert((u.min(v), u.max(v))) {
                    return Err(ParseError::DuplicateEdge { line, u, v });
                }
                adj[u].push(v);
                adj[v].push(u);
            }
            "l" => {
                let (n, _) = header.ok_or(ParseError::MissingHeader { line })?;
                let name = tokens.next().ok_or_else(|| malformed("missing predicate name"))?;
                let set = labels.entry(name.to_string()).or_default();
                for tok in tokens {
                    let vertex = number(Some(tok), "predicate member")?;
                    if vertex >= n {
                        return Err(ParseError::VertexOutOfRange { line, vertex, n });
                    }
                    set.insert(vertex);
                }
            }
            other => return Err(malformed(&format!("unknown record `{other}`"))),
        }
    }

    let (_, declared) = header.ok_or(ParseError::Empty)?;
    if declared != seen_edges.len() {
        return Err(ParseError::EdgeCount {
            declared,
            found: seen_edges.len(),
        });
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut g = Graph::from_sorted_adjacency(adj);
    for (name, set) in labels {
        g.set_predicate(&name, set)
            .expect("predicate members were range-checked");
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    for (name, set) in g.predicates() {
        write!(out, "l {name}").unwrap();
        for v in set {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}
