use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, NodeId};

/// JSON graph document: `{"nodes":[...],"edges":[[u,v],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphDoc {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<[NodeId; 2]>,
}

/// Parses the edge-list text format: one `u v` pair per line, `#` starts a
/// comment, blank lines ignored. Integer tokens are used verbatim as ids;
/// if any token is not an integer, all tokens are treated as labels and
/// assigned dense ids in order of first appearance. The label table is
/// returned in that case.
pub fn parse_edge_list(text: &str) -> Result<(Graph, Option<Vec<String>>), GraphError> {
    let mut pairs: Vec<(usize, &str, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        match (tok.next(), tok.next(), tok.next()) {
            (Some(u), Some(v), None) => pairs.push((i + 1, u, v)),
            _ => {
                return Err(GraphError::Parse { line: i + 1, msg: format!("expected `u v`, got `{line}`") });
            }
        }
    }
    let numeric = pairs.iter().all(|(_, u, v)| u.parse::<NodeId>().is_ok() && v.parse::<NodeId>().is_ok());
    if numeric {
        let edges = pairs.iter().map(|(_, u, v)| (u.parse().unwrap(), v.parse().unwrap()));
        return Ok((Graph::from_edges(0, edges.collect::<Vec<_>>())?, None));
    }
    let mut ids: HashMap<&str, NodeId> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for &(_, u, v) in &pairs {
        let mut ends = [0; 2];
        for (slot, s) in ends.iter_mut().zip([u, v]) {
            *slot = *ids.entry(s).or_insert_with(|| {
                labels.push(s.to_string());
                labels.len() - 1
            });
        }
        edges.push((ends[0], ends[1]));
    }
    Ok((Graph::from_edges(labels.len(), edges)?, Some(labels)))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("# {} nodes, {} edges\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses the JSON document format. Node ids listed in `nodes` but absent
/// from `edges` become isolated nodes.
pub fn parse_json(text: &str) -> Result<Graph, GraphError> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    let n = doc.nodes.iter().map(|&v| v + 1).max().unwrap_or(0);
    Graph::from_edges(n, doc.edges.iter().map(|&[u, v]| (u, v)))
}

pub fn to_json(g: &Graph) -> GraphDoc {
    GraphDoc { nodes: g.nodes().collect(), edges: g.edges().map(|(u, v)| [u, v]).collect() }
}

pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.nodes() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
