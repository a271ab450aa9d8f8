//! Plain-text edge lists: one `u v` or `u v w` per line, `#` starts a comment.
//!
//! The node count is one past the largest id seen. A `# nodes: N` comment
//! raises it to `N`, which lets isolated trailing nodes survive a round trip.
//! The graph is weighted iff some line carries a third field.

use std::fmt::Write as _;

use super::{Graph, NodeId, Weight};
use crate::error::{Error, Result};

const NODES_DIRECTIVE: &str = "nodes:";

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges: Vec<(NodeId, NodeId, Weight)> = Vec::new();
    let mut weighted = false;
    let mut node_count = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let parse_err = |message: String| Error::Parse { line: line_no, message };
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (raw, None),
        };
        if let Some(n) = comment.and_then(|c| c.trim().strip_prefix(NODES_DIRECTIVE)) {
            let n: usize = n.trim().parse().map_err(|_| parse_err(format!("bad node count {n:?}")))?;
            node_count = node_count.max(n);
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() > 3 || fields.len() < 2 {
            return Err(parse_err(format!("expected 2 or 3 fields, found {}", fields.len())));
        }
        let node = |s: &str| -> Result<NodeId> {
            s.parse().map_err(|_| parse_err(format!("bad node id {s:?}")))
        };
        let x = node(fields[0])?;
        let y = node(fields[1])?;
        let w = match fields.get(2) {
            Some(s) => {
                weighted = true;
                let w: Weight = s.parse().map_err(|_| parse_err(format!("bad weight {s:?}")))?;
                if w == 0 {
                    return Err(parse_err("weights must be positive".into()));
                }
                w
            }
            None => 1,
        };
        if x == y {
            return Err(parse_err(format!("self-loop on node {x}")));
        }
        node_count = node_count.max(x.max(y) + 1);
        edges.push((x, y, w));
    }

    Graph::from_edges(node_count, weighted, edges)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {NODES_DIRECTIVE} {}", g.node_count());
    for (e, w) in g.edges() {
        let (a, b) = e.endpoints();
        if g.is_weighted() {
            let _ = writeln!(out, "{a} {b} {w}");
        } else {
            let _ = writeln!(out, "{a} {b}");
        }
    }
    out
}
