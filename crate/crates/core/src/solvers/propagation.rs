//! Cost-matrix update after inserting one unit edge into an unweighted graph.

use crate::curvature::CostMatrix;
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, Graph};

/// Entries after inserting `{p, t}` at weight 1 into `g` (the graph before
/// the insertion).
///
/// With entries at most 3, a path through the new edge can only beat the old
/// distance when it has length 1 (the pair itself) or 2 (one endpoint of the
/// pair plus a neighbor of the other). Every other entry is unchanged.
pub fn weight_propagation(g: &Graph, cm: &CostMatrix, inserted: EdgeRef) -> Result<CostMatrix> {
    if g.is_weighted() && g.edges().any(|(_, w)| w != 1) {
        return Err(Error::Argument("weight propagation needs an unweighted graph".into()));
    }
    if cm.costs.iter().any(|&c| c > 3) {
        return Err(Error::Argument("weight propagation needs entries at most 3".into()));
    }
    let (p, t) = inserted.endpoints();
    if g.has_edge(p, t) {
        return Err(Error::DuplicateEdge(p, t));
    }
    let near = |x: usize, a: usize| x == a || g.has_edge(x, a);
    let mut out = cm.clone();
    for (i, &x) in cm.row_nodes.iter().enumerate() {
        for (j, &y) in cm.col_nodes.iter().enumerate() {
            let via = |a: usize, b: usize| -> Option<i64> {
                match (x == a, y == b) {
                    (true, true) => Some(1),
                    (true, false) if near(y, b) => Some(2),
                    (false, true) if near(x, a) => Some(2),
                    _ => None,
                }
            };
            let best = [via(p, t), via(t, p)].into_iter().flatten().min();
            if let Some(d) = best {
                let cell = &mut out.costs[(i, j)];
                *cell = (*cell).min(d);
            }
        }
    }
    Ok(out)
}
