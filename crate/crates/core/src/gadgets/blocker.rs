//! Perfect-matching blocker gadget for `uw-rt-del-ptn`.
//!
//! `H0` has left nodes `L:0..n` and right nodes `R:0..n`; its edges are given
//! as `(left, right)` index pairs. Layout: `u = 0`, `v = 1`, `L:i = 2 + i`,
//! `R:j = 2 + n + j`, `u_n+1 = 2 + 2n`, `v_n+1 = 3 + 2n`, `x = 4 + 2n`. The
//! path `u_n+1 - x - v_n+1` puts those two at distance 2.

use std::collections::BTreeMap;

use super::{GadgetDescriptor, GadgetKind, GadgetParameters};
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, Graph};
use crate::matching::min_cost_value;
use crate::matrix::Matrix;

pub fn gen_blocker(n: usize, h0: &[(usize, usize)]) -> Result<(Graph, EdgeRef, GadgetDescriptor)> {
    if n == 0 {
        return Err(Error::Argument("blocker gadget needs n >= 1".into()));
    }
    if let Some(&(l, r)) = h0.iter().find(|&&(l, r)| l >= n || r >= n) {
        return Err(Error::Argument(format!("edge ({l}, {r}) leaves the {n} x {n} bipartite graph")));
    }
    let adjacency = Matrix::from_fn(n, n, |i, j| if h0.contains(&(i, j)) { 0i64 } else { 1 });
    if min_cost_value(&adjacency) != 0 {
        return Err(Error::Argument("bipartite graph has no perfect matching".into()));
    }
    let (u, v) = (0, 1);
    let left = |i: usize| 2 + i;
    let right = |j: usize| 2 + n + j;
    let (un, vn, x) = (2 + 2 * n, 3 + 2 * n, 4 + 2 * n);

    let mut edges = vec![(u, v), (u, un), (v, vn), (un, x), (x, vn)];
    edges.extend((0..n).map(|i| (u, left(i))));
    edges.extend((0..n).map(|j| (v, right(j))));
    edges.extend(h0.iter().map(|&(i, j)| (left(i), right(j))));
    let graph = Graph::unweighted(5 + 2 * n, edges)?;

    let mut named = BTreeMap::from([
        ("u".to_string(), u),
        ("v".to_string(), v),
        ("u_n+1".to_string(), un),
        ("v_n+1".to_string(), vn),
        ("x".to_string(), x),
    ]);
    named.extend((0..n).map(|i| (format!("L:{i}"), left(i))));
    named.extend((0..n).map(|j| (format!("R:{j}"), right(j))));
    let mut sorted = h0.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let descriptor = GadgetDescriptor {
        kind: GadgetKind::Blocker,
        named_nodes: named,
        parameters: GadgetParameters::Blocker { n, edges: sorted },
    };
    Ok((graph, EdgeRef::new(u, v)?, descriptor))
}
