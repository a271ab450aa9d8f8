//! Maximum-coverage gadget for `wt-rt-ins-ntp`.
//!
//! Layout: `u = 0`, `v = 1`, `u_T = 2`, set nodes `3..3 + m`, element nodes
//! `3 + m..3 + m + n`, then `2n + 2m - 2` sinks. Weights: `w(u, v) = 2`,
//! `w(u, u_T) = 3`, `v` to set and element nodes 3, `v` to sinks 1,
//! membership edges 1, and the set nodes form a weight-1 clique.

use std::collections::BTreeMap;

use super::{check_cover, GadgetDescriptor, GadgetKind, GadgetParameters};
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, Graph, Weight};

pub fn gen_maxcov(n: usize, sets: &[Vec<usize>], kappa: usize) -> Result<(Graph, EdgeRef, GadgetDescriptor)> {
    let m = sets.len();
    if n == 0 || m == 0 {
        return Err(Error::Argument("maxcov needs a nonempty universe and at least one set".into()));
    }
    if kappa == 0 || kappa > m {
        return Err(Error::Argument(format!("kappa must be in 1..={m}, got {kappa}")));
    }
    check_cover(n, sets)?;
    let (u, v, u_t) = (0, 1, 2);
    let set_node = |i: usize| 3 + i;
    let element_node = |a: usize| 3 + m + a;
    let sinks = 2 * n + 2 * m - 2;
    let sink_node = |k: usize| 3 + m + n + k;
    let node_count = 3 + m + n + sinks;

    let mut edges: Vec<(usize, usize, Weight)> = vec![(u, v, 2), (u, u_t, 3)];
    edges.extend((0..m).map(|i| (v, set_node(i), 3)));
    edges.extend((0..n).map(|a| (v, element_node(a), 3)));
    edges.extend((0..sinks).map(|k| (v, sink_node(k), 1)));
    for (i, set) in sets.iter().enumerate() {
        edges.extend(set.iter().map(|&a| (set_node(i), element_node(a), 1)));
    }
    for i in 0..m {
        edges.extend((i + 1..m).map(|j| (set_node(i), set_node(j), 1)));
    }
    let graph = Graph::from_edges(node_count, true, edges)?;

    let mut named = BTreeMap::from([("u".to_string(), u), ("v".to_string(), v), ("u_T".to_string(), u_t)]);
    named.extend((0..m).map(|i| (format!("set:{i}"), set_node(i))));
    named.extend((0..n).map(|a| (format!("element:{a}"), element_node(a))));
    named.extend((0..sinks).map(|k| (format!("sink:{k}"), sink_node(k))));
    let descriptor = GadgetDescriptor {
        kind: GadgetKind::Maxcov,
        named_nodes: named,
        parameters: GadgetParameters::Maxcov { universe_size: n, sets: sets.to_vec(), kappa },
    };
    Ok((graph, EdgeRef::new(u, v)?, descriptor))
}
