//! Set-cover gadget for `wt-ut-ins-ntp`.
//!
//! Layout: `u = 0`, `v = 1`, element nodes `2..2 + n`, set nodes
//! `2 + n..2 + n + m`. `w(u, v) = 2`, each `v`-element edge is heavy with
//! weight `W`, membership edges have weight 1. `u` has no other neighbor, so
//! `b = 1` needs `n` even.

use std::collections::BTreeMap;

use super::{check_cover, GadgetDescriptor, GadgetKind, GadgetParameters};
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, Graph, Weight};

/// `(n + m + 1)^3 + 1`, above any blow-up size the gadget can reach.
pub fn default_heavy_weight(n: usize, m: usize) -> Weight {
    (n as Weight + m as Weight + 1).pow(3) + 1
}

pub fn gen_setcover(n: usize, sets: &[Vec<usize>], heavy_weight: Option<Weight>) -> Result<(Graph, EdgeRef, GadgetDescriptor)> {
    let m = sets.len();
    if n == 0 || n % 2 == 1 {
        return Err(Error::Argument(format!("set-cover gadget needs an even positive universe size, got {n}")));
    }
    check_cover(n, sets)?;
    let heavy = heavy_weight.unwrap_or_else(|| default_heavy_weight(n, m));
    if heavy < 3 {
        return Err(Error::Argument(format!("heavy weight {heavy} is too small")));
    }
    let (u, v) = (0, 1);
    let element_node = |a: usize| 2 + a;
    let set_node = |i: usize| 2 + n + i;

    let mut edges: Vec<(usize, usize, Weight)> = vec![(u, v, 2)];
    edges.extend((0..n).map(|a| (v, element_node(a), heavy)));
    for (i, set) in sets.iter().enumerate() {
        edges.extend(set.iter().map(|&a| (set_node(i), element_node(a), 1)));
    }
    let graph = Graph::from_edges(2 + n + m, true, edges)?;

    let mut named = BTreeMap::from([("u".to_string(), u), ("v".to_string(), v)]);
    named.extend((0..n).map(|a| (format!("element:{a}"), element_node(a))));
    named.extend((0..m).map(|i| (format!("set:{i}"), set_node(i))));
    let descriptor = GadgetDescriptor {
        kind: GadgetKind::Setcover,
        named_nodes: named,
        parameters: GadgetParameters::Setcover { universe_size: n, sets: sets.to_vec(), heavy_weight: heavy },
    };
    Ok((graph, EdgeRef::new(u, v)?, descriptor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{blow_up, build_cost_matrix, ricci, Sign};

    #[test]
    fn cover_flips_sign_without_heavy_edges() {
        let sets = vec![vec![0, 1, 2], vec![3, 4, 5], vec![1, 4]];
        let (g, e, d) = gen_setcover(6, &sets, None).unwrap();
        let before = ricci(&g, e).unwrap();
        assert_eq!(before.sign, Sign::Negative);
        let (_, cm) = build_cost_matrix(&g, e).unwrap();
        assert_eq!(blow_up(&cm).unwrap().b, 1);

        let ins = [0, 1].map(|i| (EdgeRef::new(d.node("u"), d.node(&format!("set:{i}"))).unwrap(), 1));
        let g2 = g.insert_edges(ins).unwrap();
        let after = ricci(&g2, e).unwrap();
        assert_eq!(after.sign, Sign::Positive);
        let heavy = default_heavy_weight(6, 3);
        for entry in &after.witness.entries {
            let dist = g2.shortest_dist(entry.from, entry.to).unwrap().finite().unwrap();
            assert!(dist < heavy);
        }
    }

    #[test]
    fn odd_universe_rejected() {
        assert!(gen_setcover(3, &[vec![0, 1, 2]], None).is_err());
    }
}
