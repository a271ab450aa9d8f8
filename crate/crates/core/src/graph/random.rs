//! Random graph families for property tests and oracle sweeps.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{EdgeRef, Graph, NodeId, Weight};

/// Connected graph on `n` nodes: a random spanning tree plus each remaining
/// pair with probability `p`. Weights are uniform in `1..=w` when `max_weight`
/// is `Some(w)`, otherwise the graph is unweighted.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64, max_weight: Option<Weight>) -> Graph {
    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        pairs.push(EdgeRef::new(order[i], order[j]).expect("distinct"));
    }
    for x in 0..n {
        for y in x + 1..n {
            let e = EdgeRef::new(x, y).expect("distinct");
            if !pairs.contains(&e) && rng.gen_bool(p) {
                pairs.push(e);
            }
        }
    }
    let weighted = max_weight.is_some();
    let edges: Vec<_> = pairs
        .into_iter()
        .map(|e| {
            let (x, y) = e.endpoints();
            (x, y, max_weight.map_or(1, |w| rng.gen_range(1..=w)))
        })
        .collect();
    Graph::from_edges(n, weighted, edges).expect("generated edges are valid")
}

/// Unweighted graph around the edge `{0, 1}` with no edge inside either open
/// neighborhood. Node 0 gets private neighbors `2..2 + du`, node 1 gets
/// `2 + du..2 + du + dv`, and `extra` further nodes follow. Every other
/// allowed pair is an edge with probability `p`.
pub fn random_spade<R: Rng>(rng: &mut R, du: usize, dv: usize, extra: usize, p: f64) -> (Graph, EdgeRef) {
    let side_u = 2..2 + du;
    let side_v = 2 + du..2 + du + dv;
    let n = 2 + du + dv + extra;
    let mut edges = vec![(0, 1)];
    edges.extend(side_u.clone().map(|x| (0, x)));
    edges.extend(side_v.clone().map(|y| (1, y)));
    for x in 2..n {
        for y in x + 1..n {
            let inside = (side_u.contains(&x) && side_u.contains(&y)) || (side_v.contains(&x) && side_v.contains(&y));
            if !inside && rng.gen_bool(p) {
                edges.push((x, y));
            }
        }
    }
    (Graph::unweighted(n, edges).expect("generated edges are valid"), EdgeRef::new(0, 1).expect("distinct"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn connected_and_spade() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_connected(&mut rng, 7, 0.3, Some(4));
            assert!(g.is_connected());
            assert!(g.edges().all(|(_, w)| (1..=4).contains(&w)));
        }
        let (g, e) = random_spade(&mut rng, 3, 4, 3, 0.5);
        let nu: Vec<_> = g.neighbors(0).collect();
        let nv: Vec<_> = g.neighbors(1).collect();
        assert_eq!((nu.len(), nv.len()), (4, 5));
        for set in [&nu, &nv] {
            for &a in set.iter() {
                assert!(set.iter().all(|&b| !g.has_edge(a, b)));
            }
        }
        assert!(g.has_edge(e.endpoints().0, e.endpoints().1));
    }
}
