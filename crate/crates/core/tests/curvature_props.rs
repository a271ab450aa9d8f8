use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ricci_core::curvature::{blow_up, build_cost_matrix, emd_via_flow, emd_via_matching, ricci};
use ricci_core::graph::random::random_connected;
use ricci_core::matching::enumerate_matchings;
use ricci_core::{EdgeRef, Graph, Rational};

fn graph(seed: u64, n: usize, weighted: bool) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connected(&mut rng, n, 0.35, weighted.then_some(5))
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn routes_agree(seed in any::<u64>(), n in 2usize..=9, weighted in any::<bool>()) {
        let g = graph(seed, n, weighted);
        for (e, _) in g.edges() {
            let (_, cm) = build_cost_matrix(&g, e).unwrap();
            let bm = blow_up(&cm).unwrap();
            let (by_matching, _) = emd_via_matching::<Rational>(&bm).unwrap();
            let (by_flow, plan) = emd_via_flow::<Rational>(&cm).unwrap();
            prop_assert_eq!(&by_matching, &by_flow);
            prop_assert!(plan.satisfies_constraints(&cm));
            if bm.q <= 8 {
                let best = enumerate_matchings(&bm.costs, 8).unwrap().map(|m| m.cost).min().unwrap();
                prop_assert_eq!(by_matching, ratio(best, bm.q as i64));
            }
        }
    }

    #[test]
    fn denominator_divides_q(seed in any::<u64>(), n in 2usize..=9, weighted in any::<bool>()) {
        let g = graph(seed, n, weighted);
        for (e, _) in g.edges() {
            let r = ricci(&g, e).unwrap();
            let q = num_bigint::BigInt::from(r.value.q);
            prop_assert!((&q % r.emd.denom()).is_zero());
        }
    }

    #[test]
    fn unweighted_bounds(seed in any::<u64>(), n in 2usize..=9) {
        let g = graph(seed, n, false);
        for (e, _) in g.edges() {
            let r = ricci(&g, e).unwrap();
            prop_assert!(r.ric <= Rational::one());
            prop_assert!(r.ric >= ratio(-2, 1));
            prop_assert!(r.emd >= Rational::zero());
        }
    }

    #[test]
    fn scale_invariant(seed in any::<u64>(), n in 2usize..=8, factor in 2u64..=4) {
        let g = graph(seed, n, true);
        let big = g.scaled(factor).unwrap();
        for (e, _) in g.edges() {
            prop_assert_eq!(ricci(&g, e).unwrap().ric, ricci(&big, e).unwrap().ric);
        }
    }

    #[test]
    fn metric_axioms(seed in any::<u64>(), n in 2usize..=8, weighted in any::<bool>()) {
        let g = graph(seed, n, weighted);
        let d: Vec<Vec<u64>> = (0..n)
            .map(|x| g.distances_from(x).unwrap().into_iter().map(|d| d.finite().unwrap()).collect())
            .collect();
        for x in 0..n {
            prop_assert_eq!(d[x][x], 0);
            for y in 0..n {
                prop_assert_eq!(d[x][y], d[y][x]);
                for z in 0..n {
                    prop_assert!(d[x][z] <= d[x][y] + d[y][z]);
                }
            }
        }
    }

    #[test]
    fn insert_then_delete_is_identity(seed in any::<u64>(), n in 3usize..=8) {
        let g = graph(seed, n, false);
        let missing: Vec<EdgeRef> = (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .filter(|&(x, y)| !g.has_edge(x, y))
            .map(|(x, y)| EdgeRef::new(x, y).unwrap())
            .collect();
        let grown = g.insert_edges(missing.iter().map(|&e| (e, 1))).unwrap();
        prop_assert_eq!(grown.delete_edges(&missing).unwrap(), g);
    }
}

#[test]
fn small_closed_forms() {
    let k3 = Graph::unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    for (e, _) in k3.edges() {
        assert_eq!(ricci(&k3, e).unwrap().ric, Rational::one());
    }
    let p3 = Graph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
    assert_eq!(ricci(&p3, EdgeRef::new(0, 1).unwrap()).unwrap().ric, ratio(1, 2));
}
