use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ricci_core::curvature::{blow_up, build_cost_matrix, canonicalize_matching, common_offsets};
use ricci_core::graph::random::random_connected;
use ricci_core::matching::{
    class_counts, enumerate_matchings, exact_cost_matching, matching_cost, matching_with_counts,
    min_cost_perfect_matching, Matching,
};
use ricci_core::Matrix;

fn matrix(seed: u64, n: usize) -> Matrix<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(n, n, |_, _| rng.gen_range(0..=3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hungarian_matches_enumeration(seed in any::<u64>(), n in 1usize..=6) {
        let m = matrix(seed, n);
        let best = enumerate_matchings(&m, 8).unwrap().map(|x| x.cost).min().unwrap();
        let got = min_cost_perfect_matching(&m);
        prop_assert_eq!(got.cost, best);
        prop_assert_eq!(matching_cost(&m, &got.assignment).unwrap(), best);
    }

    #[test]
    fn exact_cost_agrees_with_enumeration(seed in any::<u64>(), n in 1usize..=5) {
        let m = matrix(seed, n);
        let costs: BTreeSet<i64> = enumerate_matchings(&m, 8).unwrap().map(|x| x.cost).collect();
        for target in 0..=3 * n as i64 {
            let found = exact_cost_matching(&m, target, 20, seed).unwrap();
            if let Some(w) = &found {
                prop_assert_eq!(matching_cost(&m, &w.assignment).unwrap(), target);
            }
            prop_assert_eq!(found.is_some(), costs.contains(&target));
        }
    }

    #[test]
    fn counts_agree_with_enumeration(seed in any::<u64>(), n in 2usize..=4) {
        let m = matrix(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let touchable = Matrix::from_fn(n, n, |_, _| rng.gen_bool(0.7));
        let present: BTreeSet<(i64, usize, usize)> = enumerate_matchings(&m, 8)
            .unwrap()
            .map(|x| {
                let c = class_counts(&m, &touchable, &x).unwrap();
                (x.cost, c.n3, c.n2_touchable)
            })
            .collect();
        for x in 0..=3 * n as i64 {
            for k in 0..=n {
                for l in 0..=n - k {
                    let found = matching_with_counts(&m, &touchable, x, k, l, 20, seed).unwrap();
                    if let Some(w) = &found {
                        let c = class_counts(&m, &touchable, w).unwrap();
                        prop_assert_eq!((w.cost, c.n3, c.n2_touchable), (x, k, l));
                    }
                    prop_assert_eq!(found.is_some(), present.contains(&(x, k, l)));
                }
            }
        }
    }

    /// Every min-cost matching of a small blow-up canonicalizes to one with
    /// zero-cost shared blocks, and the leftover copies of `u` and `v` yield
    /// `a - b` untouchable 2-edges and `a - b` untouchable 1-edges.
    #[test]
    fn canonical_structure(seed in any::<u64>(), n in 3usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(&mut rng, n, 0.3, None);
        for (e, _) in g.edges() {
            let (pair, cm) = build_cost_matrix(&g, e).unwrap();
            let bm = blow_up(&cm).unwrap();
            if bm.q > 7 {
                continue;
            }
            let best = min_cost_perfect_matching(&bm.costs).cost;
            let offsets = common_offsets(&pair);
            for m in enumerate_matchings(&bm.costs, 8).unwrap().filter(|m| m.cost == best) {
                let c = canonicalize_matching(&bm, &m, &offsets).unwrap();
                prop_assert_eq!(c.cost, best);
                for &j in &offsets {
                    let rows = bm.row_block(bm.r - 1 - j);
                    for col in bm.col_block(bm.s - 1 - j) {
                        let row = (0..bm.q).find(|&i| c.assignment[i] == col).unwrap();
                        prop_assert!(rows.contains(&row));
                    }
                }
                let counts = class_counts(&bm.costs, &bm.touchable, &c).unwrap();
                prop_assert_eq!(counts.n2_untouchable, bm.a - bm.b);
                let untouched_ones = c.pairs().filter(|&p| !bm.touchable[p] && bm.costs[p] == 1).count();
                prop_assert_eq!(untouched_ones, bm.a - bm.b);
            }
        }
    }
}

#[test]
fn non_minimal_start_is_rejected() {
    let g = ricci_core::Graph::unweighted(4, [(0, 1), (0, 2), (1, 3)]).unwrap();
    let e = ricci_core::EdgeRef::new(0, 1).unwrap();
    let (pair, cm) = build_cost_matrix(&g, e).unwrap();
    let bm = blow_up(&cm).unwrap();
    let worst = enumerate_matchings(&bm.costs, 8).unwrap().max_by_key(|m| m.cost).unwrap();
    let bad = Matching::from_assignment(&bm.costs, worst.assignment).unwrap();
    assert!(canonicalize_matching(&bm, &bad, &common_offsets(&pair)).is_err());
}
