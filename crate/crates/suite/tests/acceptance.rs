//! Acceptance suite: one `[PASS]` or `[FAIL]` line per criterion, nonzero
//! exit if any criterion fails. Sizes, seeds and time limits are fixed here.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ricci_core::curvature::{
    blow_up, build_cost_matrix, canonicalize_matching, common_offsets, emd_via_flow, emd_via_matching, ricci, Sign,
};
use ricci_core::gadgets::{gen_blocker, gen_maxcov, gen_setcover, gen_tightness, is_cover};
use ricci_core::graph::random::{random_connected, random_spade};
use ricci_core::matching::{
    class_counts, enumerate_matchings, exact_cost_matching, matching_cost, CountOracle, EwpmConfig, DEFAULT_TRIALS,
};
use ricci_core::solvers::{
    brute_force_drops, brute_force_opt, exact_value, feasible_by_saturation, greedy_drops, greedy_insert_default,
    randomized_insert, Instance, ProblemVariant,
};
use ricci_core::{EdgeRef, Graph, Matrix, Rational};

const MASTER_SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(start: Instant, limit: Duration) -> bool {
    start.elapsed() < limit
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Criteria 1 and 2 share the same graph sweep.
fn route_equivalence() -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED);
    let (mut edges, mut enumerated, mut mismatches, mut bad_denominators) = (0usize, 0usize, 0usize, 0usize);
    for i in 0..240 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.1..0.6);
        let weight = (i % 2 == 1).then(|| rng.gen_range(2..=5));
        let g = random_connected(&mut rng, n, p, weight);
        for (e, _) in g.edges() {
            edges += 1;
            let (_, cm) = build_cost_matrix(&g, e).expect("connected graph");
            let bm = blow_up(&cm).expect("within the blow-up cap");
            let (by_matching, _) = emd_via_matching::<Rational>(&bm).expect("exact");
            let (by_flow, plan) = emd_via_flow::<Rational>(&cm).expect("exact");
            let mut agree = by_matching == by_flow && plan.satisfies_constraints(&cm);
            if bm.q <= 8 {
                enumerated += 1;
                let best = enumerate_matchings(&bm.costs, 8).expect("q <= 8").map(|m| m.cost).min().expect("q >= 1");
                agree &= by_matching == ratio(best, bm.q as i64);
            }
            if !agree {
                mismatches += 1;
            }
            let q = num_bigint::BigInt::from(bm.q);
            if !(q % by_matching.denom()).is_zero() {
                bad_denominators += 1;
            }
        }
    }
    let in_time = within(start, Duration::from_secs(120));
    let first = outcome(
        mismatches == 0 && in_time,
        format!(
            "route equivalence: 240 graphs, {edges} edges, {enumerated} enumerated (q <= 8), {mismatches} mismatches, {:.1?}",
            start.elapsed()
        ),
    );
    let second =
        outcome(bad_denominators == 0, format!("EMD denominators divide q: {bad_denominators} violations over {edges} edges"));
    (first, second)
}

fn random_h0(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = perm.into_iter().enumerate().collect();
    for i in 0..n {
        for j in 0..n {
            if !edges.contains(&(i, j)) && rng.gen_bool(0.3) {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    edges
}

fn has_perfect_matching(n: usize, edges: &[(usize, usize)]) -> bool {
    let m = Matrix::from_fn(n, n, |i, j| if edges.contains(&(i, j)) { 0i64 } else { 1 });
    ricci_core::matching::min_cost_value(&m) == 0
}

fn blocker_fixture() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED + 3);
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=6 {
        for _ in 0..2 {
            count += 1;
            let h0 = random_h0(&mut rng, n);
            let (g, e, d) = gen_blocker(n, &h0).expect("h0 has a perfect matching");
            let before = ricci(&g, e).expect("connected").ric;
            let min_degree = (0..n).map(|i| h0.iter().filter(|&&(l, _)| l == i).count()).min().expect("n >= 1");
            let inst = Instance::new(g, e, ProblemVariant::UW_RT_DEL_PTN).expect("positive curvature");
            let sol = brute_force_opt(&inst, min_degree).expect("within budget").expect("deleting a star blocks");
            let removed: Vec<(usize, usize)> = sol
                .edits
                .edges()
                .filter_map(|x| {
                    let (a, b) = x.endpoints();
                    let l = (0..n).find(|&i| d.node(&format!("L:{i}")) == a)?;
                    let r = (0..n).find(|&j| d.node(&format!("R:{j}")) == b)?;
                    Some((l, r))
                })
                .collect();
            let rest: Vec<(usize, usize)> = h0.iter().copied().filter(|x| !removed.contains(x)).collect();
            let ok = before == ratio(1, n as i64 + 3)
                && sol.resulting_ric == ratio(-1, n as i64 + 3)
                && removed.len() == sol.len()
                && !has_perfect_matching(n, &rest);
            if !ok {
                failures.push(format!("n={n}: before {before}, after {}", sol.resulting_ric));
            }
        }
    }
    let in_time = within(start, Duration::from_secs(60));
    outcome(
        failures.is_empty() && in_time,
        format!("blocker gadgets: {count} instances n in 2..=6, {} off the closed forms {failures:?}, {:.1?}", failures.len(), start.elapsed()),
    )
}

fn random_set_system(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Vec<usize>> {
    loop {
        let sets: Vec<Vec<usize>> =
            (0..m).map(|_| (0..n).filter(|_| rng.gen_bool(0.45)).collect::<Vec<_>>()).collect::<Vec<_>>();
        if is_cover(n, &sets, &(0..m).collect::<Vec<_>>()) {
            return sets;
        }
    }
}

fn covers(n: usize, sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (1..=sets.len())
        .flat_map(|k| (0..sets.len()).combinations(k))
        .filter(|c| is_cover(n, sets, c))
        .collect()
}

fn maxcov_fixture() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED + 4);
    let (mut systems, mut checked, mut failures) = (0, 0, Vec::new());
    for _ in 0..24 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(1..=5);
        let sets = random_set_system(&mut rng, n, m);
        let all = covers(n, &sets);
        let (g, e, d) = gen_maxcov(n, &sets, all[0].len()).expect("valid set system");
        systems += 1;
        if exact_value(&g, e).expect("connected").sign() != Sign::Negative {
            failures.push(format!("n={n} m={m}: not negative before insertion"));
            continue;
        }
        for cover in &all {
            checked += 1;
            let ins = cover
                .iter()
                .map(|&i| (EdgeRef::new(d.node("u_T"), d.node(&format!("set:{i}"))).expect("distinct"), 1));
            let after = exact_value(&g.insert_edges(ins).expect("non-edges"), e).expect("connected");
            if after.sign() != Sign::Positive {
                failures.push(format!("n={n} m={m} cover {cover:?}: sign {:?}", after.sign()));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("maxcov gadgets: {systems} set systems, {checked} covers inserted, failures {failures:?}"),
    )
}

fn setcover_fixture() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED + 5);
    let (mut checked, mut failures) = (0, Vec::new());
    for _ in 0..20 {
        let n = 2 * rng.gen_range(1..=4);
        let m = rng.gen_range(1..=5);
        let sets = random_set_system(&mut rng, n, m);
        let (g, e, d) = gen_setcover(n, &sets, None).expect("valid set system");
        let heavy = g.weight(d.node("v"), d.node("element:0")).expect("heavy edge");
        if ricci(&g, e).expect("connected").sign != Sign::Negative {
            failures.push(format!("n={n} m={m}: not negative before insertion"));
            continue;
        }
        for cover in covers(n, &sets) {
            checked += 1;
            let ins =
                cover.iter().map(|&i| (EdgeRef::new(d.node("u"), d.node(&format!("set:{i}"))).expect("distinct"), 1));
            let g2 = g.insert_edges(ins).expect("non-edges");
            let after = ricci(&g2, e).expect("connected");
            let light = after.witness.entries.iter().all(|p| {
                g2.shortest_dist(p.from, p.to).expect("nodes exist").finite().is_some_and(|dist| dist < heavy)
            });
            if after.sign != Sign::Positive || !light {
                failures.push(format!("n={n} cover {cover:?}: sign {:?}, heavy-free {light}", after.sign));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("set-cover gadgets: 20 set systems, {checked} covers inserted, failures {failures:?}"),
    )
}

struct SpadeCase {
    inst: Instance,
    b: usize,
    opt: usize,
}

/// Degree pairs with `q <= 24`; the first six have `b = 1`.
const SPADE_DEGREES: [(usize, usize); 10] = [(1, 1), (1, 3), (1, 5), (2, 2), (2, 5), (3, 3), (1, 2), (2, 3), (2, 4), (3, 4)];

fn spade_cases() -> Vec<SpadeCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED + 6);
    let mut out = Vec::new();
    let mut attempt = 0;
    while out.len() < 60 {
        let (du, dv) = SPADE_DEGREES[attempt % SPADE_DEGREES.len()];
        attempt += 1;
        let extra = rng.gen_range(0..=3);
        let p = rng.gen_range(0.05..0.35);
        let (g, e) = random_spade(&mut rng, du, dv, extra, p);
        let Ok(inst) = Instance::new(g, e, ProblemVariant::UW_RT_INS_NTP) else { continue };
        if !feasible_by_saturation(&inst).expect("supported").feasible {
            continue;
        }
        let Some(opt) = brute_force_opt(&inst, 6).expect("within budget") else { continue };
        let b = inst.base.q / (dv + 1);
        out.push(SpadeCase { inst, b, opt: opt.len() });
    }
    out
}

fn greedy_ratio(cases: &[SpadeCase]) -> Outcome {
    let mut failures = Vec::new();
    for (i, c) in cases.iter().enumerate() {
        let p = greedy_insert_default(&c.inst).expect("feasible instance").len();
        let rho = c.inst.base.rho();
        let ok = p <= 2 * c.b * c.opt && (p as i128) <= rho + 1 && (2 * c.b * c.opt) as i128 > rho;
        if !ok {
            failures.push(format!("#{i}: p={p} opt={} b={} rho={rho}", c.opt, c.b));
        }
    }
    outcome(
        failures.is_empty() && cases.len() >= 50,
        format!("greedy ratio: {} spade instances, violations {failures:?}", cases.len()),
    )
}

fn randomized_success(cases: &[SpadeCase]) -> Outcome {
    let start = Instant::now();
    let (mut runs, mut optimal, mut unverified) = (0, 0, 0);
    for (i, c) in cases.iter().enumerate().filter(|(_, c)| c.b == 1) {
        for seed in 0..3u64 {
            runs += 1;
            if let Ok(sol) = randomized_insert(&c.inst, MASTER_SEED ^ (i as u64 * 31 + seed)) {
                let value = exact_value(&c.inst.apply(&sol.edits).expect("permissible"), c.inst.edge).expect("exact");
                if !sol.verified || value.sign() != Sign::Positive {
                    unverified += 1;
                }
                if sol.len() == c.opt {
                    optimal += 1;
                }
            }
        }
    }
    let rate = optimal as f64 / runs.max(1) as f64;
    let in_time = within(start, Duration::from_secs(300));
    outcome(
        runs > 0 && rate >= 0.9 && unverified == 0 && in_time,
        format!(
            "randomized solver: {runs} runs on b = 1 instances, opt-size rate {rate:.3} (>= 0.9), {unverified} unverified, {:.1?}",
            start.elapsed()
        ),
    )
}

fn tightness() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for m in [4, 6, 8] {
        let t = gen_tightness(m).expect("even m");
        let adversarial = greedy_drops(&t.matrix, &t.adversarial).expect("min-cost start").len();
        let from_optimal = greedy_drops(&t.matrix, &t.optimal).expect("min-cost start").len();
        let opt = brute_force_drops(&t.matrix, m / 2).expect("within budget").map(|s| s.len());
        let smaller = brute_force_drops(&t.matrix, m / 2 - 1).expect("within budget");
        pass &= adversarial == m && from_optimal == m / 2 && opt == Some(m / 2) && smaller.is_none();
        detail.push(format!("m={m}: greedy {adversarial}, from M' {from_optimal}, opt {opt:?}"));
    }
    outcome(pass, format!("tightness: {}", detail.join("; ")))
}

fn ewpm_agreement() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED + 9);
    let (mut queries, mut misses, mut false_hits, mut bad_witness) = (0usize, 0usize, 0usize, 0usize);
    for i in 0..100 {
        let q = 2 + i % 6;
        let costs = Matrix::from_fn(q, q, |_, _| rng.gen_range(0..=3i64));
        let touchable = Matrix::from_fn(q, q, |_, _| rng.gen_bool(0.75));
        let all: Vec<_> = enumerate_matchings(&costs, 8).expect("q <= 7").collect();
        let by_cost: BTreeSet<i64> = all.iter().map(|m| m.cost).collect();
        let by_counts: BTreeSet<(i64, usize, usize)> = all
            .iter()
            .map(|m| {
                let c = class_counts(&costs, &touchable, m).expect("entries in 0..=3");
                (m.cost, c.n3, c.n2_touchable)
            })
            .collect();
        let seed = rng.gen();
        for x in 0..=3 * q as i64 {
            queries += 1;
            let found = exact_cost_matching(&costs, x, DEFAULT_TRIALS, seed).expect("valid query");
            if let Some(w) = &found {
                bad_witness += usize::from(matching_cost(&costs, &w.assignment).ok() != Some(x));
            }
            match (found.is_some(), by_cost.contains(&x)) {
                (false, true) => misses += 1,
                (true, false) => false_hits += 1,
                _ => {}
            }
        }
        let mut oracle = CountOracle::new(&costs, &touchable, EwpmConfig::new(DEFAULT_TRIALS, seed)).expect("valid");
        for x in 0..=3 * q as i64 {
            for k in 0..=q {
                for l in 0..=q - k {
                    queries += 1;
                    let found = oracle.find(x, k, l).expect("valid query");
                    if let Some(w) = &found {
                        let c = class_counts(&costs, &touchable, w).expect("entries in 0..=3");
                        bad_witness += usize::from((w.cost, c.n3, c.n2_touchable) != (x, k, l));
                    }
                    match (found.is_some(), by_counts.contains(&(x, k, l))) {
                        (false, true) => misses += 1,
                        (true, false) => false_hits += 1,
                        _ => {}
                    }
                }
            }
        }
    }
    let failure_rate = misses as f64 / queries as f64;
    let in_time = within(start, Duration::from_secs(180));
    outcome(
        failure_rate < 0.1 && false_hits == 0 && bad_witness == 0 && in_time,
        format!(
            "exact-cost oracle: 100 matrices q in 2..=7, {queries} queries, failure rate {failure_rate:.4} (< 0.1), {false_hits} false hits, {bad_witness} bad witnesses, {:.1?}",
            start.elapsed()
        ),
    )
}

/// Unweighted graph around `{0, 1}` with `eta` common neighbors, `pu` and
/// `pv` private ones, `extra` outside nodes and random edges among the rest.
fn deletion_graph(rng: &mut ChaCha8Rng, eta: usize, pu: usize, pv: usize, extra: usize, p: f64) -> Graph {
    let common = 2..2 + eta;
    let side_u = common.end..common.end + pu;
    let side_v = side_u.end..side_u.end + pv;
    let n = side_v.end + extra;
    let mut edges = vec![(0, 1)];
    edges.extend(common.clone().flat_map(|c| [(0, c), (1, c)]));
    edges.extend(side_u.map(|x| (0, x)));
    edges.extend(side_v.map(|y| (1, y)));
    for x in 2..n {
        for y in x + 1..n {
            if rng.gen_bool(p) {
                edges.push((x, y));
            }
        }
    }
    Graph::unweighted(n, edges).expect("valid edges")
}

fn feasibility_conditions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED + 10);
    let mut ins = (0, 0);
    while ins.0 < 60 {
        let n = rng.gen_range(4..=10);
        let g = random_connected(&mut rng, n, 0.15, None);
        let Some((e, _)) = g.edges().find(|(e, _)| {
            let (a, b) = e.endpoints();
            let (du, dv) = (g.degree(a).min(g.degree(b)), g.degree(a).max(g.degree(b)));
            dv < 2 * du + 1 && exact_value(&g, *e).expect("connected").sign() != Sign::Positive
        }) else {
            continue;
        };
        let inst = Instance::new(g, e, ProblemVariant::UW_RT_INS_NTP).expect("nonpositive curvature");
        ins.0 += 1;
        ins.1 += usize::from(!feasible_by_saturation(&inst).expect("supported").feasible);
    }
    let mut del = (0, 0);
    let mut unflipped = Vec::new();
    while del.0 < 60 {
        let eta = rng.gen_range(0..=3);
        let pv = (3 * eta) / 2 + 5 - eta + rng.gen_range(0..=2);
        let pu = rng.gen_range(0..=pv.min(4));
        let (extra, p) = (rng.gen_range(0..=2), rng.gen_range(0.3..0.9));
        let g = deletion_graph(&mut rng, eta, pu, pv, extra, p);
        let e = EdgeRef::new(0, 1).expect("distinct");
        let dv = g.degree(0).max(g.degree(1));
        if 2 * dv <= 3 * eta + 10 {
            continue;
        }
        let Ok(inst) = Instance::new(g, e, ProblemVariant::UW_RT_DEL_PTN) else { continue };
        del.0 += 1;
        let sat = feasible_by_saturation(&inst).expect("supported");
        if !sat.feasible && unflipped.len() < 3 {
            let saturated = inst.apply(&inst.edits_from(inst.permissible_edits())).expect("permissible");
            let after = exact_value(&saturated, e).expect("connected");
            unflipped.push(format!(
                "eta={eta} deg(u)={} deg(v)={} EMD after {}/{}",
                inst.graph.degree(0),
                inst.graph.degree(1),
                after.delta,
                after.q
            ));
        }
        del.1 += usize::from(!sat.feasible);
    }
    outcome(
        ins.1 == 0 && del.1 == 0,
        format!(
            "saturation conditions: insertion {} instances, {} not flipped; deletion {} instances, {} not flipped {unflipped:?}",
            ins.0, ins.1, del.0, del.1
        ),
    )
}

fn canonicalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED + 11);
    let (mut checked, mut cost_changes, mut group_breaks, mut count_mismatch, mut with_gap) = (0, 0, 0, 0, 0);
    let mut observed = BTreeSet::new();
    for _ in 0..150 {
        let n = rng.gen_range(3..=8);
        let p = rng.gen_range(0.1..0.5);
        let g = random_connected(&mut rng, n, p, None);
        for (e, _) in g.edges() {
            let (pair, cm) = build_cost_matrix(&g, e).expect("connected");
            let bm = blow_up(&cm).expect("small");
            if bm.q > 8 {
                continue;
            }
            let best = enumerate_matchings(&bm.costs, 8).expect("q <= 8").map(|m| m.cost).min().expect("q >= 1");
            let offsets = common_offsets(&pair);
            for m in enumerate_matchings(&bm.costs, 8).expect("q <= 8").filter(|m| m.cost == best) {
                checked += 1;
                let c = canonicalize_matching(&bm, &m, &offsets).expect("min-cost input");
                cost_changes += usize::from(c.cost != m.cost);
                let grouped = offsets.iter().all(|&j| {
                    let rows = bm.row_block(bm.r - 1 - j);
                    bm.col_block(bm.s - 1 - j)
                        .all(|col| c.pairs().any(|(row, cc)| cc == col && rows.contains(&row) && bm.costs[(row, cc)] == 0))
                });
                group_breaks += usize::from(!grouped);
                let twos = class_counts(&bm.costs, &bm.touchable, &c).expect("entries in 0..=3").n2_untouchable;
                observed.insert((bm.a - bm.b, twos));
                with_gap += usize::from(bm.a > bm.b);
                count_mismatch += usize::from(twos != 2 * (bm.a - bm.b));
            }
        }
    }
    outcome(
        cost_changes == 0 && group_breaks == 0 && count_mismatch == 0,
        format!(
            "canonicalization: {checked} min-cost matchings ({with_gap} with a > b), {cost_changes} cost changes, {group_breaks} broken groups, {count_mismatch} with untouchable 2-edges != 2(a-b); observed (a-b, count) pairs {observed:?}"
        ),
    )
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let (c1, c2) = route_equivalence();
    results.push((1, c1));
    results.push((2, c2));
    results.push((3, blocker_fixture()));
    results.push((4, maxcov_fixture()));
    results.push((5, setcover_fixture()));
    let cases = spade_cases();
    results.push((6, greedy_ratio(&cases)));
    results.push((7, tightness()));
    results.push((8, randomized_success(&cases)));
    results.push((9, ewpm_agreement()));
    results.push((10, feasibility_conditions()));
    results.push((11, canonicalization()));

    let mut failed = 0;
    for (n, o) in &results {
        println!("[{}] {n} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of {} criteria passed in {:.1?}", results.len() - failed, results.len(), started.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
