use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use ricci_core::curvature::{
    blow_up_with_cap, build_cost_matrix, emd_via_flow, emd_via_matching, ricci_with, CurvatureOptions, Route,
    DEFAULT_BLOWUP_CAP,
};
use ricci_core::gadgets::{gen_blocker, gen_maxcov, gen_setcover, gen_tightness, GadgetDescriptor};
use ricci_core::graph::random::random_connected;
use ricci_core::graph::{format_edge_list, parse_edge_list};
use ricci_core::matching::enumerate_matchings;
use ricci_core::report::{CurvatureRecord, RationalRecord, SolutionRecord};
use ricci_core::solvers::{
    brute_force_drops, brute_force_opt, exact_value, feasible_by_saturation, greedy_drops, greedy_insert_with,
    randomized_insert_with, Instance, ProblemVariant, RandomizedConfig, Solution,
};
use ricci_core::{EdgeRef, Graph, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{CurvatureArgs, FeasibleArgs, Failure, GadgetArgs, GadgetCommand, MethodArg, OracleArgs, RouteArg, SolveArgs, StartArg};

type Outcome = std::result::Result<(), Failure>;

const CAP_VAR: &str = "RICCI_BLOWUP_CAP";

/// Largest enumeration the oracle check attempts.
const ENUMERATION_LIMIT: usize = 8;

fn blowup_cap() -> Result<usize, Failure> {
    match std::env::var(CAP_VAR) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{CAP_VAR} must be a positive integer, got {text:?}"))),
        Err(_) => Ok(DEFAULT_BLOWUP_CAP),
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_edge_list(&text)?)
}

fn edge_refs(flat: &[usize]) -> Result<Vec<EdgeRef>, Failure> {
    flat.chunks(2).map(|p| EdgeRef::new(p[0], p[1]).map_err(Failure::from)).collect()
}

fn single_edge(flat: &[usize]) -> Result<EdgeRef, Failure> {
    match edge_refs(flat)?.as_slice() {
        [e] => Ok(*e),
        _ => Err(Failure::usage("expected exactly one --edge U V")),
    }
}

fn print_json<T: Serialize>(value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::verification(e.to_string()))?;
    emit(&(text + "\n"))
}

/// Writes to stdout; a closed pipe downstream is not an error.
fn emit(text: &str) -> Outcome {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::usage(format!("cannot write output: {e}"))),
        _ => Ok(()),
    }
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

pub fn curvature(args: &CurvatureArgs) -> Outcome {
    let g = load_graph(&args.path)?;
    let edges = if args.all {
        g.edges().map(|(e, _)| e).collect()
    } else if args.edge.is_empty() {
        return Err(Failure::usage("give --all or at least one --edge U V"));
    } else {
        edge_refs(&args.edge)?
    };
    let route = match args.route {
        RouteArg::Matching => Route::Matching,
        RouteArg::Flow => Route::Flow,
    };
    let options = CurvatureOptions { route, blowup_cap: blowup_cap()? };
    let record = |e: &EdgeRef| -> Value {
        let (a, b) = e.endpoints();
        match ricci_with::<Rational>(&g, *e, &options).and_then(|r| CurvatureRecord::new(&r)) {
            Ok(r) => serde_json::to_value(r).expect("records serialize"),
            Err(err) => json!({ "edge": [a, b], "error": err.to_string() }),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let records: Vec<Value> = pool.install(|| edges.par_iter().map(record).collect());
    print_json(&records)
}

/// Recomputes the curvature after `sol` independently of the solver.
fn check_solution(inst: &Instance, sol: &Solution) -> Outcome {
    let value = exact_value(&inst.apply(&sol.edits)?, inst.edge)?;
    if !sol.verified || !inst.is_flipped(&value) {
        return Err(Failure::verification(format!("{:?} returned edits that do not flip the sign", sol.method)));
    }
    Ok(())
}

pub fn solve(args: &SolveArgs) -> Outcome {
    if let Some(m) = args.tightness {
        return solve_tightness(args, m);
    }
    let path = args.path.as_deref().ok_or_else(|| Failure::usage("missing edge-list path"))?;
    let g = load_graph(path)?;
    let edge = single_edge(&args.edge)?;
    let variant: ProblemVariant = args.variant.as_deref().unwrap_or_default().parse()?;
    let inst = Instance::new(g, edge, variant)?;
    let cap = blowup_cap()?;
    let sol = match args.method {
        MethodArg::Greedy => greedy_insert_with(&inst, None, cap)?,
        MethodArg::Randomized => {
            let seed = args.seed.ok_or_else(|| Failure::usage("--seed is required for the randomized method"))?;
            randomized_insert_with(&inst, &RandomizedConfig { blowup_cap: cap, ..RandomizedConfig::new(seed) })?
        }
        MethodArg::Brute => brute_force_opt(&inst, args.max_k)?.ok_or_else(|| {
            Failure::infeasible(format!("no edit set of size <= {} flips the sign of {edge}", args.max_k))
        })?,
    };
    check_solution(&inst, &sol)?;
    print_json(&SolutionRecord::new(&sol)?)
}

fn solve_tightness(args: &SolveArgs, m: usize) -> Outcome {
    let t = gen_tightness(m)?;
    let drops = match args.method {
        MethodArg::Greedy => {
            let start = match args.start {
                StartArg::Adversarial => &t.adversarial,
                StartArg::Optimal => &t.optimal,
            };
            greedy_drops(&t.matrix, start)?
        }
        MethodArg::Brute => brute_force_drops(&t.matrix, args.max_k)?
            .ok_or_else(|| Failure::infeasible(format!("no drop set of size <= {}", args.max_k)))?,
        MethodArg::Randomized => return Err(Failure::usage("the tightness matrix supports greedy and brute only")),
    };
    let method = match args.method {
        MethodArg::Greedy => "greedy",
        _ => "brute",
    };
    print_json(&json!({
        "tightness": m,
        "method": method,
        "start": (args.method == MethodArg::Greedy).then(|| format!("{:?}", args.start).to_lowercase()),
        "drops": drops,
        "count": drops.len(),
    }))
}

pub fn feasible(args: &FeasibleArgs) -> Outcome {
    let g = load_graph(&args.path)?;
    let edge = single_edge(&args.edge)?;
    let inst = Instance::new(g, edge, args.variant.parse()?)?;
    let sat = feasible_by_saturation(&inst)?;
    if let Some(sol) = &sat.solution {
        check_solution(&inst, sol)?;
    }
    let solution = sat.solution.as_ref().map(SolutionRecord::new).transpose()?;
    print_json(&json!({ "feasible": sat.feasible, "conclusive": sat.conclusive, "solution": solution }))
}

fn parse_sets(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';')
        .map(|set| {
            set.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| Failure::usage(format!("bad element {s:?} in --sets"))))
                .collect()
        })
        .collect()
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let bad = || Failure::usage(format!("bad pair {pair:?} in --edges; expected left-right"));
            let (l, r) = pair.split_once('-').ok_or_else(bad)?;
            Ok((l.trim().parse().map_err(|_| bad())?, r.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

#[derive(Serialize)]
struct Sidecar<'a> {
    #[serde(flatten)]
    descriptor: &'a GadgetDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge: Option<[usize; 2]>,
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

pub fn gadget(args: &GadgetArgs) -> Outcome {
    let (body, descriptor, edge) = match &args.kind {
        GadgetCommand::Maxcov { universe, sets, kappa } => {
            let (g, e, d) = gen_maxcov(*universe, &parse_sets(sets)?, *kappa)?;
            (format_edge_list(&g), d, Some(e))
        }
        GadgetCommand::Blocker { n, edges } => {
            let (g, e, d) = gen_blocker(*n, &parse_pairs(edges)?)?;
            (format_edge_list(&g), d, Some(e))
        }
        GadgetCommand::Setcover { universe, sets, heavy } => {
            let (g, e, d) = gen_setcover(*universe, &parse_sets(sets)?, *heavy)?;
            (format_edge_list(&g), d, Some(e))
        }
        GadgetCommand::Tightness { m } => {
            let t = gen_tightness(*m)?;
            let body = json!({
                "costs": t.matrix.costs.to_rows(),
                "row_nodes": t.matrix.row_nodes,
                "col_nodes": t.matrix.col_nodes,
                "u": t.matrix.u,
                "v": t.matrix.v,
                "adversarial": t.adversarial,
                "optimal": t.optimal,
            });
            let text = serde_json::to_string_pretty(&body).map_err(|e| Failure::verification(e.to_string()))?;
            (text + "\n", t.descriptor, None)
        }
    };
    let sidecar = Sidecar { descriptor: &descriptor, edge: edge.map(|e| e.endpoints().into()) };
    let sidecar = serde_json::to_string_pretty(&sidecar).map_err(|e| Failure::verification(e.to_string()))?;
    match &args.out {
        Some(out) => {
            write_file(out, &body)?;
            write_file(&sidecar_path(out), &(sidecar + "\n"))
        }
        None => {
            eprintln!("{sidecar}");
            emit(&body)
        }
    }
}

#[derive(Serialize)]
struct Mismatch {
    graph: usize,
    edge: [usize; 2],
    matching: RationalRecord,
    flow: RationalRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumeration: Option<RationalRecord>,
}

#[derive(Default, Serialize)]
struct OracleReport {
    graphs: usize,
    edges: usize,
    enumerated: usize,
    skipped: Vec<Value>,
    mismatches: Vec<Mismatch>,
}

impl OracleReport {
    fn check_graph(&mut self, index: usize, g: &Graph, cap: usize) -> Result<(), Failure> {
        self.graphs += 1;
        for (e, _) in g.edges() {
            self.edges += 1;
            let (a, b) = e.endpoints();
            let skip = |reason: String| json!({ "graph": index, "edge": [a, b], "reason": reason });
            let (_, cm) = match build_cost_matrix(g, e) {
                Ok(x) => x,
                Err(err) => {
                    self.skipped.push(skip(err.to_string()));
                    continue;
                }
            };
            let bm = match blow_up_with_cap(&cm, cap) {
                Ok(bm) => bm,
                Err(err) => {
                    self.skipped.push(skip(err.to_string()));
                    continue;
                }
            };
            let (by_matching, _) = emd_via_matching::<Rational>(&bm)?;
            let (by_flow, _) = emd_via_flow::<Rational>(&cm)?;
            let by_enumeration = if bm.q <= ENUMERATION_LIMIT {
                self.enumerated += 1;
                let best = enumerate_matchings(&bm.costs, ENUMERATION_LIMIT)?.map(|m| m.cost).min().unwrap_or(0);
                Some(Rational::new(best.into(), (bm.q as i64).into()))
            } else {
                None
            };
            let agree = by_matching == by_flow && by_enumeration.as_ref().is_none_or(|x| *x == by_matching);
            if !agree {
                self.mismatches.push(Mismatch {
                    graph: index,
                    edge: [a, b],
                    matching: RationalRecord::new(&by_matching)?,
                    flow: RationalRecord::new(&by_flow)?,
                    enumeration: by_enumeration.as_ref().map(RationalRecord::new).transpose()?,
                });
            }
        }
        Ok(())
    }
}

pub fn oracle_check(args: &OracleArgs) -> Outcome {
    let cap = blowup_cap()?;
    let mut report = OracleReport::default();
    if let Some(path) = &args.path {
        report.check_graph(0, &load_graph(path)?, cap)?;
    } else {
        let [max_n, trials, seed] = args.random[..] else {
            return Err(Failure::usage("--random takes N TRIALS SEED"));
        };
        if max_n < 2 {
            return Err(Failure::usage("--random needs N >= 2"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..trials as usize {
            let n = rng.gen_range(2..=max_n as usize);
            let p = rng.gen_range(0.1..0.6);
            let weight = rng.gen_bool(0.5).then(|| rng.gen_range(2..=5));
            let g = random_connected(&mut rng, n, p, weight);
            report.check_graph(i, &g, cap)?;
        }
    }
    print_json(&report)?;
    if report.mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::verification(format!("{} route mismatches", report.mismatches.len())))
    }
}
