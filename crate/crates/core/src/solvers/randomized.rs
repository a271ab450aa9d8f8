//! Randomized solver for `uw-rt-ins-ntp`.
//!
//! For every cost `x` from `mcpm` up, find a cost-`x` matching of the blow-up
//! with the most 3-edges (then the most touchable 2-edges) among those whose
//! edges can still be lowered below `q`, score it by `kappa_hat`, and keep the
//! best score, breaking ties toward smaller `x`. The chosen matching's selected
//! edges name blocks, and the blocks name the graph edges to insert.

use super::kappa::{kappa_hat, KappaState};
use super::{Instance, Method, ProblemVariant, Solution};
use crate::curvature::{blow_up_with_cap, build_cost_matrix, DEFAULT_BLOWUP_CAP};
use crate::error::{Error, Result};
use crate::graph::EdgeRef;
use crate::matching::{min_cost_perfect_matching, CountOracle, EdgeClassCounts, EwpmConfig, DEFAULT_TRIALS};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomizedConfig {
    pub seed: u64,
    pub trials: usize,
    pub blowup_cap: usize,
}

impl RandomizedConfig {
    pub fn new(seed: u64) -> Self {
        Self { seed, trials: DEFAULT_TRIALS, blowup_cap: DEFAULT_BLOWUP_CAP }
    }
}

pub fn randomized_insert(inst: &Instance, seed: u64) -> Result<Solution> {
    randomized_insert_with(inst, &RandomizedConfig::new(seed))
}

pub fn randomized_insert_with(inst: &Instance, config: &RandomizedConfig) -> Result<Solution> {
    if inst.variant != ProblemVariant::UW_RT_INS_NTP {
        return Err(Error::UnsupportedVariant(format!("randomized solver handles uw-rt-ins-ntp, not {}", inst.variant)));
    }
    let (_, cm) = build_cost_matrix(&inst.graph, inst.edge)?;
    let bm = blow_up_with_cap(&cm, config.blowup_cap)?;
    let q = bm.q;
    let mcpm = min_cost_perfect_matching(&bm.costs).cost;
    let rho = mcpm - q as i64;

    if rho == 0 {
        for e in inst.permissible_edits() {
            if let Ok(sol) = inst.certify(inst.edits_from(vec![e]), Method::Randomized) {
                return Ok(sol);
            }
        }
    }

    let mut oracle = CountOracle::new(
        &bm.costs,
        &bm.touchable,
        EwpmConfig { trials: config.trials, seed: config.seed, ..EwpmConfig::default() },
    )?;
    let x_max = -min_cost_perfect_matching(&bm.costs.map(|c| -c)).cost;
    let mut candidates: Vec<(usize, KappaState, usize, usize)> = Vec::new();
    for x in mcpm..=x_max.min(3 * q as i64) {
        'search: for k in (0..=q).rev() {
            for l in (0..=q - k).rev() {
                let counts = EdgeClassCounts { n3: k, n2_touchable: l, ..Default::default() };
                let state = kappa_hat(&counts, x, mcpm, rho);
                let Some(total) = state.total() else { continue };
                if oracle.exists(x, k, l)? {
                    candidates.push((total, state, k, l));
                    break 'search;
                }
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::NoSolution("no matching of the blow-up can be lowered below q".into()));
    }
    candidates.sort_by_key(|&(total, state, _, _)| (total, state.x));

    for (_, state, k, l) in candidates {
        let Some(m) = oracle.find(state.x, k, l)? else { continue };
        let edges = selected_edges(&cm.row_nodes, &cm.col_nodes, &bm.costs, &bm.touchable, bm.a, bm.b, &m.assignment, &state)?;
        let mut sol = inst.certify(inst.edits_from(edges), Method::Randomized)?;
        sol.kappa = Some(state);
        return Ok(sol);
    }
    Err(Error::RetryExhausted(format!("no witness extracted in {} trials", config.trials)))
}

/// Graph edges behind the selected matched edges: the first `kappa3`
/// 3-edges, or all 3-edges and the first `kappa2` touchable 2-edges.
#[allow(clippy::too_many_arguments)]
fn selected_edges(
    row_nodes: &[usize],
    col_nodes: &[usize],
    costs: &Matrix<i64>,
    touchable: &Matrix<bool>,
    a: usize,
    b: usize,
    assignment: &[usize],
    state: &KappaState,
) -> Result<Vec<EdgeRef>> {
    let pairs = || assignment.iter().copied().enumerate().filter(|&c| touchable[c]);
    let threes = pairs().filter(|&c| costs[c] == 3);
    let twos = pairs().filter(|&c| costs[c] == 2);
    let chosen: Vec<(usize, usize)> = if state.kappa2 == 0 {
        threes.take(state.kappa3).collect()
    } else {
        threes.chain(twos.take(state.kappa2)).collect()
    };
    if chosen.len() != state.kappa3 + state.kappa2 {
        return Err(Error::Verification("witness lacks the selected edge classes".into()));
    }
    chosen
        .into_iter()
        .map(|(x, y)| EdgeRef::new(row_nodes[x / a], col_nodes[y / b]))
        .collect()
}
