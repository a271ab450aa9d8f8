//! Deterministic greedy: keep one min-cost matching of the blow-up fixed and
//! lower its matched touchable edges to weight 1, 3-edges first, until its
//! cost falls below `q`.

use super::{Instance, Method, ProblemVariant, Solution};
use crate::curvature::{
    blow_up, blow_up_with_cap, build_cost_matrix, canonicalize_matching, BlowUpMatrix, CostMatrix, DEFAULT_BLOWUP_CAP,
};
use crate::error::{Error, Result};
use crate::graph::EdgeRef;
use crate::matching::{matching_cost, min_cost_perfect_matching, Matching};

use super::propagation::weight_propagation;

/// Offsets `j` whose row `r - 1 - j` and column `s - 1 - j` carry the same node.
fn shared_offsets(cm: &CostMatrix) -> Vec<usize> {
    (0..cm.r().min(cm.s()))
        .take_while(|&j| cm.row_nodes[cm.r() - 1 - j] == cm.col_nodes[cm.s() - 1 - j])
        .collect()
}

/// Checks `start` is min-cost on `bm` and canonicalizes it.
fn canonical_start(cm: &CostMatrix, bm: &BlowUpMatrix, start: &Matching) -> Result<Matching> {
    let cost = matching_cost(&bm.costs, &start.assignment)?;
    let best = min_cost_perfect_matching(&bm.costs).cost;
    if cost != best {
        return Err(Error::Argument(format!("start matching has cost {cost}, minimum is {best}")));
    }
    canonicalize_matching(bm, start, &shared_offsets(cm))
}

/// Runs the drop loop; `drop` lowers cell `(i, j)` and returns the updated matrix.
fn greedy_core(
    cm: &CostMatrix,
    bm: &BlowUpMatrix,
    m: &Matching,
    mut drop: impl FnMut(&CostMatrix, usize, usize) -> Result<CostMatrix>,
) -> Result<Vec<(usize, usize)>> {
    let q = bm.q as i64;
    let mut cur = cm.clone();
    let mut dropped = Vec::new();
    loop {
        let cost: i64 = m.pairs().map(|(x, y)| cur.costs[bm.block_of(x, y)]).sum();
        if cost < q {
            return Ok(dropped);
        }
        let pick = |w: i64| {
            m.pairs().map(|(x, y)| bm.block_of(x, y)).find(|&c| cur.touchable[c] && cur.costs[c] == w)
        };
        let Some((i, j)) = pick(3).or_else(|| pick(2)) else {
            return Err(Error::NoSolution(format!(
                "matched cost {cost} stays >= q = {q} with no touchable edge left to lower"
            )));
        };
        cur = drop(&cur, i, j)?;
        dropped.push((i, j));
    }
}

/// Greedy on a bare cost matrix where lowering an entry affects nothing else.
/// Returns the lowered cells in order.
pub fn greedy_drops(cm: &CostMatrix, start: &Matching) -> Result<Vec<(usize, usize)>> {
    let bm = blow_up(cm)?;
    let m = canonical_start(cm, &bm, start)?;
    greedy_core(cm, &bm, &m, |cur, i, j| {
        let mut next = cur.clone();
        next.costs[(i, j)] = 1;
        Ok(next)
    })
}

/// Greedy for `uw-rt-ins-ntp`. `start` must be a min-cost perfect matching of
/// the blow-up; it is canonicalized first. Entries are updated by
/// [`weight_propagation`] after every insertion.
pub fn greedy_insert(inst: &Instance, start: &Matching) -> Result<Solution> {
    greedy_insert_with(inst, Some(start), DEFAULT_BLOWUP_CAP)
}

/// Greedy from the lexicographically smallest min-cost matching.
pub fn greedy_insert_default(inst: &Instance) -> Result<Solution> {
    greedy_insert_with(inst, None, DEFAULT_BLOWUP_CAP)
}

/// [`greedy_insert`] with an explicit blow-up cap; `None` starts from the
/// lexicographically smallest min-cost matching.
pub fn greedy_insert_with(inst: &Instance, start: Option<&Matching>, blowup_cap: usize) -> Result<Solution> {
    if inst.variant != ProblemVariant::UW_RT_INS_NTP {
        return Err(Error::UnsupportedVariant(format!("greedy handles uw-rt-ins-ntp, not {}", inst.variant)));
    }
    let (_, cm) = build_cost_matrix(&inst.graph, inst.edge)?;
    let bm = blow_up_with_cap(&cm, blowup_cap)?;
    let m = match start {
        Some(m) => canonical_start(&cm, &bm, m)?,
        None => canonical_start(&cm, &bm, &min_cost_perfect_matching(&bm.costs))?,
    };
    let mut g = inst.graph.clone();
    let mut edges = Vec::new();
    greedy_core(&cm, &bm, &m, |cur, i, j| {
        let e = EdgeRef::new(cur.row_nodes[i], cur.col_nodes[j])?;
        let next = weight_propagation(&g, cur, e)?;
        g = g.insert_edges([(e, 1)])?;
        edges.push(e);
        Ok(next)
    })?;
    inst.certify(inst.edits_from(edges), Method::Greedy)
}
