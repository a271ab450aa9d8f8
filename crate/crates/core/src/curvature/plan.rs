use std::collections::BTreeMap;

use super::{BlowUpMatrix, CostMatrix};
use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::matching::{matching_cost, Matching};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct PlanEntry<S> {
    pub from: NodeId,
    pub to: NodeId,
    pub mass: S,
}

/// Mass shipped between neighborhood nodes; only positive entries are listed,
/// in row-major order of the cost matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TransportPlan<S> {
    pub entries: Vec<PlanEntry<S>>,
    pub total_cost: S,
    /// Cost-matrix cell and integer units (mass times `q`) per entry.
    pub cells: Vec<(usize, usize, i64)>,
}

impl<S: Scalar> TransportPlan<S> {
    pub(crate) fn from_units(
        cm: &CostMatrix,
        q: i64,
        cost_units: i64,
        cells: impl Iterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        let cells: Vec<(usize, usize, i64)> = cells.collect();
        let mut entries = Vec::with_capacity(cells.len());
        for &(i, j, units) in &cells {
            entries.push(PlanEntry {
                from: cm.row_nodes[i],
                to: cm.col_nodes[j],
                mass: S::from_ratio(i128::from(units), i128::from(q)).ok_or(Error::ScalarRange)?,
            });
        }
        let total_cost = S::from_ratio(i128::from(cost_units), i128::from(q)).ok_or(Error::ScalarRange)?;
        Ok(Self { entries, total_cost, cells })
    }

    /// Checks nonnegativity, row sums `1/r`, column sums `1/s` and the total cost.
    pub fn satisfies_constraints(&self, cm: &CostMatrix) -> bool {
        let q = cm.q() as i64;
        let (a, b) = (q / cm.r() as i64, q / cm.s() as i64);
        let mut rows = vec![0i64; cm.r()];
        let mut cols = vec![0i64; cm.s()];
        let mut cost = 0i64;
        for &(i, j, units) in &self.cells {
            if units < 0 {
                return false;
            }
            rows[i] += units;
            cols[j] += units;
            cost += units * cm.costs[(i, j)];
        }
        let Some(expected) = S::from_ratio(i128::from(cost), i128::from(q)) else {
            return false;
        };
        rows.iter().all(|&x| x == a) && cols.iter().all(|&x| x == b) && expected == self.total_cost
    }
}

/// Aggregates a perfect matching of the blow-up into a plan: each matched
/// pair ships `1/q` between its source cells.
pub fn plan_from_matching<S: Scalar>(cm: &CostMatrix, bm: &BlowUpMatrix, m: &Matching) -> Result<TransportPlan<S>> {
    if bm.r != cm.r() || bm.s != cm.s() {
        return Err(Error::Argument("blow-up does not belong to this cost matrix".into()));
    }
    let cost = matching_cost(&bm.costs, &m.assignment)?;
    let mut units: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (row, col) in m.pairs() {
        *units.entry(bm.block_of(row, col)).or_default() += 1;
    }
    TransportPlan::from_units(cm, bm.q as i64, cost, units.into_iter().map(|((i, j), u)| (i, j, u)))
}
