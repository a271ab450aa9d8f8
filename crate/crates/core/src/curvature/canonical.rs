//! Exchange argument that routes the shared mass of common nodes at zero cost.

use super::{BlowUpMatrix, NeighborhoodPair};
use crate::error::{Error, Result};
use crate::matching::{matching_cost, min_cost_perfect_matching, Matching};

/// Offsets `j` of all nodes shared by both neighborhoods: `v`, `u`, then the
/// common neighbors from the last one backwards.
pub fn common_offsets(pair: &NeighborhoodPair) -> Vec<usize> {
    (0..pair.eta() + 2).collect()
}

/// Rewrites a min-cost perfect matching so that, for every offset `j` in
/// `common`, all `b` copies of column block `s - 1 - j` are matched inside
/// row block `r - 1 - j`.
///
/// Each exchange replaces `(x, c)`, `(x', c')` by `(x', c)`, `(x, c')` where
/// `x'` and `c` are copies of the same node, which cannot raise the cost by the
/// triangle inequality. Input that is not min-cost is rejected.
pub fn canonicalize_matching(bm: &BlowUpMatrix, m: &Matching, common: &[usize]) -> Result<Matching> {
    let cost = matching_cost(&bm.costs, &m.assignment)?;
    let best = min_cost_perfect_matching(&bm.costs).cost;
    if cost != best {
        return Err(Error::Argument(format!("matching of cost {cost} is not min-cost ({best})")));
    }
    let mut row_to_col = m.assignment.clone();
    let mut col_to_row = vec![0usize; bm.q];
    for (i, &c) in row_to_col.iter().enumerate() {
        col_to_row[c] = i;
    }
    for &j in common {
        if j >= bm.r.min(bm.s) {
            return Err(Error::Argument(format!("offset {j} outside the shared tail")));
        }
        let (bi, bj) = (bm.r - 1 - j, bm.s - 1 - j);
        let rows = bm.row_block(bi);
        let cols = bm.col_block(bj);
        if bm.costs[(rows.start, cols.start)] != 0 {
            return Err(Error::Argument(format!("offset {j} does not pair a node with itself")));
        }
        for c in cols.clone() {
            let x = col_to_row[c];
            if rows.contains(&x) {
                continue;
            }
            let x2 = rows
                .clone()
                .find(|&y| !cols.contains(&row_to_col[y]))
                .expect("a >= b leaves a row of the block matched outside");
            let c2 = row_to_col[x2];
            row_to_col[x2] = c;
            col_to_row[c] = x2;
            row_to_col[x] = c2;
            col_to_row[c2] = x;
        }
    }
    let new_cost = matching_cost(&bm.costs, &row_to_col)?;
    if new_cost != cost {
        return Err(Error::Verification(format!("exchange changed cost {cost} -> {new_cost}")));
    }
    Ok(Matching { assignment: row_to_col, cost: new_cost })
}
