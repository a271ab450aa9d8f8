//! Exhaustive search for minimum edit sets; exponential, for small instances.

use itertools::Itertools;

use super::{exact_value, Instance, Method, Solution};
use crate::curvature::{blow_up, CostMatrix};
use crate::error::{Error, Result};
use crate::matching::min_cost_value;

/// Default limit on the number of candidate sets examined.
pub const DEFAULT_BRUTE_BUDGET: u128 = 5_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

fn check_budget(n: usize, max_k: usize, budget: u128) -> Result<()> {
    let needed: u128 = (1..=max_k.min(n)).map(|k| binomial(n, k)).sum();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Smallest edit set of size at most `max_k` that flips the sign; sets of
/// equal size are tried in lexicographic order. `None` when there is none.
pub fn brute_force_opt(inst: &Instance, max_k: usize) -> Result<Option<Solution>> {
    brute_force_opt_with_budget(inst, max_k, DEFAULT_BRUTE_BUDGET)
}

pub fn brute_force_opt_with_budget(inst: &Instance, max_k: usize, budget: u128) -> Result<Option<Solution>> {
    let candidates = inst.permissible_edits();
    check_budget(candidates.len(), max_k, budget)?;
    for k in 1..=max_k.min(candidates.len()) {
        for subset in candidates.iter().copied().combinations(k) {
            let edits = inst.edits_from(subset);
            let g = inst.apply(&edits)?;
            if inst.is_flipped(&exact_value(&g, inst.edge)?) {
                let mut sol = inst.certify(edits, Method::Brute)?;
                sol.optimal = Some(true);
                return Ok(Some(sol));
            }
        }
    }
    Ok(None)
}

/// Fewest touchable entries of weight at least 2 that, lowered to 1 with no
/// other effect, bring the blow-up's min-cost matching below `q`.
pub fn brute_force_drops(cm: &CostMatrix, max_k: usize) -> Result<Option<Vec<(usize, usize)>>> {
    brute_force_drops_with_budget(cm, max_k, DEFAULT_BRUTE_BUDGET)
}

pub fn brute_force_drops_with_budget(cm: &CostMatrix, max_k: usize, budget: u128) -> Result<Option<Vec<(usize, usize)>>> {
    let base = blow_up(cm)?;
    let q = base.q as i64;
    let cells: Vec<(usize, usize)> = (0..cm.r())
        .flat_map(|i| (0..cm.s()).map(move |j| (i, j)))
        .filter(|&c| cm.touchable[c] && cm.costs[c] >= 2)
        .collect();
    check_budget(cells.len(), max_k, budget)?;
    if min_cost_value(&base.costs) < q {
        return Ok(Some(Vec::new()));
    }
    for k in 1..=max_k.min(cells.len()) {
        for subset in cells.iter().copied().combinations(k) {
            let mut next = cm.clone();
            for &c in &subset {
                next.costs[c] = 1;
            }
            if min_cost_value(&blow_up(&next)?.costs) < q {
                return Ok(Some(subset));
            }
        }
    }
    Ok(None)
}
