//! Matchings with prescribed cost and prescribed counts of 3-edges and
//! touchable 2-edges, for cost matrices with entries in `{0, 1, 2, 3}`.
//!
//! Weights are flipped to `4 - w`. A flipped 1-edge (original 3) is then
//! priced `K1` and a flipped touchable 2-edge priced `K2`, so a matching with
//! cost `x`, `k` 3-edges and `l` touchable 2-edges has shifted weight
//! `K1*k + K2*l + (4q - x - k - 2l)`. The gaps between `K1`, `K2` and the
//! unit part make that value determine `(x, k, l)`. Internally the three
//! parts are kept as separate indeterminates, which is the same encoding with
//! a far smaller interpolation grid.

use serde::{Deserialize, Serialize};

use super::ewpm::{extract_witness, generating_poly, random_scalars, DigitMatrix, EwpmConfig, Poly};
use super::{min_cost_perfect_matching, Matching};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeClassCounts {
    pub n0: usize,
    pub n1: usize,
    pub n2_touchable: usize,
    pub n2_untouchable: usize,
    pub n3: usize,
}

impl EdgeClassCounts {
    pub fn total(&self) -> usize {
        self.n0 + self.n1 + self.n2_touchable + self.n2_untouchable + self.n3
    }

    pub fn cost(&self) -> i64 {
        (self.n1 + 2 * (self.n2_touchable + self.n2_untouchable) + 3 * self.n3) as i64
    }
}

fn check_regime(costs: &Matrix<i64>, touchable: &Matrix<bool>) -> Result<()> {
    if !costs.is_square() || touchable.rows() != costs.rows() || touchable.cols() != costs.cols() {
        return Err(Error::Argument("cost matrix and touchable mask must be square and equal-sized".into()));
    }
    if costs.iter().any(|&c| !(0..=3).contains(&c)) {
        return Err(Error::Argument("class counts need cost entries in 0..=3".into()));
    }
    Ok(())
}

pub fn class_counts(costs: &Matrix<i64>, touchable: &Matrix<bool>, m: &Matching) -> Result<EdgeClassCounts> {
    check_regime(costs, touchable)?;
    super::matching_cost(costs, &m.assignment)?;
    let mut c = EdgeClassCounts::default();
    for (i, j) in m.pairs() {
        match costs[(i, j)] {
            0 => c.n0 += 1,
            1 => c.n1 += 1,
            2 if touchable[(i, j)] => c.n2_touchable += 1,
            2 => c.n2_untouchable += 1,
            _ => c.n3 += 1,
        }
    }
    Ok(c)
}

/// `(K1, K2)` with `K2 = 4q^2 + 1` and `K1 = 4q^2 * K2 + 1`.
pub fn k_constants(q: usize) -> (u128, u128) {
    let f = 4 * (q as u128) * (q as u128);
    let k2 = f + 1;
    (f * k2 + 1, k2)
}

/// Shifted target weight for cost `x` with `k` 3-edges and `l` touchable 2-edges.
pub fn shifted_target(q: usize, x: i64, k: usize, l: usize) -> Option<u128> {
    let (k1, k2) = k_constants(q);
    let units = units_part(q, x, k, l)?;
    Some(k1 * k as u128 + k2 * l as u128 + u128::from(units))
}

fn units_part(q: usize, x: i64, k: usize, l: usize) -> Option<u32> {
    let q1 = 4 * q as i64 - x;
    u32::try_from(q1 - k as i64 - 2 * l as i64).ok()
}

/// Per-cell exponents `(units, 3-edge marker, touchable 2-edge marker)`.
fn digit_matrix(costs: &Matrix<i64>, touchable: &Matrix<bool>) -> DigitMatrix {
    let n = costs.rows();
    let part = |which: usize| {
        Matrix::from_fn(n, n, |i, j| {
            let d = match (costs[(i, j)], touchable[(i, j)]) {
                (3, _) => [0, 1, 0],
                (2, true) => [0, 0, 1],
                (c, _) => [(4 - c) as u32, 0, 0],
            };
            d[which]
        })
    };
    DigitMatrix::new(vec![part(0), part(1), part(2)])
}

/// Answers many `(x, k, l)` queries on one matrix, caching one generating
/// polynomial per trial.
pub struct CountOracle {
    costs: Matrix<i64>,
    touchable: Matrix<bool>,
    digits: DigitMatrix,
    config: EwpmConfig,
    polys: Vec<(Matrix<u64>, Poly)>,
    best: Matching,
    best_counts: EdgeClassCounts,
    threes: usize,
    touchable_twos: usize,
}

impl CountOracle {
    pub fn new(costs: &Matrix<i64>, touchable: &Matrix<bool>, config: EwpmConfig) -> Result<Self> {
        check_regime(costs, touchable)?;
        let best = min_cost_perfect_matching(costs);
        let best_counts = class_counts(costs, touchable, &best)?;
        let threes = costs.iter().filter(|&&c| c == 3).count();
        let touchable_twos = costs.iter().zip(touchable.iter()).filter(|(&c, &t)| c == 2 && t).count();
        Ok(Self {
            costs: costs.clone(),
            touchable: touchable.clone(),
            digits: digit_matrix(costs, touchable),
            config,
            polys: Vec::new(),
            best,
            best_counts,
            threes,
            touchable_twos,
        })
    }

    pub fn q(&self) -> usize {
        self.costs.rows()
    }

    pub fn min_cost(&self) -> &Matching {
        &self.best
    }

    fn self_certified(&self, x: i64, k: usize, l: usize) -> bool {
        x == self.best.cost && k == self.best_counts.n3 && l == self.best_counts.n2_touchable
    }

    fn trivially_absent(&self, x: i64, k: usize, l: usize) -> bool {
        x < self.best.cost || k > self.threes || l > self.touchable_twos || k + l > self.q() || units_part(self.q(), x, k, l).is_none()
    }

    fn poly(&mut self, trial: usize) -> Result<&(Matrix<u64>, Poly)> {
        while self.polys.len() <= trial {
            let t = self.polys.len() as u64;
            let scalars = random_scalars(self.q(), self.config.seed, t);
            let poly = generating_poly(&self.digits, &scalars, self.config.max_grid)?;
            self.polys.push((scalars, poly));
        }
        Ok(&self.polys[trial])
    }

    fn target(&self, x: i64, k: usize, l: usize) -> Option<[u32; 3]> {
        Some([units_part(self.q(), x, k, l)?, k as u32, l as u32])
    }

    /// Whether a matching with cost `x`, `k` 3-edges and `l` touchable 2-edges exists.
    /// `true` is always correct; `false` may be wrong with tiny probability.
    pub fn exists(&mut self, x: i64, k: usize, l: usize) -> Result<bool> {
        if self.self_certified(x, k, l) {
            return Ok(true);
        }
        if self.trivially_absent(x, k, l) {
            return Ok(false);
        }
        let target = self.target(x, k, l).expect("checked above");
        for trial in 0..self.config.trials {
            if self.poly(trial)?.1.is_supported(&target) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// A verified witness for `(x, k, l)`, if one is found.
    pub fn find(&mut self, x: i64, k: usize, l: usize) -> Result<Option<Matching>> {
        if self.self_certified(x, k, l) {
            return Ok(Some(self.best.clone()));
        }
        if self.trivially_absent(x, k, l) {
            return Ok(None);
        }
        let target = self.target(x, k, l).expect("checked above");
        for trial in 0..self.config.trials {
            let max_grid = self.config.max_grid;
            let (scalars, poly) = self.poly(trial)?;
            if !poly.is_supported(&target) {
                continue;
            }
            let scalars = scalars.clone();
            if let Some(assignment) = extract_witness(&self.digits, &scalars, &target, max_grid)? {
                let m = Matching::from_assignment(&self.costs, assignment)?;
                let c = class_counts(&self.costs, &self.touchable, &m)?;
                if m.cost != x || c.n3 != k || c.n2_touchable != l {
                    return Err(Error::Verification(format!(
                        "witness has cost {} with counts {c:?}, wanted ({x}, {k}, {l})",
                        m.cost
                    )));
                }
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

/// One-shot form of [`CountOracle::find`].
#[allow(clippy::too_many_arguments)]
pub fn matching_with_counts(
    costs: &Matrix<i64>,
    touchable: &Matrix<bool>,
    x: i64,
    k: usize,
    l: usize,
    trials: usize,
    seed: u64,
) -> Result<Option<Matching>> {
    CountOracle::new(costs, touchable, EwpmConfig::new(trials, seed))?.find(x, k, l)
}
