//! Fewest matched-edge weight drops that push a matching's cost below `q`.
//!
//! Lowering a matched 3-edge to 1 saves 2, a touchable 2-edge saves 1. A
//! matching of cost `x` must save at least `T + 1` with
//! `T = rho + (x - mcpm)`.

use serde::{Deserialize, Serialize};

use crate::matching::EdgeClassCounts;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KappaState {
    pub x: i64,
    pub rho: i64,
    pub kappa3: usize,
    pub kappa2: usize,
    /// No selection of its edges brings the matching below `q`.
    pub unwanted: bool,
}

impl KappaState {
    /// `kappa3 + kappa2`, or `None` for unwanted matchings.
    pub fn total(&self) -> Option<usize> {
        (!self.unwanted).then_some(self.kappa3 + self.kappa2)
    }

    /// The saving the selection must reach: `T + 1`.
    pub fn required_saving(&self, mcpm: i64) -> i64 {
        self.rho + (self.x - mcpm) + 1
    }
}

pub fn kappa_hat(counts: &EdgeClassCounts, x: i64, mcpm: i64, rho: i64) -> KappaState {
    let t = rho + (x - mcpm);
    let n3 = counts.n3 as i64;
    let n2 = counts.n2_touchable as i64;
    let (kappa3, kappa2, unwanted) = if t < 0 {
        (0, 0, false)
    } else if 2 * n3 > t {
        (t / 2 + 1, 0, false)
    } else if 2 * n3 + n2 > t {
        (n3, t - 2 * n3 + 1, false)
    } else {
        (0, 0, true)
    };
    KappaState { x, rho, kappa3: kappa3 as usize, kappa2: kappa2 as usize, unwanted }
}
