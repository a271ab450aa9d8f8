//! Instance families from the hardness reductions, built at desk scale and
//! used as fixtures with known curvature.
//!
//! Every generator documents its node-id layout, and the returned descriptor
//! maps role names to ids: `u`, `v`, `u_T`, `set:i`, `element:i`, `sink:k`,
//! `L:i`, `R:j`, `u_n+1`, `v_n+1`, `x`.

mod blocker;
mod maxcov;
mod setcover;
mod tightness;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NodeId;

pub use blocker::gen_blocker;
pub use maxcov::gen_maxcov;
pub use setcover::{default_heavy_weight, gen_setcover};
pub use tightness::{gen_tightness, Tightness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetKind {
    Maxcov,
    Blocker,
    Setcover,
    Tightness,
}

/// The combinatorial input a gadget was generated from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GadgetParameters {
    Maxcov { universe_size: usize, sets: Vec<Vec<usize>>, kappa: usize },
    Blocker { n: usize, edges: Vec<(usize, usize)> },
    Setcover { universe_size: usize, sets: Vec<Vec<usize>>, heavy_weight: u64 },
    Tightness { m: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetDescriptor {
    pub kind: GadgetKind,
    pub named_nodes: BTreeMap<String, NodeId>,
    pub parameters: GadgetParameters,
}

impl GadgetDescriptor {
    /// Node id for a role name; panics on an unknown role.
    pub fn node(&self, role: &str) -> NodeId {
        self.named_nodes[role]
    }
}

/// Checks every set is inside `0..n` and together they cover it.
fn check_cover(n: usize, sets: &[Vec<usize>]) -> Result<()> {
    let mut covered = vec![false; n];
    for (i, set) in sets.iter().enumerate() {
        for &a in set {
            let slot = covered
                .get_mut(a)
                .ok_or_else(|| Error::Argument(format!("set {i} names element {a} outside a universe of {n}")))?;
            *slot = true;
        }
    }
    if let Some(a) = covered.iter().position(|&c| !c) {
        return Err(Error::Argument(format!("element {a} is in no set")));
    }
    Ok(())
}

/// Whether the chosen set indices cover `0..n`.
pub fn is_cover(n: usize, sets: &[Vec<usize>], chosen: &[usize]) -> bool {
    let mut covered = vec![false; n];
    for &i in chosen {
        for &a in &sets[i] {
            covered[a] = true;
        }
    }
    covered.into_iter().all(|c| c)
}
