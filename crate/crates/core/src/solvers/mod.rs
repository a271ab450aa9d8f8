//! Critical-edge problems: find few edge edits that flip the curvature sign.

mod brute;
mod greedy;
mod kappa;
mod propagation;
mod randomized;
mod saturation;
mod variant;

use serde::{Deserialize, Serialize};

use crate::curvature::{emd_value, CurvatureOptions, EmdValue, Route, Sign};
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, Graph, Weight};
use crate::Rational;

pub use brute::{brute_force_drops, brute_force_opt, DEFAULT_BRUTE_BUDGET};
pub use greedy::{greedy_drops, greedy_insert, greedy_insert_default, greedy_insert_with};
pub use kappa::{kappa_hat, KappaState};
pub use propagation::weight_propagation;
pub use randomized::{randomized_insert, randomized_insert_with, RandomizedConfig};
pub use saturation::{feasible_by_saturation, Saturation};
pub use variant::{Direction, Operation, ProblemVariant, Restriction, Weighting};

/// Weight of every inserted edge.
pub const INSERT_WEIGHT: Weight = 1;

fn flow_options() -> CurvatureOptions {
    CurvatureOptions { route: Route::Flow, ..CurvatureOptions::default() }
}

/// Exact curvature data by the flow route, which has no blow-up cap.
pub fn exact_value(g: &Graph, e: EdgeRef) -> Result<EmdValue> {
    emd_value(g, e, &flow_options())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub edge: EdgeRef,
    pub variant: ProblemVariant,
    /// Curvature of `edge` before any edit.
    pub base: EmdValue,
}

impl Instance {
    /// Validates the variant against the graph and the current sign: `ntp`
    /// needs `ric <= 0`, `ptn` needs `ric >= 0`.
    pub fn new(graph: Graph, edge: EdgeRef, variant: ProblemVariant) -> Result<Self> {
        if variant.weighting == Weighting::Uw && graph.edges().any(|(_, w)| w != 1) {
            return Err(Error::Argument(format!("{variant} needs an unweighted graph")));
        }
        let base = exact_value(&graph, edge)?;
        let ok = match variant.direction {
            Direction::Ntp => base.sign() != Sign::Positive,
            Direction::Ptn => base.sign() != Sign::Negative,
        };
        if !ok {
            return Err(Error::Argument(format!("curvature sign {:?} does not fit {variant}", base.sign())));
        }
        Ok(Self { graph, edge, variant, base })
    }

    /// Whether a curvature value achieves the demanded strict sign.
    pub fn is_flipped(&self, value: &EmdValue) -> bool {
        match self.variant.direction {
            Direction::Ntp => value.sign() == Sign::Positive,
            Direction::Ptn => value.sign() == Sign::Negative,
        }
    }

    /// Candidate edits, sorted. Insertions: restricted takes non-edges between
    /// `N(u) - {v}` and `N(v) - {u}`, unrestricted all non-edges. Deletions:
    /// restricted takes edges avoiding `u` and `v`, unrestricted all but `edge`.
    pub fn permissible_edits(&self) -> Vec<EdgeRef> {
        permissible_edits(self)
    }

    pub fn apply(&self, edits: &Edits) -> Result<Graph> {
        match edits {
            Edits::Insert(es) => self.graph.insert_edges(es.iter().copied()),
            Edits::Delete(es) => self.graph.delete_edges(es),
        }
    }

    /// Sorted, deduplicated edits of the variant's kind; insertions get weight 1.
    pub fn edits_from(&self, mut edges: Vec<EdgeRef>) -> Edits {
        edges.sort();
        edges.dedup();
        match self.variant.operation {
            Operation::Ins => Edits::Insert(edges.into_iter().map(|e| (e, INSERT_WEIGHT)).collect()),
            Operation::Del => Edits::Delete(edges),
        }
    }

    /// Applies `edits`, recomputes the curvature exactly and builds a
    /// verified solution; any failure is a verification error.
    pub(crate) fn certify(&self, edits: Edits, method: Method) -> Result<Solution> {
        let allowed = self.permissible_edits();
        if let Some(bad) = edits.edges().find(|e| allowed.binary_search(e).is_err()) {
            return Err(Error::Verification(format!("edit {bad} is not permissible for {}", self.variant)));
        }
        let g = self.apply(&edits)?;
        let value = exact_value(&g, self.edge)?;
        if !self.is_flipped(&value) {
            return Err(Error::Verification(format!(
                "{method:?} edits leave curvature sign {:?}",
                value.sign()
            )));
        }
        Ok(Solution { edits, resulting: value, resulting_ric: value.ric()?, method, verified: true, optimal: None, kappa: None })
    }
}

pub fn permissible_edits(inst: &Instance) -> Vec<EdgeRef> {
    let g = &inst.graph;
    let (u, v) = inst.edge.endpoints();
    let n = g.node_count();
    let mut out = Vec::new();
    match (inst.variant.operation, inst.variant.restriction) {
        (Operation::Ins, Restriction::Rt) => {
            for x in g.neighbors(u).filter(|&x| x != v) {
                for y in g.neighbors(v).filter(|&y| y != u) {
                    if x != y && !g.has_edge(x, y) {
                        out.push(EdgeRef::new(x, y).expect("distinct"));
                    }
                }
            }
        }
        (Operation::Ins, Restriction::Ut) => {
            for x in 0..n {
                for y in x + 1..n {
                    if !g.has_edge(x, y) {
                        out.push(EdgeRef::new(x, y).expect("distinct"));
                    }
                }
            }
        }
        (Operation::Del, Restriction::Rt) => {
            out.extend(g.edges().map(|(e, _)| e).filter(|e| !e.contains(u) && !e.contains(v)));
        }
        (Operation::Del, Restriction::Ut) => {
            out.extend(g.edges().map(|(e, _)| e).filter(|e| *e != inst.edge));
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Edits {
    Insert(Vec<(EdgeRef, Weight)>),
    Delete(Vec<EdgeRef>),
}

impl Edits {
    pub fn len(&self) -> usize {
        match self {
            Edits::Insert(es) => es.len(),
            Edits::Delete(es) => es.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> Box<dyn Iterator<Item = EdgeRef> + '_> {
        match self {
            Edits::Insert(es) => Box::new(es.iter().map(|(e, _)| *e)),
            Edits::Delete(es) => Box::new(es.iter().copied()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Saturation,
    Greedy,
    Randomized,
    Brute,
}

/// A verified edit set.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub edits: Edits,
    pub resulting: EmdValue,
    pub resulting_ric: Rational,
    pub method: Method,
    pub verified: bool,
    /// Set by brute force: the edit set has minimum size.
    pub optimal: Option<bool>,
    /// The selected matching's state, for the randomized solver.
    pub kappa: Option<KappaState>,
}

impl Solution {
    pub fn len(&self) -> usize {
        self.edits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edits.is_empty()
    }
}
