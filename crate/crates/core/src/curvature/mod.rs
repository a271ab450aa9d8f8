//! Ollivier-Ricci curvature of an edge.
//!
//! The EMD between the uniform distributions on the two closed neighborhoods
//! is computed either as a transportation problem (integer min-cost flow with
//! supplies `a` and demands `b`) or as a min-cost perfect matching of the
//! `q x q` blow-up, where `q = lcm(r, s)`. Both give `EMD = delta / q` for an
//! integer `delta`, and every sign decision is made on that integer.
//!
//! Row and column order of the neighborhood cost matrix: the endpoint's
//! private neighbors ascending, then the common neighbors ascending, then `u`,
//! then `v`. Row `r - 1 - j` and column `s - 1 - j` therefore name the same
//! node for every offset `j` in `0..common.len() + 2`.

mod canonical;
pub(crate) mod flow;
mod plan;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Distance, EdgeRef, Graph, NodeId};
use crate::matching::{min_cost_perfect_matching, Matching};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub use canonical::{canonicalize_matching, common_offsets};
pub use plan::{plan_from_matching, PlanEntry, TransportPlan};

/// Default bound on the blow-up side length `q`.
pub const DEFAULT_BLOWUP_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodPair {
    /// The endpoint of smaller degree.
    pub u: NodeId,
    pub v: NodeId,
    /// Row labels: closed neighborhood of `u` in matrix order.
    pub vu: Vec<NodeId>,
    /// Column labels: closed neighborhood of `v` in matrix order.
    pub vv: Vec<NodeId>,
    /// Common neighbors of `u` and `v`, ascending.
    pub common: Vec<NodeId>,
}

impl NeighborhoodPair {
    pub fn r(&self) -> usize {
        self.vu.len()
    }

    pub fn s(&self) -> usize {
        self.vv.len()
    }

    pub fn eta(&self) -> usize {
        self.common.len()
    }

    pub fn mass_u<S: Scalar>(&self) -> S {
        S::from_ratio(1, self.r() as i128).expect("mass fits")
    }

    pub fn mass_v<S: Scalar>(&self) -> S {
        S::from_ratio(1, self.s() as i128).expect("mass fits")
    }
}

/// Distances between the two closed neighborhoods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostMatrix {
    pub costs: Matrix<i64>,
    /// `false` exactly on rows or columns labelled `u` or `v`.
    pub touchable: Matrix<bool>,
    pub row_nodes: Vec<NodeId>,
    pub col_nodes: Vec<NodeId>,
    pub u: NodeId,
    pub v: NodeId,
}

impl CostMatrix {
    /// Assembles a matrix from explicit entries; touchability follows the labels.
    pub fn from_parts(
        costs: Matrix<i64>,
        row_nodes: Vec<NodeId>,
        col_nodes: Vec<NodeId>,
        u: NodeId,
        v: NodeId,
    ) -> Result<Self> {
        if costs.rows() != row_nodes.len() || costs.cols() != col_nodes.len() {
            return Err(Error::Argument("cost matrix shape does not match its labels".into()));
        }
        if costs.iter().any(|&c| c < 0) {
            return Err(Error::Argument("costs must be nonnegative".into()));
        }
        let touchable = Matrix::from_fn(costs.rows(), costs.cols(), |i, j| {
            ![u, v].contains(&row_nodes[i]) && ![u, v].contains(&col_nodes[j])
        });
        Ok(Self { costs, touchable, row_nodes, col_nodes, u, v })
    }

    pub fn r(&self) -> usize {
        self.costs.rows()
    }

    pub fn s(&self) -> usize {
        self.costs.cols()
    }

    pub fn q(&self) -> usize {
        num_integer::lcm(self.r(), self.s())
    }
}

/// The `q x q` replication of a cost matrix: row block `i` has `a = q / r`
/// copies, column block `j` has `b = q / s` copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUpMatrix {
    pub q: usize,
    pub a: usize,
    pub b: usize,
    pub r: usize,
    pub s: usize,
    pub costs: Matrix<i64>,
    pub touchable: Matrix<bool>,
}

impl BlowUpMatrix {
    /// Source cell `(i, j)` of blow-up cell `(row, col)`.
    pub fn block_of(&self, row: usize, col: usize) -> (usize, usize) {
        (row / self.a, col / self.b)
    }

    pub fn row_block(&self, i: usize) -> std::ops::Range<usize> {
        i * self.a..(i + 1) * self.a
    }

    pub fn col_block(&self, j: usize) -> std::ops::Range<usize> {
        j * self.b..(j + 1) * self.b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Zero,
    Negative,
}

impl Sign {
    pub fn of_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Sign::Positive,
            Ordering::Equal => Sign::Zero,
            Ordering::Less => Sign::Negative,
        }
    }
}

/// `EMD = delta / q` with the distance `d(u, v)`; enough to decide signs exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmdValue {
    pub delta: i64,
    pub q: usize,
    pub dist_uv: u64,
}

impl EmdValue {
    /// Numerator of `ric` over the denominator `q * d(u, v)`.
    pub fn ric_numerator(&self) -> i128 {
        self.q as i128 * i128::from(self.dist_uv) - i128::from(self.delta)
    }

    pub fn sign(&self) -> Sign {
        Sign::of_ordering(self.ric_numerator().cmp(&0))
    }

    /// `rho = delta - q * d(u, v)`; positive exactly when curvature is negative.
    pub fn rho(&self) -> i128 {
        -self.ric_numerator()
    }

    pub fn emd<S: Scalar>(&self) -> Result<S> {
        S::from_ratio(i128::from(self.delta), self.q as i128).ok_or(Error::ScalarRange)
    }

    pub fn ric<S: Scalar>(&self) -> Result<S> {
        S::from_ratio(self.ric_numerator(), self.q as i128 * i128::from(self.dist_uv)).ok_or(Error::ScalarRange)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Min-cost perfect matching of the blow-up.
    Matching,
    /// Transportation problem by min-cost flow; ignores the blow-up cap.
    Flow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurvatureOptions {
    pub route: Route,
    pub blowup_cap: usize,
}

impl Default for CurvatureOptions {
    fn default() -> Self {
        Self { route: Route::Matching, blowup_cap: DEFAULT_BLOWUP_CAP }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureResult<S> {
    pub edge: EdgeRef,
    pub emd: S,
    pub dist_uv: u64,
    pub ric: S,
    pub sign: Sign,
    pub witness: TransportPlan<S>,
    pub value: EmdValue,
    /// Blow-up matching behind the witness, when the matching route was used.
    pub matching: Option<Matching>,
}

/// Neighborhood labels and distance matrix for `e`, oriented so that `deg(u) <= deg(v)`.
pub fn build_cost_matrix(g: &Graph, e: EdgeRef) -> Result<(NeighborhoodPair, CostMatrix)> {
    let (x, y) = e.endpoints();
    if y >= g.node_count() {
        return Err(Error::InvalidNode { node: y, node_count: g.node_count() });
    }
    if !g.has_edge(x, y) {
        return Err(Error::MissingEdge(x, y));
    }
    let (u, v) = if g.degree(x) <= g.degree(y) { (x, y) } else { (y, x) };
    let nu: Vec<NodeId> = g.neighbors(u).filter(|&z| z != v).collect();
    let nv: Vec<NodeId> = g.neighbors(v).filter(|&z| z != u).collect();
    let common: Vec<NodeId> = nu.iter().copied().filter(|z| g.has_edge(v, *z)).collect();
    let order = |private: &[NodeId]| -> Vec<NodeId> {
        let mut out: Vec<NodeId> = private.iter().copied().filter(|z| !common.contains(z)).collect();
        out.extend(&common);
        out.extend([u, v]);
        out
    };
    let vu = order(&nu);
    let vv = order(&nv);

    let mut rows = Vec::with_capacity(vu.len());
    for &a in &vu {
        let dist = g.distances_from(a)?;
        let mut row = Vec::with_capacity(vv.len());
        for &b in &vv {
            match dist[b] {
                Distance::Finite(d) => row.push(d as i64),
                Distance::Infinite => return Err(Error::DisconnectedNeighborhood(a, b)),
            }
        }
        rows.push(row);
    }
    let cm = CostMatrix::from_parts(Matrix::from_rows(rows)?, vu.clone(), vv.clone(), u, v)?;
    Ok((NeighborhoodPair { u, v, vu, vv, common }, cm))
}

pub fn blow_up(cm: &CostMatrix) -> Result<BlowUpMatrix> {
    blow_up_with_cap(cm, DEFAULT_BLOWUP_CAP)
}

pub fn blow_up_with_cap(cm: &CostMatrix, cap: usize) -> Result<BlowUpMatrix> {
    let (r, s) = (cm.r(), cm.s());
    if r == 0 || s == 0 {
        return Err(Error::Argument("empty cost matrix".into()));
    }
    let q = cm.q();
    if q > cap {
        return Err(Error::BlowUpTooLarge { q, cap });
    }
    let (a, b) = (q / r, q / s);
    Ok(BlowUpMatrix {
        q,
        a,
        b,
        r,
        s,
        costs: Matrix::from_fn(q, q, |x, y| cm.costs[(x / a, y / b)]),
        touchable: Matrix::from_fn(q, q, |x, y| cm.touchable[(x / a, y / b)]),
    })
}

/// `mcpm / q` together with the lexicographically smallest min-cost matching.
pub fn emd_via_matching<S: Scalar>(bm: &BlowUpMatrix) -> Result<(S, Matching)> {
    let m = min_cost_perfect_matching(&bm.costs);
    let emd = S::from_ratio(i128::from(m.cost), bm.q as i128).ok_or(Error::ScalarRange)?;
    Ok((emd, m))
}

/// Exact EMD and an optimal plan from the transportation problem.
pub fn emd_via_flow<S: Scalar>(cm: &CostMatrix) -> Result<(S, TransportPlan<S>)> {
    let (delta, plan) = flow_plan(cm)?;
    let emd = S::from_ratio(i128::from(delta), cm.q() as i128).ok_or(Error::ScalarRange)?;
    Ok((emd, plan))
}

/// Transportation cost scaled by `q`, i.e. the integer `delta`.
pub fn flow_delta(cm: &CostMatrix) -> i64 {
    let q = cm.q() as i64;
    flow::transport(&cm.costs, q / cm.r() as i64, q / cm.s() as i64).0
}

fn flow_plan<S: Scalar>(cm: &CostMatrix) -> Result<(i64, TransportPlan<S>)> {
    let q = cm.q() as i64;
    let (delta, cells) = flow::transport(&cm.costs, q / cm.r() as i64, q / cm.s() as i64);
    let plan = TransportPlan::from_units(cm, q, delta, cells.into_iter())?;
    Ok((delta, plan))
}

/// Exact integer view of the curvature of `e`: sign decisions need nothing more.
pub fn emd_value(g: &Graph, e: EdgeRef, options: &CurvatureOptions) -> Result<EmdValue> {
    let (pair, cm) = build_cost_matrix(g, e)?;
    let delta = match options.route {
        Route::Flow => flow_delta(&cm),
        Route::Matching => min_cost_perfect_matching(&blow_up_with_cap(&cm, options.blowup_cap)?.costs).cost,
    };
    dist_value(g, &pair, delta, cm.q())
}

fn dist_value(g: &Graph, pair: &NeighborhoodPair, delta: i64, q: usize) -> Result<EmdValue> {
    let dist_uv = g
        .shortest_dist(pair.u, pair.v)?
        .finite()
        .ok_or(Error::DisconnectedNeighborhood(pair.u, pair.v))?;
    Ok(EmdValue { delta, q, dist_uv })
}

/// Exact curvature by the matching route.
pub fn ricci(g: &Graph, e: EdgeRef) -> Result<CurvatureResult<crate::Rational>> {
    ricci_with(g, e, &CurvatureOptions::default())
}

/// Curvature presented in the scalar type `S`.
pub fn ricci_in<S: Scalar>(g: &Graph, e: EdgeRef) -> Result<CurvatureResult<S>> {
    ricci_with(g, e, &CurvatureOptions::default())
}

pub fn ricci_with<S: Scalar>(g: &Graph, e: EdgeRef, options: &CurvatureOptions) -> Result<CurvatureResult<S>> {
    let (pair, cm) = build_cost_matrix(g, e)?;
    let (delta, witness, matching) = match options.route {
        Route::Matching => {
            let bm = blow_up_with_cap(&cm, options.blowup_cap)?;
            let m = min_cost_perfect_matching(&bm.costs);
            let plan = plan_from_matching(&cm, &bm, &m)?;
            (m.cost, plan, Some(m))
        }
        Route::Flow => {
            let (delta, plan) = flow_plan(&cm)?;
            (delta, plan, None)
        }
    };
    let value = dist_value(g, &pair, delta, cm.q())?;
    Ok(CurvatureResult {
        edge: e,
        emd: value.emd()?,
        dist_uv: value.dist_uv,
        ric: value.ric()?,
        sign: value.sign(),
        witness,
        value,
        matching,
    })
}
