//! Serializable records for curvature results and solutions. Rationals carry
//! both a structured `{num, den}` form and a `"num/den"` text form.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::curvature::{CurvatureResult, Sign};
use crate::error::{Error, Result};
use crate::graph::{NodeId, Weight};
use crate::scalar::ExactScalar;
use crate::solvers::{Edits, KappaState, Method, Solution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRecord {
    pub num: i128,
    pub den: i128,
    pub text: String,
}

impl RationalRecord {
    pub fn new<S: ExactScalar>(value: &S) -> Result<Self> {
        let r = value.to_big_ratio();
        let num = r.numer().to_i128().ok_or(Error::ScalarRange)?;
        let den = r.denom().to_i128().ok_or(Error::ScalarRange)?;
        Ok(Self { num, den, text: format!("{num}/{den}") })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanRecord {
    pub from: NodeId,
    pub to: NodeId,
    pub mass: RationalRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureRecord {
    pub edge: [NodeId; 2],
    pub emd: RationalRecord,
    pub dist_uv: u64,
    pub ric: RationalRecord,
    pub sign: Sign,
    pub q: usize,
    pub plan: Vec<PlanRecord>,
}

impl CurvatureRecord {
    pub fn new<S: ExactScalar>(result: &CurvatureResult<S>) -> Result<Self> {
        let (a, b) = result.edge.endpoints();
        let plan = result
            .witness
            .entries
            .iter()
            .map(|e| Ok(PlanRecord { from: e.from, to: e.to, mass: RationalRecord::new(&e.mass)? }))
            .collect::<Result<_>>()?;
        Ok(Self {
            edge: [a, b],
            emd: RationalRecord::new(&result.emd)?,
            dist_uv: result.dist_uv,
            ric: RationalRecord::new(&result.ric)?,
            sign: result.sign,
            q: result.value.q,
            plan,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EditKind {
    Insert,
    Delete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditRecord {
    pub op: EditKind,
    pub edge: [NodeId; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<Weight>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub edits: Vec<EditRecord>,
    pub resulting_ric: RationalRecord,
    pub method: Method,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<KappaState>,
}

impl SolutionRecord {
    pub fn new(sol: &Solution) -> Result<Self> {
        let edits = match &sol.edits {
            Edits::Insert(es) => es
                .iter()
                .map(|(e, w)| {
                    let (a, b) = e.endpoints();
                    EditRecord { op: EditKind::Insert, edge: [a, b], weight: Some(*w) }
                })
                .collect(),
            Edits::Delete(es) => es
                .iter()
                .map(|e| {
                    let (a, b) = e.endpoints();
                    EditRecord { op: EditKind::Delete, edge: [a, b], weight: None }
                })
                .collect(),
        };
        Ok(Self {
            edits,
            resulting_ric: RationalRecord::new(&sol.resulting_ric)?,
            method: sol.method,
            verified: sol.verified,
            optimal: sol.optimal,
            kappa: sol.kappa,
        })
    }
}
