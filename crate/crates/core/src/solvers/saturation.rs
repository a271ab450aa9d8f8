//! Feasibility by applying every permissible edit at once.

use super::{Instance, Method, ProblemVariant, Solution};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Saturation {
    pub feasible: bool,
    /// Whether `feasible == false` proves infeasibility. A positive answer is
    /// always backed by `solution`.
    pub conclusive: bool,
    pub solution: Option<Solution>,
}

const SUPPORTED: [ProblemVariant; 5] = [
    ProblemVariant::UW_RT_INS_NTP,
    ProblemVariant::UW_UT_INS_NTP,
    ProblemVariant::UW_RT_DEL_PTN,
    ProblemVariant::WT_RT_INS_NTP,
    ProblemVariant::WT_UT_INS_NTP,
];

pub fn feasible_by_saturation(inst: &Instance) -> Result<Saturation> {
    if !SUPPORTED.contains(&inst.variant) {
        return Err(Error::UnsupportedVariant(format!("no saturation decider for {}", inst.variant)));
    }
    let (u, v) = inst.edge.endpoints();
    let w_uv = inst.graph.weight(u, v).expect("instance edge exists");
    // Weight-1 insertions are w.l.o.g. only while d(u, v) cannot change.
    let conclusive = match inst.variant {
        ProblemVariant::WT_RT_INS_NTP => (1..=3).contains(&w_uv),
        ProblemVariant::WT_UT_INS_NTP => (1..=2).contains(&w_uv),
        _ => true,
    };
    let edits = inst.edits_from(inst.permissible_edits());
    if edits.is_empty() {
        return Ok(Saturation { feasible: false, conclusive, solution: None });
    }
    match inst.certify(edits, Method::Saturation) {
        Ok(solution) => Ok(Saturation { feasible: true, conclusive: true, solution: Some(solution) }),
        Err(Error::Verification(_)) => Ok(Saturation { feasible: false, conclusive, solution: None }),
        Err(e) => Err(e),
    }
}
