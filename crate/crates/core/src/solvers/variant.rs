use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    Uw,
    Wt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Restriction {
    Rt,
    Ut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Ins,
    Del,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Positive curvature to negative.
    Ptn,
    /// Negative (or zero) curvature to positive.
    Ntp,
}

/// One of the sixteen critical-edge problems, e.g. `uw-rt-ins-ntp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemVariant {
    pub weighting: Weighting,
    pub restriction: Restriction,
    pub operation: Operation,
    pub direction: Direction,
}

impl ProblemVariant {
    /// Rejects the unweighted combinations that ask for the impossible
    /// direction: on unweighted graphs insertions only lower the EMD and
    /// deletions only raise it, so `uw-*-ins-ptn` and `uw-*-del-ntp` are out.
    pub fn new(weighting: Weighting, restriction: Restriction, operation: Operation, direction: Direction) -> Result<Self> {
        let v = Self { weighting, restriction, operation, direction };
        if weighting == Weighting::Uw
            && matches!((operation, direction), (Operation::Ins, Direction::Ptn) | (Operation::Del, Direction::Ntp))
        {
            return Err(Error::UnsupportedVariant(format!("{v} has no feasible solutions")));
        }
        Ok(v)
    }

    pub const UW_RT_INS_NTP: Self = Self::raw(Weighting::Uw, Restriction::Rt, Operation::Ins, Direction::Ntp);
    pub const UW_UT_INS_NTP: Self = Self::raw(Weighting::Uw, Restriction::Ut, Operation::Ins, Direction::Ntp);
    pub const UW_RT_DEL_PTN: Self = Self::raw(Weighting::Uw, Restriction::Rt, Operation::Del, Direction::Ptn);
    pub const WT_RT_INS_NTP: Self = Self::raw(Weighting::Wt, Restriction::Rt, Operation::Ins, Direction::Ntp);
    pub const WT_UT_INS_NTP: Self = Self::raw(Weighting::Wt, Restriction::Ut, Operation::Ins, Direction::Ntp);

    const fn raw(weighting: Weighting, restriction: Restriction, operation: Operation, direction: Direction) -> Self {
        Self { weighting, restriction, operation, direction }
    }

    /// Weighted variants for which no algorithm exists beyond brute force.
    pub fn has_no_algorithm(&self) -> bool {
        self.weighting == Weighting::Wt
            && matches!((self.operation, self.direction), (Operation::Ins, Direction::Ptn) | (Operation::Del, Direction::Ntp))
    }
}

impl fmt::Display for ProblemVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.weighting {
            Weighting::Uw => "uw",
            Weighting::Wt => "wt",
        };
        let r = match self.restriction {
            Restriction::Rt => "rt",
            Restriction::Ut => "ut",
        };
        let o = match self.operation {
            Operation::Ins => "ins",
            Operation::Del => "del",
        };
        let d = match self.direction {
            Direction::Ptn => "ptn",
            Direction::Ntp => "ntp",
        };
        write!(f, "{w}-{r}-{o}-{d}")
    }
}

impl FromStr for ProblemVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let fields: Vec<&str> = lower.split('-').collect();
        let bad = || Error::Argument(format!("unknown variant {s:?}; expected e.g. uw-rt-ins-ntp"));
        let [w, r, o, d] = fields.as_slice() else {
            return Err(bad());
        };
        let weighting = match *w {
            "uw" => Weighting::Uw,
            "wt" => Weighting::Wt,
            _ => return Err(bad()),
        };
        let restriction = match *r {
            "rt" => Restriction::Rt,
            "ut" => Restriction::Ut,
            _ => return Err(bad()),
        };
        let operation = match *o {
            "ins" => Operation::Ins,
            "del" => Operation::Del,
            _ => return Err(bad()),
        };
        let direction = match *d {
            "ptn" => Direction::Ptn,
            "ntp" => Direction::Ntp,
            _ => return Err(bad()),
        };
        Self::new(weighting, restriction, operation, direction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let v: ProblemVariant = "uw-rt-ins-ntp".parse().unwrap();
        assert_eq!(v, ProblemVariant::UW_RT_INS_NTP);
        assert_eq!(v.to_string(), "uw-rt-ins-ntp");
        assert!("uw-rt-ins".parse::<ProblemVariant>().is_err());
        assert!("xx-rt-ins-ntp".parse::<ProblemVariant>().is_err());
    }

    #[test]
    fn impossible_directions_are_rejected() {
        for s in ["uw-rt-ins-ptn", "uw-ut-ins-ptn", "uw-rt-del-ntp", "uw-ut-del-ntp"] {
            assert!(matches!(s.parse::<ProblemVariant>(), Err(Error::UnsupportedVariant(_))), "{s}");
        }
        for s in ["uw-rt-del-ptn", "uw-ut-ins-ntp", "wt-rt-ins-ptn", "wt-ut-del-ntp"] {
            assert!(s.parse::<ProblemVariant>().is_ok(), "{s}");
        }
        assert!("wt-rt-del-ntp".parse::<ProblemVariant>().unwrap().has_no_algorithm());
    }
}
