//! Perfect matchings on square cost matrices.

mod assignment;
mod counts;
mod enumerate;
mod ewpm;
pub mod field;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Cost;

pub use assignment::{min_cost_perfect_matching, min_cost_value, min_cost_with_duals, Duals};
pub use counts::{class_counts, k_constants, matching_with_counts, shifted_target, CountOracle, EdgeClassCounts};
pub use enumerate::{enumerate_matchings, DEFAULT_ENUMERATION_BOUND};
pub use ewpm::{exact_cost_matching, exact_cost_matching_with, EwpmConfig, DEFAULT_MAX_GRID, DEFAULT_TRIALS};

/// A perfect matching given as a row-to-column permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matching<C = i64> {
    pub assignment: Vec<usize>,
    pub cost: C,
}

impl<C: Cost> Matching<C> {
    /// Validates `assignment` as a permutation and prices it against `costs`.
    pub fn from_assignment(costs: &Matrix<C>, assignment: Vec<usize>) -> Result<Self> {
        let cost = matching_cost(costs, &assignment)?;
        Ok(Self { assignment, cost })
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// `(row, col)` pairs in row order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.assignment.iter().copied().enumerate()
    }
}

/// Cost of a perfect matching; errors unless `assignment` is a permutation of the columns.
pub fn matching_cost<C: Cost>(costs: &Matrix<C>, assignment: &[usize]) -> Result<C> {
    let n = costs.rows();
    if !costs.is_square() || assignment.len() != n {
        return Err(Error::Argument(format!(
            "assignment of length {} on a {}x{} matrix is not perfect",
            assignment.len(),
            costs.rows(),
            costs.cols()
        )));
    }
    let mut seen = vec![false; n];
    for &j in assignment {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return Err(Error::Argument("assignment is not a permutation".into()));
        }
    }
    Ok(assignment.iter().enumerate().map(|(i, &j)| costs[(i, j)]).sum())
}
