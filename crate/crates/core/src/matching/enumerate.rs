//! Exhaustive matching enumeration for small matrices.

use itertools::Itertools;

use super::Matching;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Cost;

pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

/// All `q!` perfect matchings, permutations in lexicographic order.
pub fn enumerate_matchings<C: Cost>(
    costs: &Matrix<C>,
    bound: usize,
) -> Result<impl Iterator<Item = Matching<C>> + '_> {
    let q = costs.rows();
    if !costs.is_square() {
        return Err(Error::Argument("cost matrix must be square".into()));
    }
    if q > bound {
        return Err(Error::EnumerationRefused { q, bound });
    }
    Ok((0..q).permutations(q).map(move |assignment| {
        let cost = assignment.iter().enumerate().map(|(i, &j)| costs[(i, j)]).sum();
        Matching { assignment, cost }
    }))
}
