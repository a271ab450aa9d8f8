//! Cost matrix on which the deterministic greedy hits its `2b` bound.
//!
//! `deg(u) = deg(v) = m + 2` with no common neighbor, so `r = s = m + 3` and
//! `b = 1`. Rows are `x:0..=m, u, v` and columns `y:0..=m, u, v`; ids are
//! `u = 0`, `v = 1`, `x:i = 2 + i`, `y:j = 3 + m + j`. On the `m x m` block,
//! `(i, i)` is 1 for `i < m/2`, `(i, i + m/2)` and `(i + m/2, i)` are 2, and
//! everything else is 3. The spare pair `(x:m, y:m)` costs 2; the remaining
//! entries are the distances a graph with these neighborhoods would have.
//!
//! Both listed matchings have minimum cost `2m + 2`. The adversarial one
//! uses only 2-edges on the block, so greedy lowers `m` of them; the optimal
//! one is the diagonal, whose `m/2` 3-edges suffice.

use std::collections::BTreeMap;

use super::{GadgetDescriptor, GadgetKind, GadgetParameters};
use crate::curvature::CostMatrix;
use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct Tightness {
    pub matrix: CostMatrix,
    pub adversarial: Matching,
    pub optimal: Matching,
    pub descriptor: GadgetDescriptor,
}

pub fn gen_tightness(m: usize) -> Result<Tightness> {
    if m < 4 || m % 2 == 1 {
        return Err(Error::Argument(format!("tightness needs an even m >= 4, got {m}")));
    }
    let h = m / 2;
    let (u, v) = (0, 1);
    let (row_u, row_v) = (m + 1, m + 2);
    let costs = Matrix::from_fn(m + 3, m + 3, |i, j| match (i, j) {
        _ if i == row_u && j == row_u => 0,
        _ if i == row_v && j == row_v => 0,
        _ if i == row_u && j == row_v || i == row_v && j == row_u => 1,
        _ if i == row_u => 2,
        _ if i == row_v => 1,
        _ if j == row_u => 1,
        _ if j == row_v => 2,
        _ if i == m && j == m => 2,
        _ if i == m || j == m => 3,
        _ if i == j && i < h => 1,
        _ if j == i + h || i == j + h => 2,
        _ => 3,
    });
    let row_nodes: Vec<usize> = (0..=m).map(|i| 2 + i).chain([u, v]).collect();
    let col_nodes: Vec<usize> = (0..=m).map(|j| 3 + m + j).chain([u, v]).collect();
    let matrix = CostMatrix::from_parts(costs, row_nodes, col_nodes, u, v)?;

    let adversarial_rows = (0..m).map(|i| if i < h { i + h } else { i - h });
    let adversarial: Vec<usize> = adversarial_rows.chain([m, row_u, row_v]).collect();
    let adversarial = Matching::from_assignment(&matrix.costs, adversarial)?;
    let optimal = Matching::from_assignment(&matrix.costs, (0..m + 3).collect())?;

    let mut named = BTreeMap::from([("u".to_string(), u), ("v".to_string(), v)]);
    named.extend((0..=m).map(|i| (format!("x:{i}"), 2 + i)));
    named.extend((0..=m).map(|j| (format!("y:{j}"), 3 + m + j)));
    let descriptor =
        GadgetDescriptor { kind: GadgetKind::Tightness, named_nodes: named, parameters: GadgetParameters::Tightness { m } };
    Ok(Tightness { matrix, adversarial, optimal, descriptor })
}
