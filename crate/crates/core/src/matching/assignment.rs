//! Hungarian algorithm with a lexicographic tie-break.
//!
//! The primal-dual solve gives an optimal matching and feasible duals. Any
//! perfect matching inside the tight subgraph (zero reduced cost) is then
//! optimal, and every optimal matching lives there, so the lexicographically
//! smallest optimum is found by fixing rows in order and forcing the smallest
//! tight column that still admits an alternating cycle.

use std::collections::VecDeque;

use super::Matching;
use crate::matrix::Matrix;
use crate::scalar::Cost;

/// Row and column potentials with `costs[i][j] - row[i] - col[j] >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Duals<C> {
    pub row: Vec<C>,
    pub col: Vec<C>,
}

impl<C: Cost> Duals<C> {
    pub fn reduced(&self, costs: &Matrix<C>, i: usize, j: usize) -> C {
        costs[(i, j)] - self.row[i] - self.col[j]
    }
}

/// Optimal perfect matching, lexicographically smallest by row among optima.
///
/// Panics if `costs` is not square.
pub fn min_cost_perfect_matching<C: Cost>(costs: &Matrix<C>) -> Matching<C> {
    min_cost_with_duals(costs).0
}

pub fn min_cost_with_duals<C: Cost>(costs: &Matrix<C>) -> (Matching<C>, Duals<C>) {
    assert!(costs.is_square(), "cost matrix must be square");
    let n = costs.rows();
    let (assignment, duals) = hungarian(costs);
    let assignment = lexicographic_refine(costs, &duals, assignment);
    let cost = (0..n).map(|i| costs[(i, assignment[i])]).sum();
    (Matching { assignment, cost }, duals)
}

/// Optimal cost only; skips the tie-break pass.
pub fn min_cost_value<C: Cost>(costs: &Matrix<C>) -> C {
    assert!(costs.is_square(), "cost matrix must be square");
    let (assignment, _) = hungarian(costs);
    assignment.iter().enumerate().map(|(i, &j)| costs[(i, j)]).sum()
}

fn hungarian<C: Cost>(costs: &Matrix<C>) -> (Vec<usize>, Duals<C>) {
    let n = costs.rows();
    let zero = C::zero();
    // One-based bookkeeping: index 0 is the virtual root column.
    let mut u = vec![zero; n + 1];
    let mut v = vec![zero; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![C::max_value(); n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = C::max_value();
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = costs[(i0 - 1, j - 1)] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] = u[p[j]] + delta;
                    v[j] = v[j] - delta;
                } else {
                    minv[j] = minv[j] - delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    let duals = Duals { row: u[1..].to_vec(), col: v[1..].to_vec() };
    (assignment, duals)
}

fn lexicographic_refine<C: Cost>(costs: &Matrix<C>, duals: &Duals<C>, mut row_to_col: Vec<usize>) -> Vec<usize> {
    let n = row_to_col.len();
    let tight = |i: usize, j: usize| duals.reduced(costs, i, j) == C::zero();
    let mut col_to_row = vec![0usize; n];
    for (i, &j) in row_to_col.iter().enumerate() {
        col_to_row[j] = i;
    }
    let mut col_fixed = vec![false; n];

    for i in 0..n {
        for j in 0..n {
            if col_fixed[j] || !tight(i, j) {
                continue;
            }
            if row_to_col[i] == j {
                break;
            }
            // Force (i, j): the row holding j must reach i's column through
            // an alternating path over free rows >= i and unfixed columns.
            let target = row_to_col[i];
            let start = col_to_row[j];
            if let Some(path) = alternating_path(n, start, target, j, i, &col_fixed, &row_to_col, &col_to_row, &tight) {
                // Each move reassigns a row along the path to its new column.
                for (r, c) in path {
                    row_to_col[r] = c;
                    col_to_row[c] = r;
                }
                row_to_col[i] = j;
                col_to_row[j] = i;
                break;
            }
        }
        col_fixed[row_to_col[i]] = true;
    }
    row_to_col
}

/// BFS from row `start` to column `target`, forbidding `skip_col` and row
/// `skip_row`. Returns the row reassignments along the found path.
#[allow(clippy::too_many_arguments)]
fn alternating_path(
    n: usize,
    start: usize,
    target: usize,
    skip_col: usize,
    skip_row: usize,
    col_fixed: &[bool],
    row_to_col: &[usize],
    col_to_row: &[usize],
    tight: &impl Fn(usize, usize) -> bool,
) -> Option<Vec<(usize, usize)>> {
    let mut parent_col: Vec<Option<(usize, usize)>> = vec![None; n]; // col -> (row that reached it)
    let mut seen_row = vec![false; n];
    seen_row[start] = true;
    seen_row[skip_row] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        for c in 0..n {
            if col_fixed[c] || c == skip_col || c == row_to_col[r] || parent_col[c].is_some() || !tight(r, c) {
                continue;
            }
            parent_col[c] = Some((r, c));
            if c == target {
                let mut moves = Vec::new();
                let mut cur = c;
                loop {
                    let (row, col) = parent_col[cur].expect("bfs parent");
                    moves.push((row, col));
                    if row == start {
                        break;
                    }
                    cur = row_to_col[row];
                }
                return Some(moves);
            }
            let next = col_to_row[c];
            if !seen_row[next] {
                seen_row[next] = true;
                queue.push_back(next);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::enumerate_matchings;

    #[test]
    fn zero_diagonal_gives_identity() {
        let m = Matrix::from_fn(4, 4, |i, j| if i == j { 0i64 } else { 2 });
        let r = min_cost_perfect_matching(&m);
        assert_eq!(r.cost, 0);
        assert_eq!(r.assignment, vec![0, 1, 2, 3]);
    }

    #[test]
    fn all_ones_tie_breaks_to_identity() {
        let m = Matrix::filled(3, 3, 1i64);
        let r = min_cost_perfect_matching(&m);
        assert_eq!(r.cost, 3);
        assert_eq!(r.assignment, vec![0, 1, 2]);
    }

    #[test]
    fn matches_lexicographic_minimum_over_permutations() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let m = Matrix::from_fn(n, n, |_, _| rng.gen_range(0..=3i64));
            let best = enumerate_matchings(&m, 8)
                .unwrap()
                .min_by(|a, b| a.cost.cmp(&b.cost).then_with(|| a.assignment.cmp(&b.assignment)))
                .unwrap();
            let got = min_cost_perfect_matching(&m);
            assert_eq!(got, best);
        }
    }

    #[test]
    fn works_for_i32() {
        let m = Matrix::from_rows(vec![vec![4i32, 1, 3], vec![2, 0, 5], vec![3, 2, 2]]).unwrap();
        assert_eq!(min_cost_perfect_matching(&m).cost, 5);
    }
}
