//! Randomized exact-weight perfect matching over a prime field.
//!
//! Every cell `(i, j)` carries a vector of nonnegative exponents ("digits"),
//! one per indeterminate. The matrix `A[i][j] = r_ij * prod_d t_d^digit_d(i,j)`
//! with random field scalars `r_ij` has a determinant whose coefficient at the
//! monomial `t^tau` is a nonzero polynomial in the `r_ij` exactly when some
//! perfect matching has digit sums `tau`. A nonzero coefficient is therefore a
//! certificate; a zero coefficient is wrong with probability at most `q / p`
//! per trial (Schwartz-Zippel).
//!
//! Coefficients are recovered by evaluating the determinant on a tensor grid of
//! points sized by the per-indeterminate degree range and applying inverse
//! Vandermonde maps along each axis. Witnesses come from self-reduction: row by
//! row, the cofactors of the current row are interpolated and the smallest
//! column whose cofactor still carries the residual target is fixed.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::field::{self, MODULUS};
use super::{min_cost_perfect_matching, Matching};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Cost;

pub const DEFAULT_TRIALS: usize = 20;

/// Upper bound on grid points per polynomial.
pub const DEFAULT_MAX_GRID: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EwpmConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_grid: usize,
}

impl EwpmConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self { trials, seed, max_grid: DEFAULT_MAX_GRID }
    }
}

impl Default for EwpmConfig {
    fn default() -> Self {
        Self::new(DEFAULT_TRIALS, 0)
    }
}

/// Cells labelled with exponent vectors; `digits[d]` is the exponent of `t_d`.
#[derive(Clone, Debug)]
pub(crate) struct DigitMatrix {
    n: usize,
    digits: Vec<Matrix<u32>>,
}

impl DigitMatrix {
    pub(crate) fn new(digits: Vec<Matrix<u32>>) -> Self {
        let n = digits.first().map_or(0, Matrix::rows);
        debug_assert!(digits.iter().all(|m| m.rows() == n && m.cols() == n));
        Self { n, digits }
    }

    pub(crate) fn dims(&self) -> usize {
        self.digits.len()
    }

    pub(crate) fn size(&self) -> usize {
        self.n
    }

    pub(crate) fn digit(&self, d: usize, i: usize, j: usize) -> u32 {
        self.digits[d][(i, j)]
    }

    /// Min and max digit sum over perfect matchings of the given submatrix, per indeterminate.
    fn degree_range(&self, rows: &[usize], cols: &[usize]) -> (Vec<u32>, Vec<u32>) {
        let k = rows.len();
        let mut low = Vec::with_capacity(self.dims());
        let mut high = Vec::with_capacity(self.dims());
        for d in 0..self.dims() {
            let sub = Matrix::from_fn(k, k, |a, b| i64::from(self.digit(d, rows[a], cols[b])));
            low.push(min_cost_perfect_matching(&sub).cost as u32);
            let neg = sub.map(|&c| -c);
            high.push((-min_cost_perfect_matching(&neg).cost) as u32);
        }
        (low, high)
    }
}

/// Dense tensor of coefficients for monomials `t^(low + e)`, `0 <= e < extent`.
#[derive(Clone, Debug)]
pub(crate) struct Poly {
    low: Vec<u32>,
    extent: Vec<usize>,
    coeffs: Vec<u64>,
}

impl Poly {
    pub(crate) fn coeff(&self, exps: &[u32]) -> u64 {
        let mut idx = 0usize;
        for ((&e, &lo), &ext) in exps.iter().zip(&self.low).zip(&self.extent) {
            if e < lo || (e - lo) as usize >= ext {
                return 0;
            }
            idx = idx * ext + (e - lo) as usize;
        }
        self.coeffs[idx]
    }

    pub(crate) fn is_supported(&self, exps: &[u32]) -> bool {
        self.coeff(exps) != 0
    }
}

/// Evaluation grid over the box `[low, high]` in every indeterminate.
struct Grid {
    low: Vec<u32>,
    extent: Vec<usize>,
    points: Vec<Vec<u64>>,
    inv_vandermonde: Vec<Vec<u64>>,
}

impl Grid {
    fn new(low: Vec<u32>, high: &[u32], max_grid: usize) -> Result<Self> {
        let extent: Vec<usize> = low.iter().zip(high).map(|(&l, &h)| (h - l) as usize + 1).collect();
        let total = extent.iter().try_fold(1usize, |acc, &e| acc.checked_mul(e));
        match total {
            Some(t) if t <= max_grid => {}
            _ => {
                return Err(Error::Config(format!(
                    "interpolation grid {extent:?} exceeds {max_grid} points"
                )))
            }
        }
        if extent.iter().any(|&e| e as u64 >= MODULUS) {
            return Err(Error::Config("field too small for interpolation degree".into()));
        }
        let points: Vec<Vec<u64>> = extent.iter().map(|&e| (1..=e as u64).collect()).collect();
        let inv_vandermonde = points.iter().map(|p| field::inverse_vandermonde(p)).collect();
        Ok(Self { low, extent, points, inv_vandermonde })
    }

    fn len(&self) -> usize {
        self.extent.iter().product()
    }

    /// Grid coordinates of flat index `idx`, last axis fastest.
    fn coords(&self, mut idx: usize, out: &mut [usize]) {
        for d in (0..self.extent.len()).rev() {
            out[d] = idx % self.extent[d];
            idx /= self.extent[d];
        }
    }

    /// `prod_d point_d^(-low_d)` at the given coordinates.
    fn shift(&self, coords: &[usize]) -> u64 {
        coords.iter().enumerate().fold(1, |acc, (d, &c)| {
            field::mul(acc, field::inv(field::pow(self.points[d][c], u64::from(self.low[d]))))
        })
    }

    /// Turns a tensor of (shifted) evaluations into monomial coefficients.
    fn interpolate(&self, mut values: Vec<u64>) -> Vec<u64> {
        let dims = self.extent.len();
        for d in 0..dims {
            let ext = self.extent[d];
            let inner: usize = self.extent[d + 1..].iter().product();
            let outer: usize = self.extent[..d].iter().product();
            let inv = &self.inv_vandermonde[d];
            let mut fiber = vec![0u64; ext];
            for o in 0..outer {
                for s in 0..inner {
                    let base = o * ext * inner + s;
                    for (k, f) in fiber.iter_mut().enumerate() {
                        *f = values[base + k * inner];
                    }
                    for e in 0..ext {
                        let row = &inv[e * ext..(e + 1) * ext];
                        let acc = row.iter().zip(&fiber).fold(0, |acc, (&a, &b)| field::add(acc, field::mul(a, b)));
                        values[base + e * inner] = acc;
                    }
                }
            }
        }
        values
    }

    /// Linear functional mapping grid evaluations to the coefficient at `exps`.
    fn coefficient_weights(&self, exps: &[u32]) -> Option<Vec<u64>> {
        let mut rel = Vec::with_capacity(exps.len());
        for ((&e, &lo), &ext) in exps.iter().zip(&self.low).zip(&self.extent) {
            if e < lo || (e - lo) as usize >= ext {
                return None;
            }
            rel.push((e - lo) as usize);
        }
        let mut weights = Vec::with_capacity(self.len());
        let mut coords = vec![0usize; exps.len()];
        for idx in 0..self.len() {
            self.coords(idx, &mut coords);
            let w = (0..exps.len()).fold(1, |acc, d| {
                let ext = self.extent[d];
                field::mul(acc, self.inv_vandermonde[d][rel[d] * ext + coords[d]])
            });
            weights.push(w);
        }
        Some(weights)
    }
}

/// Builds `A(t)` at grid coordinates for the submatrix `rows x cols`.
fn evaluate_matrix(
    dm: &DigitMatrix,
    scalars: &Matrix<u64>,
    grid: &Grid,
    coords: &[usize],
    rows: &[usize],
    cols: &[usize],
) -> Vec<u64> {
    let k = rows.len();
    let mut a = Vec::with_capacity(k * k);
    for &i in rows {
        for &j in cols {
            let mut v = scalars[(i, j)];
            for (d, (points, &c)) in grid.points.iter().zip(coords).enumerate().take(dm.dims()) {
                v = field::mul(v, field::pow(points[c], u64::from(dm.digit(d, i, j))));
            }
            a.push(v);
        }
    }
    a
}

pub(crate) fn random_scalars(n: usize, seed: u64, trial: u64) -> Matrix<u64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    Matrix::from_fn(n, n, |_, _| field::random_nonzero(&mut rng))
}

/// Coefficient tensor of `det A(t)` for one draw of scalars.
pub(crate) fn generating_poly(dm: &DigitMatrix, scalars: &Matrix<u64>, max_grid: usize) -> Result<Poly> {
    let all: Vec<usize> = (0..dm.size()).collect();
    let (low, high) = dm.degree_range(&all, &all);
    let grid = Grid::new(low, &high, max_grid)?;
    let mut coords = vec![0usize; dm.dims()];
    let mut values = Vec::with_capacity(grid.len());
    for idx in 0..grid.len() {
        grid.coords(idx, &mut coords);
        let a = evaluate_matrix(dm, scalars, &grid, &coords, &all, &all);
        values.push(field::mul(field::determinant(a, dm.size()), grid.shift(&coords)));
    }
    let coeffs = grid.interpolate(values);
    Ok(Poly { low: grid.low.clone(), extent: grid.extent.clone(), coeffs })
}

/// Cofactors of the first row of the square matrix `a` (size `k`).
fn first_row_cofactors(a: &[u64], k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![1];
    }
    if let Some((det, inv)) = field::determinant_and_inverse(a.to_vec(), k) {
        // adj(A) = det * A^{-1}; cofactor (0, j) = adj[j][0].
        return (0..k).map(|j| field::mul(det, inv[j * k])).collect();
    }
    (0..k)
        .map(|j| {
            let mut minor = Vec::with_capacity((k - 1) * (k - 1));
            for r in 1..k {
                for c in (0..k).filter(|&c| c != j) {
                    minor.push(a[r * k + c]);
                }
            }
            let d = field::determinant(minor, k - 1);
            if j % 2 == 0 {
                d
            } else {
                field::sub(0, d)
            }
        })
        .collect()
}

/// Self-reduction: a perfect matching with digit sums `target`, or `None`
/// when some level finds no certified column (a false negative of this draw).
pub(crate) fn extract_witness(
    dm: &DigitMatrix,
    scalars: &Matrix<u64>,
    target: &[u32],
    max_grid: usize,
) -> Result<Option<Vec<usize>>> {
    let n = dm.size();
    let mut assignment = vec![usize::MAX; n];
    let mut cols: Vec<usize> = (0..n).collect();
    let mut residual = target.to_vec();

    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        let rows: Vec<usize> = (i..n).collect();
        let k = rows.len();
        let chosen = if k == 1 {
            let j = cols[0];
            let ok = (0..dm.dims()).all(|d| dm.digit(d, i, j) == residual[d]);
            ok.then_some(0)
        } else {
            let (low, high) = dm.degree_range(&rows, &cols);
            // Cofactor of (i, j) has degrees within [low - digit, high - digit].
            let row_min: Vec<u32> = (0..dm.dims()).map(|d| cols.iter().map(|&j| dm.digit(d, i, j)).min().unwrap_or(0)).collect();
            let row_max: Vec<u32> = (0..dm.dims()).map(|d| cols.iter().map(|&j| dm.digit(d, i, j)).max().unwrap_or(0)).collect();
            let c_low: Vec<u32> = low.iter().zip(&row_max).map(|(&l, &m)| l.saturating_sub(m)).collect();
            let c_high: Vec<u32> = (0..dm.dims())
                .map(|d| high[d].saturating_sub(row_min[d]).max(c_low[d]))
                .collect();
            let grid = Grid::new(c_low, &c_high, max_grid)?;
            let mut acc = vec![0u64; k];
            let mut weights_per_col: Vec<Option<Vec<u64>>> = Vec::with_capacity(k);
            for &j in &cols {
                let want: Option<Vec<u32>> = (0..dm.dims())
                    .map(|d| residual[d].checked_sub(dm.digit(d, i, j)))
                    .collect();
                weights_per_col.push(want.and_then(|w| grid.coefficient_weights(&w)));
            }
            let mut coords = vec![0usize; dm.dims()];
            for idx in 0..grid.len() {
                grid.coords(idx, &mut coords);
                let a = evaluate_matrix(dm, scalars, &grid, &coords, &rows, &cols);
                let shift = grid.shift(&coords);
                let cof = first_row_cofactors(&a, k);
                for (c, w) in weights_per_col.iter().enumerate() {
                    if let Some(w) = w {
                        let v = field::mul(field::mul(cof[c], shift), w[idx]);
                        acc[c] = field::add(acc[c], v);
                    }
                }
            }
            // Cofactor signs alternate; the coefficient is nonzero either way.
            let mut order: Vec<usize> = (0..k).collect();
            order.sort_by_key(|&c| cols[c]);
            order.into_iter().find(|&c| acc[c] != 0)
        };
        let Some(c) = chosen else {
            return Ok(None);
        };
        let j = cols.remove(c);
        for (d, r) in residual.iter_mut().enumerate() {
            *r -= dm.digit(d, i, j);
        }
        assignment[i] = j;
    }
    Ok(Some(assignment))
}

fn digits_from_costs<C: Cost>(costs: &Matrix<C>) -> Result<DigitMatrix> {
    let mut bad = None;
    let digits = costs.map(|c| match c.to_u32() {
        Some(d) => d,
        None => {
            bad = Some(());
            0
        }
    });
    if bad.is_some() {
        return Err(Error::Argument("exact-cost matching needs costs in 0..=u32::MAX".into()));
    }
    Ok(DigitMatrix::new(vec![digits]))
}

/// A perfect matching of cost exactly `target`, or `None` if no trial finds one.
///
/// `target == mcpm` is answered by the assignment solver directly. Returned
/// matchings are always re-priced before return.
pub fn exact_cost_matching<C: Cost>(
    costs: &Matrix<C>,
    target: C,
    trials: usize,
    seed: u64,
) -> Result<Option<Matching<C>>> {
    exact_cost_matching_with(costs, target, &EwpmConfig { trials, seed, ..EwpmConfig::default() })
}

pub fn exact_cost_matching_with<C: Cost>(
    costs: &Matrix<C>,
    target: C,
    config: &EwpmConfig,
) -> Result<Option<Matching<C>>> {
    if !costs.is_square() {
        return Err(Error::Argument("cost matrix must be square".into()));
    }
    if target < C::zero() {
        return Err(Error::Argument("target must be nonnegative".into()));
    }
    let dm = digits_from_costs(costs)?;
    let best = min_cost_perfect_matching(costs);
    if target == best.cost {
        return Ok(Some(best));
    }
    if target < best.cost {
        return Ok(None);
    }
    let Some(t) = target.to_u32() else {
        return Ok(None);
    };
    let n = costs.rows();
    for trial in 0..config.trials as u64 {
        let scalars = random_scalars(n, config.seed, trial);
        let poly = generating_poly(&dm, &scalars, config.max_grid)?;
        if !poly.is_supported(&[t]) {
            continue;
        }
        if let Some(assignment) = extract_witness(&dm, &scalars, &[t], config.max_grid)? {
            let m = Matching::from_assignment(costs, assignment)?;
            if m.cost == target {
                return Ok(Some(m));
            }
            return Err(Error::Verification(format!("witness cost {:?} != target {:?}", m.cost, target)));
        }
    }
    Ok(None)
}
