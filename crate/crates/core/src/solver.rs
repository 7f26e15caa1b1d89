//! Gauss-Seidel iterations in fast-sweeping orderings, with a banded direct
//! solver as test oracle.

use crate::banded::{BandedLU, BandedMatrix};
use crate::error::{Error, Result};

/// Default maximum number of sweeps ("at most 3 sweeps").
pub const DEFAULT_MAX_SWEEPS: usize = 3;
/// Relative early-exit tolerance: stop when the max-norm residual drops
/// below `RTOL * (1 + max|rhs|)`.
pub const RTOL: f64 = 1e-12;
/// Default unknown-count limit for the direct solver.
pub const DEFAULT_DIRECT_LIMIT: usize = 10_000;

/// A sparse linear system `(I + alpha) x = rhs` stored row-wise, together
/// with its fast-sweeping node orderings.
///
/// 1D systems carry two orderings (forward, backward); 2D systems the four
/// lexicographic ones, in fixed rotation starting at (i-up, j-up).
pub struct StencilSystem {
    pub n: usize,
    diag: Vec<f64>,
    row_start: Vec<u32>,
    cols: Vec<u32>,
    vals: Vec<f64>,
    pub rhs: Vec<f64>,
    orderings: Vec<Vec<u32>>,
    /// max |col - row| over all off-diagonal entries
    pub bandwidth: usize,
}

pub struct SystemBuilder {
    n: usize,
    diag: Vec<f64>,
    rows: Vec<Vec<(u32, f64)>>,
    rhs: Vec<f64>,
}

impl SystemBuilder {
    pub fn new(n: usize) -> Self {
        Self { n, diag: vec![0.0; n], rows: vec![Vec::new(); n], rhs: vec![0.0; n] }
    }

    /// Define row `p`: diagonal coefficient, off-diagonal entries, rhs.
    pub fn set_row(&mut self, p: usize, diag: f64, off: Vec<(u32, f64)>, rhs: f64) {
        self.diag[p] = diag;
        self.rows[p] = off;
        self.rhs[p] = rhs;
    }

    pub fn rhs_mut(&mut self) -> &mut [f64] {
        &mut self.rhs
    }

    pub fn finish(self, orderings: Vec<Vec<u32>>) -> Result<StencilSystem> {
        let mut row_start = Vec::with_capacity(self.n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut bandwidth = 0usize;
        row_start.push(0);
        for (p, row) in self.rows.iter().enumerate() {
            if !(self.diag[p] > 0.0) {
                return Err(Error::BadDiagonal { node: p, value: self.diag[p] });
            }
            for &(c, v) in row {
                debug_assert_ne!(c as usize, p, "diagonal entry in off-diagonal list");
                if v != 0.0 {
                    cols.push(c);
                    vals.push(v);
                    bandwidth = bandwidth.max((c as i64 - p as i64).unsigned_abs() as usize);
                }
            }
            row_start.push(cols.len() as u32);
        }
        Ok(StencilSystem {
            n: self.n,
            diag: self.diag,
            row_start,
            cols,
            vals,
            rhs: self.rhs,
            orderings,
            bandwidth,
        })
    }
}

pub fn orderings_1d(n: usize) -> Vec<Vec<u32>> {
    let fwd: Vec<u32> = (0..n as u32).collect();
    let bwd: Vec<u32> = (0..n as u32).rev().collect();
    vec![fwd, bwd]
}

pub fn orderings_2d(m: usize) -> Vec<Vec<u32>> {
    let w = m + 1;
    let idx = |i: usize, j: usize| (j * w + i) as u32;
    let mut out = Vec::with_capacity(4);
    for &(i_up, j_up) in &[(true, true), (false, true), (true, false), (false, false)] {
        let mut ord = Vec::with_capacity(w * w);
        for jj in 0..w {
            let j = if j_up { jj } else { w - 1 - jj };
            for ii in 0..w {
                let i = if i_up { ii } else { w - 1 - ii };
                ord.push(idx(i, j));
            }
        }
        out.push(ord);
    }
    out
}

/// Outcome of a fast-sweeping solve.
pub struct SolveReport {
    pub sweeps_used: usize,
    pub final_residual: f64,
    /// residual after each Gauss-Seidel pass, in execution order
    pub pass_residuals: Vec<f64>,
    pub converged: bool,
}

impl StencilSystem {
    pub fn passes_per_sweep(&self) -> usize {
        self.orderings.len()
    }

    #[inline]
    fn row_dot(&self, p: usize, x: &[f64]) -> f64 {
        let s = self.row_start[p] as usize;
        let e = self.row_start[p + 1] as usize;
        let mut acc = 0.0;
        for k in s..e {
            acc += self.vals[k] * x[self.cols[k] as usize];
        }
        acc
    }

    /// One nodewise Gauss-Seidel update pass in the given ordering; returns
    /// the max-norm residual after the pass.
    pub fn gauss_seidel_pass(&self, x: &mut [f64], ordering: usize) -> f64 {
        for &p in &self.orderings[ordering] {
            let p = p as usize;
            x[p] = (self.rhs[p] - self.row_dot(p, x)) / self.diag[p];
        }
        self.residual_max(x)
    }

    pub fn residual_max(&self, x: &[f64]) -> f64 {
        let mut r = 0.0f64;
        for p in 0..self.n {
            r = r.max((self.rhs[p] - self.diag[p] * x[p] - self.row_dot(p, x)).abs());
        }
        r
    }

    /// Rotate through the orderings for at most `max_sweeps` sweeps, starting
    /// from `x` (normally the previous time level). Non-finite iterates are
    /// surfaced as an error, not masked.
    pub fn fast_sweeping_solve(&self, x: &mut [f64], max_sweeps: usize) -> Result<SolveReport> {
        let rtol = RTOL * (1.0 + self.rhs.iter().fold(0.0f64, |a, &b| a.max(b.abs())));
        let mut pass_residuals = Vec::new();
        let mut residual = self.residual_max(x);
        let mut sweeps_used = 0;
        let mut converged = residual <= rtol;
        'sweeps: for sweep in 0..max_sweeps {
            if converged {
                break;
            }
            for ord in 0..self.orderings.len() {
                residual = self.gauss_seidel_pass(x, ord);
                pass_residuals.push(residual);
            }
            sweeps_used = sweep + 1;
            if let Some(node) = x.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { node, step: sweep });
            }
            if residual <= rtol {
                converged = true;
                break 'sweeps;
            }
        }
        Ok(SolveReport { sweeps_used, final_residual: residual, pass_residuals, converged })
    }

    /// Direct oracle: band LU with partial pivoting.
    pub fn direct_solve(&self) -> Result<Vec<f64>> {
        self.direct_solve_with_limit(DEFAULT_DIRECT_LIMIT)
    }

    pub fn direct_solve_with_limit(&self, limit: usize) -> Result<Vec<f64>> {
        let lu = self.direct_factor_with_limit(limit)?;
        let mut x = self.rhs.clone();
        lu.solve(&mut x);
        Ok(x)
    }

    /// Factor the matrix side once; the factorization stays valid while
    /// only the right-hand side changes between steps.
    pub fn direct_factor_with_limit(&self, limit: usize) -> Result<BandedLU> {
        if self.n > limit {
            return Err(Error::TooLargeForDirect { n: self.n, limit });
        }
        let b = self.bandwidth;
        let mut m = BandedMatrix::zeros(self.n, b, b);
        for p in 0..self.n {
            m.set(p, p, self.diag[p]);
            let s = self.row_start[p] as usize;
            let e = self.row_start[p + 1] as usize;
            for k in s..e {
                m.set(p, self.cols[k] as usize, self.vals[k]);
            }
        }
        m.decompose()
    }
}
