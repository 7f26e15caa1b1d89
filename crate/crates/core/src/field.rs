//! Scalar, velocity and Courant-number fields on uniform grids.

use std::io::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Grid1D, Grid2D};

#[derive(Debug, Clone)]
pub struct ScalarField1D {
    pub grid: Arc<Grid1D>,
    pub values: Vec<f64>,
}

impl ScalarField1D {
    pub fn from_fn(grid: Arc<Grid1D>, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..=grid.m as i64).map(|i| f(grid.x(i))).collect();
        Self { grid, values }
    }

    pub fn constant(grid: Arc<Grid1D>, c: f64) -> Self {
        let values = vec![c; grid.node_count()];
        Self { grid, values }
    }

    /// Index of the first non-finite entry, if any.
    pub fn first_non_finite(&self) -> Option<usize> {
        self.values.iter().position(|v| !v.is_finite())
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "x,value")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(w, "{:.17e},{:.17e}", self.grid.x(i as i64), v)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct ScalarField2D {
    pub grid: Arc<Grid2D>,
    /// Row-major in `j` then `i`: `values[j*(m+1)+i]`.
    pub values: Vec<f64>,
}

impl ScalarField2D {
    pub fn from_fn(grid: Arc<Grid2D>, f: impl Fn(f64, f64) -> f64) -> Self {
        let m = grid.m as i64;
        let mut values = Vec::with_capacity(grid.node_count());
        for j in 0..=m {
            for i in 0..=m {
                values.push(f(grid.x(i), grid.y(j)));
            }
        }
        Self { grid, values }
    }

    pub fn constant(grid: Arc<Grid2D>, c: f64) -> Self {
        let values = vec![c; grid.node_count()];
        Self { grid, values }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.idx(i, j)]
    }

    pub fn first_non_finite(&self) -> Option<usize> {
        self.values.iter().position(|v| !v.is_finite())
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "x,y,value")?;
        let m = self.grid.m;
        for j in 0..=m {
            for i in 0..=m {
                writeln!(
                    w,
                    "{:.17e},{:.17e},{:.17e}",
                    self.grid.x(i as i64),
                    self.grid.y(j as i64),
                    self.at(i, j)
                )?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VelocityField1D {
    pub grid: Arc<Grid1D>,
    pub v: Vec<f64>,
}

impl VelocityField1D {
    pub fn from_fn(grid: Arc<Grid1D>, f: impl Fn(f64) -> f64) -> Self {
        let v = (0..=grid.m as i64).map(|i| f(grid.x(i))).collect();
        Self { grid, v }
    }

    pub fn constant(grid: Arc<Grid1D>, v: f64) -> Self {
        let n = grid.node_count();
        Self { grid, v: vec![v; n] }
    }
}

#[derive(Debug, Clone)]
pub struct VelocityField2D {
    pub grid: Arc<Grid2D>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
}

impl VelocityField2D {
    pub fn from_fn(grid: Arc<Grid2D>, f: impl Fn(f64, f64) -> (f64, f64)) -> Self {
        let m = grid.m as i64;
        let mut v = Vec::with_capacity(grid.node_count());
        let mut w = Vec::with_capacity(grid.node_count());
        for j in 0..=m {
            for i in 0..=m {
                let (vi, wi) = f(grid.x(i), grid.y(j));
                v.push(vi);
                w.push(wi);
            }
        }
        Self { grid, v, w }
    }

    pub fn constant(grid: Arc<Grid2D>, v: f64, w: f64) -> Self {
        let n = grid.node_count();
        Self { grid, v: vec![v; n], w: vec![w; n] }
    }
}

/// Per-node signed Courant numbers `C_i = tau * V_i / h`.
#[derive(Debug, Clone)]
pub struct CourantField1D {
    pub grid: Arc<Grid1D>,
    pub c: Vec<f64>,
}

impl CourantField1D {
    pub fn new(vel: &VelocityField1D, tau: f64) -> Self {
        let s = tau / vel.grid.h;
        let c = vel.v.iter().map(|v| s * v).collect();
        Self { grid: vel.grid.clone(), c }
    }
}

/// Per-node signed Courant numbers `C_ij = tau*V_ij/h`, `D_ij = tau*W_ij/h`.
#[derive(Debug, Clone)]
pub struct CourantField2D {
    pub grid: Arc<Grid2D>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
}

impl CourantField2D {
    pub fn new(vel: &VelocityField2D, tau: f64) -> Self {
        let s = tau / vel.grid.h;
        let c = vel.v.iter().map(|v| s * v).collect();
        let d = vel.w.iter().map(|w| s * w).collect();
        Self { grid: vel.grid.clone(), c, d }
    }

    pub fn max_abs(&self) -> f64 {
        self.c
            .iter()
            .chain(self.d.iter())
            .fold(0.0f64, |a, &x| a.max(x.abs()))
    }
}

/// The kappa-weighted gradient `((1-k)(U_i - U_{i-1}) + (1+k)(U_{i+1} - U_i)) / (2h)`.
///
/// Divided-difference convention: the result has units of 1/length for all
/// kappa, in both dimensions.
pub fn kappa_gradient_1d(field: &ScalarField1D, i: usize, kappa: f64) -> Result<f64> {
    if i == 0 || i >= field.grid.m {
        return Err(Error::MissingNeighbor { i, j: 0, axis: 0 });
    }
    let u = &field.values;
    let d = 0.5 * (1.0 - kappa) * (u[i] - u[i - 1]) + 0.5 * (1.0 + kappa) * (u[i + 1] - u[i]);
    Ok(d / field.grid.h)
}

/// 2D analogue of [`kappa_gradient_1d`] along axis 0 (x) or 1 (y).
pub fn kappa_gradient_2d(
    field: &ScalarField2D,
    i: usize,
    j: usize,
    axis: usize,
    kappa: f64,
) -> Result<f64> {
    let m = field.grid.m;
    let (lo, hi, mid) = match axis {
        0 => {
            if i == 0 || i >= m {
                return Err(Error::MissingNeighbor { i, j, axis });
            }
            (field.at(i - 1, j), field.at(i + 1, j), field.at(i, j))
        }
        _ => {
            if j == 0 || j >= m {
                return Err(Error::MissingNeighbor { i, j, axis });
            }
            (field.at(i, j - 1), field.at(i, j + 1), field.at(i, j))
        }
    };
    let d = 0.5 * (1.0 - kappa) * (mid - lo) + 0.5 * (1.0 + kappa) * (hi - mid);
    Ok(d / field.grid.h)
}
