//! Uniform Cartesian grids in one and two dimensions.
//!
//! Nodes are always computed as `x_min + i * h`, never by accumulation, so
//! `x[i] - x[i-1] == h` holds exactly in floating point.

use crate::error::{Error, Result};

/// Uniform 1D grid with nodes `x_i = x_min + i*h`, `i = 0..=m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    /// Number of node intervals; the grid carries `m + 1` nodes.
    pub m: usize,
    pub h: f64,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, m: usize) -> Result<Self> {
        if x_max <= x_min {
            return Err(Error::DegenerateDomain { x_min, x_max });
        }
        if m < 4 {
            return Err(Error::GridTooSmall { m });
        }
        let h = (x_max - x_min) / m as f64;
        Ok(Self { x_min, x_max, m, h })
    }

    #[inline]
    pub fn x(&self, i: i64) -> f64 {
        // callable for ghost indices outside 0..=m as well
        self.x_min + i as f64 * self.h
    }

    pub fn node_count(&self) -> usize {
        self.m + 1
    }
}

/// Uniform square 2D grid: nodes `(x_i, y_j)`, `i, j = 0..=m`, one spacing
/// `h` shared by both axes.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub x_min: f64,
    pub x_max: f64,
    pub m: usize,
    pub h: f64,
}

impl Grid2D {
    pub fn new(x_min: f64, x_max: f64, m: usize) -> Result<Self> {
        let g = Grid1D::new(x_min, x_max, m)?;
        Ok(Self { x_min, x_max, m, h: g.h })
    }

    #[inline]
    pub fn x(&self, i: i64) -> f64 {
        self.x_min + i as f64 * self.h
    }

    #[inline]
    pub fn y(&self, j: i64) -> f64 {
        self.x_min + j as f64 * self.h
    }

    /// Linear index, row-major in `j` then `i`.
    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * (self.m + 1) + i
    }

    pub fn node_count(&self) -> usize {
        (self.m + 1) * (self.m + 1)
    }
}

/// Time discretization `t^n = n * tau`, `n = 0..=steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeStepping {
    pub tau: f64,
    pub steps: usize,
}

impl TimeStepping {
    pub fn new(tau: f64, steps: usize) -> Result<Self> {
        if !(tau > 0.0) || steps < 1 {
            return Err(Error::InvalidTimeStepping { tau, steps });
        }
        Ok(Self { tau, steps })
    }

    /// Uniform steps reaching `t_end` in `steps` steps.
    pub fn to_final_time(t_end: f64, steps: usize) -> Result<Self> {
        Self::new(t_end / steps as f64, steps)
    }

    #[inline]
    pub fn t(&self, n: usize) -> f64 {
        n as f64 * self.tau
    }
}
