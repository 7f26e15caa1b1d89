//! Semi-implicit kappa-schemes for the linear advection equation on uniform
//! Cartesian grids, with a numerical von Neumann stability analyzer, a
//! fast-sweeping Gauss-Seidel solver and a benchmark harness.

pub mod banded;
pub mod bench;
pub mod error;
pub mod field;
pub mod grid;
pub mod kappa;
pub mod profile;
pub mod scheme1d;
pub mod scheme2d;
pub mod solver;
pub mod stability;

pub use error::{Error, Result};
pub use field::{
    CourantField1D, CourantField2D, ScalarField1D, ScalarField2D, VelocityField1D, VelocityField2D,
};
pub use grid::{Grid1D, Grid2D, TimeStepping};
pub use kappa::{boundary_kappa_override, Kappa1D, Kappa2D, ThirdOrderVariant};
pub use profile::Profile;
pub use scheme1d::Scheme1D;
pub use scheme2d::{BoundaryMode, Scheme2D};
