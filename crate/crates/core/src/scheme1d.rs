//! One time step of the fully explicit, fully implicit, semi-implicit and
//! variant-B semi-implicit kappa-schemes for 1D advection, assembled as
//! stencil rows over the general two-level five-point form
//! `U_i^{n+1} + sum_k alpha_ik U_{i+k}^{n+1} = U_i^n + sum_k beta_ik U_{i+k}^n`.

use std::io::Write;
use std::sync::Arc;

use crate::error::Result;
use crate::field::{CourantField1D, ScalarField1D};
use crate::grid::Grid1D;
use crate::kappa::Kappa1D;
use crate::solver::{orderings_1d, StencilSystem, SystemBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme1D {
    Explicit,
    Implicit,
    SemiImplicit,
    SemiImplicitB,
}

impl Scheme1D {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme1D::Explicit => "explicit",
            Scheme1D::Implicit => "implicit",
            Scheme1D::SemiImplicit => "si1d",
            Scheme1D::SemiImplicitB => "si1d_b",
        }
    }
}

/// Coefficients of one row; offset `k in -2..=2` is stored at index `k+2`.
/// The solved system's diagonal is `1 + alpha[2]`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StencilRow1D {
    pub alpha: [f64; 5],
    pub beta: [f64; 5],
}

#[inline]
fn add(row: &mut [f64; 5], off: i64, v: f64) {
    row[(off + 2) as usize] += v;
}

/// Accumulate `f * (kappa-difference at relative offset off)`:
/// `f * (0.5(1-k)(U_off - U_{off-1}) + 0.5(1+k)(U_{off+1} - U_off))`.
#[inline]
fn add_kappa(row: &mut [f64; 5], off: i64, kappa: f64, f: f64) {
    let a = 0.5 * (1.0 - kappa) * f;
    let b = 0.5 * (1.0 + kappa) * f;
    add(row, off - 1, -a);
    add(row, off, a);
    add(row, off, -b);
    add(row, off + 1, b);
}

/// Assemble the row at node `i` given the Courant numbers `c_at` around it.
///
/// All differences carry their 1/h in the Courant numbers, so the row is a
/// pure function of the local (dimensionless) Courant values and kappa.
pub fn assemble_row_1d(
    scheme: Scheme1D,
    kappa: Kappa1D,
    c_at: &dyn Fn(i64) -> f64,
    i: i64,
) -> StencilRow1D {
    let mut row = StencilRow1D::default();
    let ci = c_at(i);
    let cp = ci.max(0.0);
    let cm = ci.min(0.0);
    let si: i64 = if ci < 0.0 { -1 } else { 1 };
    let ki = kappa.eval(ci);

    match scheme {
        Scheme1D::Explicit => {
            // - C+ * d-( U + 0.5(1-C) dk U ) - C- * d+( U - 0.5(1+C) dk U ),
            // coefficients frozen per node inside the outer difference
            for (p, w) in [(i, -cp), (i - 1, cp)] {
                let cn = c_at(p);
                add(&mut row.beta, p - i, w);
                add_kappa(&mut row.beta, p - i, kappa.eval(cn), w * 0.5 * (1.0 - cn));
            }
            for (p, w) in [(i + 1, -cm), (i, cm)] {
                let cn = c_at(p);
                add(&mut row.beta, p - i, w);
                add_kappa(&mut row.beta, p - i, kappa.eval(cn), -w * 0.5 * (1.0 + cn));
            }
        }
        Scheme1D::Implicit => {
            for (p, w) in [(i, cp), (i - 1, -cp)] {
                let cn = c_at(p);
                add(&mut row.alpha, p - i, w);
                add_kappa(&mut row.alpha, p - i, kappa.eval(cn), w * 0.5 * (1.0 + cn));
            }
            for (p, w) in [(i + 1, cm), (i, -cm)] {
                let cn = c_at(p);
                add(&mut row.alpha, p - i, w);
                add_kappa(&mut row.alpha, p - i, kappa.eval(cn), -w * 0.5 * (1.0 - cn));
            }
        }
        Scheme1D::SemiImplicit => {
            // C ( d_upwind U^{n+1} - 0.5 dk U^{n+1}_{i -+ 1} ) on the left,
            // -0.5 C dk U^n_i on the right
            if si > 0 {
                add(&mut row.alpha, 0, ci);
                add(&mut row.alpha, -1, -ci);
            } else {
                add(&mut row.alpha, 1, ci);
                add(&mut row.alpha, 0, -ci);
            }
            add_kappa(&mut row.alpha, -si, ki, -0.5 * ci);
            add_kappa(&mut row.beta, 0, ki, -0.5 * ci);
        }
        Scheme1D::SemiImplicitB => {
            add_kappa(&mut row.alpha, 0, ki, 0.5 * ci);
            if si > 0 {
                add(&mut row.beta, 0, -ci);
                add(&mut row.beta, -1, ci);
            } else {
                add(&mut row.beta, 1, -ci);
                add(&mut row.beta, 0, ci);
            }
            add_kappa(&mut row.beta, -si, ki, 0.5 * ci);
        }
    }
    row
}

/// Assembled rows for every node of a grid. Boundary nodes (`i = 0, m`) are
/// Dirichlet and carry zero rows.
pub struct Stencil1D {
    pub grid: Arc<Grid1D>,
    pub scheme: Scheme1D,
    pub rows: Vec<StencilRow1D>,
}

pub fn assemble_1d(scheme: Scheme1D, courant: &CourantField1D, kappa: Kappa1D) -> Stencil1D {
    let grid = courant.grid.clone();
    let m = grid.m;
    let c_at = |p: i64| courant.c[p as usize];
    let mut rows = vec![StencilRow1D::default(); m + 1];
    for i in 1..m {
        rows[i] = assemble_row_1d(scheme, kappa, &c_at, i as i64);
    }
    Stencil1D { grid, scheme, rows }
}

impl Stencil1D {
    /// Build the linear system for one step `t_n -> t_n + tau`.
    ///
    /// `g(x, t)` provides Dirichlet data; references the stencil makes to
    /// nodes outside `0..=m` are resolved through `g` at the matching time
    /// level (ghost values on the explicit side, folded into the right-hand
    /// side on the implicit side).
    pub fn build_system(
        &self,
        u_n: &ScalarField1D,
        g: &dyn Fn(f64, f64) -> f64,
        t_n: f64,
        tau: f64,
    ) -> Result<StencilSystem> {
        let m = self.grid.m;
        let t_next = t_n + tau;
        let mut b = SystemBuilder::new(m + 1);
        let u_old = |p: i64| -> f64 {
            if (0..=m as i64).contains(&p) {
                u_n.values[p as usize]
            } else {
                g(self.grid.x(p), t_n)
            }
        };
        b.set_row(0, 1.0, vec![], g(self.grid.x(0), t_next));
        b.set_row(m, 1.0, vec![], g(self.grid.x(m as i64), t_next));
        for i in 1..m {
            let row = &self.rows[i];
            let mut rhs = u_n.values[i];
            let mut off = Vec::with_capacity(4);
            for k in -2i64..=2 {
                let bv = row.beta[(k + 2) as usize];
                if bv != 0.0 {
                    rhs += bv * u_old(i as i64 + k);
                }
                if k != 0 {
                    let av = row.alpha[(k + 2) as usize];
                    if av != 0.0 {
                        let p = i as i64 + k;
                        if (0..=m as i64).contains(&p) {
                            off.push((p as u32, av));
                        } else {
                            rhs -= av * g(self.grid.x(p), t_next);
                        }
                    }
                }
            }
            b.set_row(i, 1.0 + row.alpha[2], off, rhs);
        }
        b.finish(orderings_1d(m + 1))
    }

    /// Debug CSV: `i, alpha[-2..2], beta[-2..2]` per row.
    pub fn dump_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(
            w,
            "i,alpha_m2,alpha_m1,alpha_0,alpha_p1,alpha_p2,beta_m2,beta_m1,beta_0,beta_p1,beta_p2"
        )?;
        for (i, r) in self.rows.iter().enumerate() {
            write!(w, "{i}")?;
            for v in r.alpha.iter().chain(r.beta.iter()) {
                write!(w, ",{v:.17e}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Diagnostics recorded after each time step.
#[derive(Debug, Clone, Copy)]
pub struct StepDiag {
    pub step: usize,
    pub sweeps_used: usize,
    pub final_residual: f64,
    pub min: f64,
    pub max: f64,
}

/// Apply `steps` steps of the scheme starting from `u0`.
///
/// `on_step` observes the state after each step (step index is 1-based).
pub fn advance_1d(
    u0: &ScalarField1D,
    courant: &CourantField1D,
    tau: f64,
    steps: usize,
    scheme: Scheme1D,
    kappa: Kappa1D,
    max_sweeps: usize,
    g: &dyn Fn(f64, f64) -> f64,
    mut on_step: impl FnMut(&ScalarField1D, &StepDiag),
) -> Result<ScalarField1D> {
    let stencil = assemble_1d(scheme, courant, kappa);
    let mut u = u0.clone();
    for n in 0..steps {
        let t_n = n as f64 * tau;
        let sys = stencil.build_system(&u, g, t_n, tau)?;
        let report = sys.fast_sweeping_solve(&mut u.values, max_sweeps)?;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &v in &u.values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        on_step(
            &u,
            &StepDiag {
                step: n + 1,
                sweeps_used: report.sweeps_used,
                final_residual: report.final_residual,
                min: lo,
                max: hi,
            },
        );
    }
    Ok(u)
}

/// One fully explicit step; no system solve is involved (the assembled
/// system is diagonal, one pass reproduces the update exactly).
pub fn explicit_kappa_step(
    u_n: &ScalarField1D,
    courant: &CourantField1D,
    kappa: Kappa1D,
    g: &dyn Fn(f64, f64) -> f64,
    t_n: f64,
    tau: f64,
) -> Result<ScalarField1D> {
    let stencil = assemble_1d(Scheme1D::Explicit, courant, kappa);
    let sys = stencil.build_system(u_n, g, t_n, tau)?;
    let mut u = u_n.clone();
    sys.gauss_seidel_pass(&mut u.values, 0);
    Ok(u)
}
