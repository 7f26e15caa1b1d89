//! Dimension-by-dimension semi-implicit kappa-scheme for 2D advection and
//! its Corner Transport Upwind extensions.

use std::io::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{CourantField2D, ScalarField2D};
use crate::grid::Grid2D;
use crate::kappa::Kappa2D;
use crate::solver::{orderings_2d, StencilSystem, SystemBuilder};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme2D {
    SemiImplicit,
    /// CTU extension; `blend = 1` is variant A, `blend = 0` variant B, and
    /// intermediate values the convex combination of their explicit parts.
    Ctu { blend: f64 },
}

impl Scheme2D {
    pub const CTU_A: Scheme2D = Scheme2D::Ctu { blend: 1.0 };
    pub const CTU_B: Scheme2D = Scheme2D::Ctu { blend: 0.0 };

    pub fn name(&self) -> String {
        match self {
            Scheme2D::SemiImplicit => "si2d".into(),
            Scheme2D::Ctu { blend } if *blend == 1.0 => "ctu_a".into(),
            Scheme2D::Ctu { blend } if *blend == 0.0 => "ctu_b".into(),
            Scheme2D::Ctu { blend } => format!("ctu_blend({blend})"),
        }
    }

    pub fn by_name(name: &str) -> Option<Scheme2D> {
        Some(match name {
            "si2d" => Scheme2D::SemiImplicit,
            "ctu_a" | "ctu" => Scheme2D::CTU_A,
            "ctu_b" => Scheme2D::CTU_B,
            _ => return None,
        })
    }
}

/// One side (implicit or explicit) of a 2D stencil row: a center
/// coefficient, axis offsets -2..=2 (index `k+2`, center slot unused) and
/// the four corner offsets.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Row2D {
    pub c0: f64,
    pub x: [f64; 5],
    pub y: [f64; 5],
    /// corners indexed (-1,-1), (-1,+1), (+1,-1), (+1,+1)
    pub corners: [f64; 4],
}

#[inline]
fn corner_index(dx: i64, dy: i64) -> usize {
    (((dx + 1) / 2) * 2 + (dy + 1) / 2) as usize
}

impl Row2D {
    #[inline]
    fn add_x(&mut self, off: i64, v: f64) {
        if off == 0 {
            self.c0 += v;
        } else {
            self.x[(off + 2) as usize] += v;
        }
    }

    #[inline]
    fn add_y(&mut self, off: i64, v: f64) {
        if off == 0 {
            self.c0 += v;
        } else {
            self.y[(off + 2) as usize] += v;
        }
    }

    #[inline]
    fn add_corner(&mut self, dx: i64, dy: i64, v: f64) {
        self.corners[corner_index(dx, dy)] += v;
    }

    #[inline]
    fn add_kappa_x(&mut self, off: i64, kappa: f64, f: f64) {
        let a = 0.5 * (1.0 - kappa) * f;
        let b = 0.5 * (1.0 + kappa) * f;
        self.add_x(off - 1, -a);
        self.add_x(off, a);
        self.add_x(off, -b);
        self.add_x(off + 1, b);
    }

    #[inline]
    fn add_kappa_y(&mut self, off: i64, kappa: f64, f: f64) {
        let a = 0.5 * (1.0 - kappa) * f;
        let b = 0.5 * (1.0 + kappa) * f;
        self.add_y(off - 1, -a);
        self.add_y(off, a);
        self.add_y(off, -b);
        self.add_y(off + 1, b);
    }

    pub fn sum(&self) -> f64 {
        self.c0
            + self.x.iter().sum::<f64>()
            + self.y.iter().sum::<f64>()
            + self.corners.iter().sum::<f64>()
    }

    /// Visit all nonzero entries as `(di, dj, coeff)`; allocation-free for
    /// use in per-step hot loops.
    #[inline]
    pub fn for_each(&self, mut f: impl FnMut(i64, i64, f64)) {
        if self.c0 != 0.0 {
            f(0, 0, self.c0);
        }
        for k in [-2i64, -1, 1, 2] {
            let v = self.x[(k + 2) as usize];
            if v != 0.0 {
                f(k, 0, v);
            }
            let v = self.y[(k + 2) as usize];
            if v != 0.0 {
                f(0, k, v);
            }
        }
        for (idx, &(dx, dy)) in [(-1i64, -1i64), (-1, 1), (1, -1), (1, 1)].iter().enumerate() {
            if self.corners[idx] != 0.0 {
                f(dx, dy, self.corners[idx]);
            }
        }
    }

    /// All nonzero entries as `((di, dj), coeff)`.
    pub fn entries(&self) -> Vec<((i64, i64), f64)> {
        let mut out = Vec::new();
        self.for_each(|di, dj, v| out.push(((di, dj), v)));
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StencilRow2D {
    pub alpha: Row2D,
    pub beta: Row2D,
}

/// Assemble the row for a node with Courant numbers `(c, d)` and resolved
/// kappa values `(kx, ky)`. The row depends only on node-local data.
pub fn assemble_row_2d(scheme: Scheme2D, c: f64, d: f64, kx: f64, ky: f64) -> StencilRow2D {
    let mut row = StencilRow2D::default();
    let sx: i64 = if c < 0.0 { -1 } else { 1 };
    let sy: i64 = if d < 0.0 { -1 } else { 1 };

    // semi-implicit base: tau V (d_x^upwind U^{n+1} - 0.5 dk_x U^{n+1}_{i-+1,j}) + y-analogue
    if sx > 0 {
        row.alpha.add_x(0, c);
        row.alpha.add_x(-1, -c);
    } else {
        row.alpha.add_x(1, c);
        row.alpha.add_x(0, -c);
    }
    row.alpha.add_kappa_x(-sx, kx, -0.5 * c);
    if sy > 0 {
        row.alpha.add_y(0, d);
        row.alpha.add_y(-1, -d);
    } else {
        row.alpha.add_y(1, d);
        row.alpha.add_y(0, -d);
    }
    row.alpha.add_kappa_y(-sy, ky, -0.5 * d);
    row.beta.add_kappa_x(0, kx, -0.5 * c);
    row.beta.add_kappa_y(0, ky, -0.5 * d);

    if let Scheme2D::Ctu { blend } = scheme {
        let q = (c * d).abs();
        // implicit corner term, identical for both variants
        row.alpha.c0 += q / 6.0;
        row.alpha.add_corner(-sx, -sy, q / 6.0);
        row.alpha.add_x(-sx, -q / 6.0);
        row.alpha.add_y(-sy, -q / 6.0);
        // explicit corner terms: blend * variant A + (1 - blend) * variant B
        let qa = blend * q / 12.0;
        if qa != 0.0 {
            row.beta.c0 += 2.0 * qa;
            row.beta.add_corner(sx, sy, qa);
            row.beta.add_corner(-sx, -sy, qa);
            row.beta.add_x(1, -qa);
            row.beta.add_x(-1, -qa);
            row.beta.add_y(1, -qa);
            row.beta.add_y(-1, -qa);
        }
        let qb = (1.0 - blend) * q / 12.0;
        if qb != 0.0 {
            row.beta.c0 -= 2.0 * qb;
            row.beta.add_corner(-sx, sy, -qb);
            row.beta.add_corner(sx, -sy, -qb);
            row.beta.add_x(1, qb);
            row.beta.add_x(-1, qb);
            row.beta.add_y(1, qb);
            row.beta.add_y(-1, qb);
        }
    }
    row
}

/// How the scheme resolves implicit references at the domain edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMode {
    /// Implicit references outside the grid are folded into the right-hand
    /// side using the Dirichlet provider at the new time level (the provider
    /// then acts as a two-layer ghost source).
    GhostDirichlet,
    /// No ghost unknowns are tolerated: the kappa strategy must already keep
    /// the implicit stencil inside the domain (see
    /// [`crate::kappa::boundary_kappa_override`]); a violation is an error.
    NoGhost,
}

pub struct Stencil2D {
    pub grid: Arc<Grid2D>,
    pub scheme: Scheme2D,
    pub rows: Vec<StencilRow2D>,
}

pub fn assemble_2d(scheme: Scheme2D, courant: &CourantField2D, kappa: &Kappa2D) -> Stencil2D {
    let grid = courant.grid.clone();
    let m = grid.m;
    let mut rows = vec![StencilRow2D::default(); grid.node_count()];
    for j in 1..m {
        for i in 1..m {
            let p = grid.idx(i, j);
            let (c, d) = (courant.c[p], courant.d[p]);
            let (kx, ky) = kappa.eval_at(m, i, j, c, d);
            rows[p] = assemble_row_2d(scheme, c, d, kx, ky);
        }
    }
    Stencil2D { grid, scheme, rows }
}

impl Stencil2D {
    /// Build the linear system structure for one step with Dirichlet data
    /// `g(x, y, t)`. The matrix side is time-independent; the right-hand
    /// side is filled by [`Stencil2D::fill_rhs`], which callers may reuse
    /// across steps instead of rebuilding the whole system.
    pub fn build_system(
        &self,
        u_n: &ScalarField2D,
        g: &dyn Fn(f64, f64, f64) -> f64,
        t_n: f64,
        tau: f64,
        mode: BoundaryMode,
    ) -> Result<StencilSystem> {
        let grid = &self.grid;
        let m = grid.m as i64;
        let mut b = SystemBuilder::new(grid.node_count());
        let in_grid = |i: i64, j: i64| (0..=m).contains(&i) && (0..=m).contains(&j);
        for j in 0..=m {
            for i in 0..=m {
                let p = grid.idx(i as usize, j as usize);
                if i == 0 || i == m || j == 0 || j == m {
                    b.set_row(p, 1.0, vec![], 0.0);
                    continue;
                }
                let row = &self.rows[p];
                let mut off = Vec::with_capacity(12);
                for ((di, dj), v) in row.alpha.entries() {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ii, jj) = (i + di, j + dj);
                    if in_grid(ii, jj) {
                        off.push((grid.idx(ii as usize, jj as usize) as u32, v));
                    } else if mode == BoundaryMode::NoGhost {
                        return Err(Error::ImplicitGhost {
                            i: i as usize,
                            j: j as usize,
                        });
                    }
                    // GhostDirichlet: folded into the rhs per step
                }
                b.set_row(p, 1.0 + row.alpha.c0, off, 0.0);
            }
        }
        let mut sys = b.finish(orderings_2d(grid.m))?;
        self.fill_rhs(&mut sys.rhs, u_n, g, t_n, tau);
        Ok(sys)
    }

    /// Recompute the right-hand side for the step `t_n -> t_n + tau`:
    /// explicit side from `u_n` (ghost values from `g` at `t_n`), Dirichlet
    /// rows and implicit ghost folds from `g` at `t_n + tau`.
    pub fn fill_rhs(
        &self,
        rhs: &mut [f64],
        u_n: &ScalarField2D,
        g: &dyn Fn(f64, f64, f64) -> f64,
        t_n: f64,
        tau: f64,
    ) {
        let grid = &self.grid;
        let m = grid.m as i64;
        let t_next = t_n + tau;
        let in_grid = |i: i64, j: i64| (0..=m).contains(&i) && (0..=m).contains(&j);
        let u_old = |i: i64, j: i64| -> f64 {
            if in_grid(i, j) {
                u_n.values[grid.idx(i as usize, j as usize)]
            } else {
                g(grid.x(i), grid.y(j), t_n)
            }
        };
        for j in 0..=m {
            for i in 0..=m {
                let p = grid.idx(i as usize, j as usize);
                if i == 0 || i == m || j == 0 || j == m {
                    rhs[p] = g(grid.x(i), grid.y(j), t_next);
                    continue;
                }
                let row = &self.rows[p];
                let mut r = u_n.values[p];
                row.beta.for_each(|di, dj, v| r += v * u_old(i + di, j + dj));
                if i <= 2 || i >= m - 2 || j <= 2 || j >= m - 2 {
                    row.alpha.for_each(|di, dj, v| {
                        let (ii, jj) = (i + di, j + dj);
                        if !(di == 0 && dj == 0) && !in_grid(ii, jj) {
                            r -= v * g(grid.x(ii), grid.y(jj), t_next);
                        }
                    });
                }
                rhs[p] = r;
            }
        }
    }

    /// Debug CSV matching the 1D dump, extended with corner columns.
    pub fn dump_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        write!(w, "i,j,alpha_c0")?;
        for side in ["alpha", "beta"] {
            for k in [-2i64, -1, 1, 2] {
                write!(w, ",{side}_x{k}")?;
            }
            for k in [-2i64, -1, 1, 2] {
                write!(w, ",{side}_y{k}")?;
            }
            for (dx, dy) in [(-1, -1), (-1, 1), (1, -1), (1, 1)] {
                write!(w, ",{side}_d{dx}_{dy}")?;
            }
            if side == "alpha" {
                write!(w, ",beta_c0")?;
            }
        }
        writeln!(w)?;
        let m = self.grid.m;
        for j in 0..=m {
            for i in 0..=m {
                let r = &self.rows[self.grid.idx(i, j)];
                write!(w, "{i},{j},{:.17e}", r.alpha.c0)?;
                for side in [&r.alpha, &r.beta] {
                    for k in [-2i64, -1, 1, 2] {
                        write!(w, ",{:.17e}", side.x[(k + 2) as usize])?;
                    }
                    for k in [-2i64, -1, 1, 2] {
                        write!(w, ",{:.17e}", side.y[(k + 2) as usize])?;
                    }
                    for v in side.corners {
                        write!(w, ",{v:.17e}")?;
                    }
                    if std::ptr::eq(side, &r.alpha) {
                        write!(w, ",{:.17e}", r.beta.c0)?;
                    }
                }
                writeln!(w)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct StepDiag2D {
    pub step: usize,
    pub sweeps_used: usize,
    pub final_residual: f64,
    pub min: f64,
    pub max: f64,
}

/// Apply `steps` steps; the stencil is assembled once (velocity is
/// time-independent) and only the right-hand side is rebuilt per step.
#[allow(clippy::too_many_arguments)]
pub fn advance_2d(
    u0: &ScalarField2D,
    courant: &CourantField2D,
    tau: f64,
    steps: usize,
    scheme: Scheme2D,
    kappa: &Kappa2D,
    mode: BoundaryMode,
    max_sweeps: usize,
    g: &dyn Fn(f64, f64, f64) -> f64,
    mut on_step: impl FnMut(&ScalarField2D, &StepDiag2D),
) -> Result<ScalarField2D> {
    let stencil = assemble_2d(scheme, courant, kappa);
    let mut u = u0.clone();
    let mut sys = stencil.build_system(&u, g, 0.0, tau, mode)?;
    for n in 0..steps {
        let t_n = n as f64 * tau;
        if n > 0 {
            let mut rhs = std::mem::take(&mut sys.rhs);
            stencil.fill_rhs(&mut rhs, &u, g, t_n, tau);
            sys.rhs = rhs;
        }
        let report = sys.fast_sweeping_solve(&mut u.values, max_sweeps)?;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &v in &u.values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        on_step(
            &u,
            &StepDiag2D {
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
