//! Numerical von Neumann analysis: Fourier symbols of the constant
//! coefficient schemes, amplification factors, and location of max |S| by
//! dense wavenumber scan plus derivative-free local refinement.

use std::io::Write;

use num_complex::Complex64;

use crate::error::Result;
use crate::kappa::{Kappa1D, Kappa2D};
use crate::scheme1d::{assemble_row_1d, Scheme1D};
use crate::scheme2d::{assemble_row_2d, Scheme2D};

/// Verdict tolerance on `max|S| - 1`: schemes with exactly `|S| = 1` must
/// pass, float noise must not flip them.
pub const STABILITY_TOL: f64 = 1e-9;
/// Default scan resolution per wavenumber axis.
pub const SCAN_RES_1D: usize = 512;
pub const SCAN_RES_2D: usize = 256;
/// Local refinement: restarts from this many best scan points, each with a
/// fixed evaluation budget.
const REFINE_STARTS: usize = 8;
const REFINE_BUDGET: usize = 200;

/// Offset -> coefficient maps of a constant-coefficient scheme instance;
/// 1D symbols use `dj = 0`. Diagonal (corner) offsets appear for CTU.
#[derive(Debug, Clone)]
pub struct FourierSymbol {
    pub alpha: Vec<((i64, i64), f64)>,
    pub beta: Vec<((i64, i64), f64)>,
    pub two_dim: bool,
}

/// Symbol of a 1D scheme at constant Courant number `c`.
pub fn symbol_1d(scheme: Scheme1D, c: f64, kappa: Kappa1D) -> FourierSymbol {
    let row = assemble_row_1d(scheme, kappa, &|_| c, 0);
    let pack = |coeffs: &[f64; 5]| -> Vec<((i64, i64), f64)> {
        (-2..=2)
            .filter_map(|k| {
                let v = coeffs[(k + 2) as usize];
                (v != 0.0).then_some(((k, 0), v))
            })
            .collect()
    };
    FourierSymbol { alpha: pack(&row.alpha), beta: pack(&row.beta), two_dim: false }
}

/// Symbol of a 2D scheme at constant Courant numbers `(c, d)`; the kappa
/// strategy is resolved at an interior node.
pub fn symbol_2d(scheme: Scheme2D, c: f64, d: f64, kappa: &Kappa2D) -> FourierSymbol {
    // interior node of a notional large grid: the override never triggers
    let (kx, ky) = kappa.eval_at(1 << 20, 1 << 10, 1 << 10, c, d);
    let row = assemble_row_2d(scheme, c, d, kx, ky);
    let mut alpha = row.alpha.entries();
    let mut beta = row.beta.entries();
    alpha.retain(|&(_, v)| v != 0.0);
    beta.retain(|&(_, v)| v != 0.0);
    FourierSymbol { alpha, beta, two_dim: true }
}

impl FourierSymbol {
    /// Amplification factor `S(theta)`; a vanishing denominator is reported
    /// as unbounded.
    pub fn amplification(&self, theta_x: f64, theta_y: f64) -> Complex64 {
        let phase = |k: i64, l: i64| {
            Complex64::from_polar(1.0, k as f64 * theta_x + l as f64 * theta_y)
        };
        let mut num = Complex64::new(1.0, 0.0);
        for &((k, l), v) in &self.beta {
            num += v * phase(k, l);
        }
        let mut den = Complex64::new(1.0, 0.0);
        for &((k, l), v) in &self.alpha {
            den += v * phase(k, l);
        }
        if den.norm_sqr() == 0.0 {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        num / den
    }

    #[inline]
    pub fn abs_s(&self, theta_x: f64, theta_y: f64) -> f64 {
        self.amplification(theta_x, theta_y).norm()
    }
}

#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub scheme: String,
    pub c: f64,
    pub d: f64,
    pub kappa_x: f64,
    pub kappa_y: f64,
    pub max_abs_s: f64,
    pub theta: (f64, f64),
    pub resolution: usize,
    pub refined: bool,
    pub stable: bool,
}

impl StabilityReport {
    pub fn verdict(&self) -> &'static str {
        if self.stable {
            "stable_tol"
        } else {
            "unstable"
        }
    }
}

/// Derivative-free coordinate search with shrinking step, maximizing `f`.
fn coordinate_search(
    f: &dyn Fn(&[f64]) -> f64,
    start: &[f64],
    step0: f64,
    budget: usize,
) -> (Vec<f64>, f64) {
    let mut x = start.to_vec();
    let mut best = f(&x);
    let mut step = step0;
    let mut evals = 1usize;
    while evals < budget && step > 1e-12 {
        let mut improved = false;
        for dim in 0..x.len() {
            for sgn in [1.0, -1.0] {
                let mut cand = x.clone();
                cand[dim] += sgn * step;
                let v = f(&cand);
                evals += 1;
                if v > best {
                    best = v;
                    x = cand;
                    improved = true;
                    break;
                }
                if evals >= budget {
                    return (x, best);
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, best)
}

fn wrap_theta(t: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut t = (t + std::f64::consts::PI).rem_euclid(two_pi) - std::f64::consts::PI;
    if t <= -std::f64::consts::PI {
        t += two_pi;
    }
    t
}

/// Dense scan of `|S|` over the wavenumber domain, then local maximization
/// launched from the best scan points.
pub fn max_amplification(
    symbol: &FourierSymbol,
    resolution: usize,
    refine: bool,
) -> (f64, (f64, f64)) {
    let pi = std::f64::consts::PI;
    let grid = |k: usize| -pi + 2.0 * pi * (k as f64 + 0.5) / resolution as f64;
    // keep the best few scan points as refinement seeds
    let mut top: Vec<(f64, (f64, f64))> = Vec::new();
    let mut push = |v: f64, t: (f64, f64)| {
        top.push((v, t));
        top.sort_by(|a, b| b.0.total_cmp(&a.0));
        top.truncate(REFINE_STARTS);
    };
    if symbol.two_dim {
        for kx in 0..resolution {
            for ky in 0..resolution {
                let t = (grid(kx), grid(ky));
                push(symbol.abs_s(t.0, t.1), t);
            }
        }
    } else {
        for k in 0..resolution {
            let t = (grid(k), 0.0);
            push(symbol.abs_s(t.0, t.1), t);
        }
    }
    // theta = 0 is always in the feasible set with S = 1
    push(symbol.abs_s(0.0, 0.0), (0.0, 0.0));
    let (mut best, mut best_theta) = top[0];
    if refine {
        let step0 = 2.0 * pi / resolution as f64;
        for &(_, seed) in top.iter() {
            let (x, v) = if symbol.two_dim {
                let f = |x: &[f64]| symbol.abs_s(x[0], x[1]);
                coordinate_search(&f, &[seed.0, seed.1], step0, REFINE_BUDGET)
            } else {
                let f = |x: &[f64]| symbol.abs_s(x[0], 0.0);
                let (x, v) = coordinate_search(&f, &[seed.0], step0, REFINE_BUDGET);
                (vec![x[0], 0.0], v)
            };
            if v > best {
                best = v;
                best_theta = (wrap_theta(x[0]), wrap_theta(x[1]));
            }
        }
    }
    (best, best_theta)
}

/// Full report for a 1D scheme instance.
pub fn analyze_1d(
    scheme: Scheme1D,
    c: f64,
    kappa: Kappa1D,
    resolution: usize,
    refine: bool,
) -> StabilityReport {
    let kx = kappa.eval(c);
    let sym = symbol_1d(scheme, c, kappa);
    let (max_abs_s, theta) = max_amplification(&sym, resolution, refine);
    StabilityReport {
        scheme: scheme.name().to_string(),
        c,
        d: 0.0,
        kappa_x: kx,
        kappa_y: 0.0,
        max_abs_s,
        theta,
        resolution,
        refined: refine,
        stable: max_abs_s <= 1.0 + STABILITY_TOL,
    }
}

/// Full report for a 2D scheme instance.
pub fn analyze_2d(
    scheme: Scheme2D,
    c: f64,
    d: f64,
    kappa: &Kappa2D,
    resolution: usize,
    refine: bool,
) -> StabilityReport {
    let (kx, ky) = kappa.eval_at(1 << 20, 1 << 10, 1 << 10, c, d);
    let sym = symbol_2d(scheme, c, d, kappa);
    let (max_abs_s, theta) = max_amplification(&sym, resolution, refine);
    StabilityReport {
        scheme: scheme.name(),
        c,
        d,
        kappa_x: kx,
        kappa_y: ky,
        max_abs_s,
        theta,
        resolution,
        refined: refine,
        stable: max_abs_s <= 1.0 + STABILITY_TOL,
    }
}

/// Worst-case amplification of a 2D scheme over the Courant box
/// `|C|, |D| <= limit`: coarse grid in (C, D), then coordinate search over
/// the Courant pair (each inner evaluation maximizes over wavenumbers).
/// This is what "maximal value of |S| for maximal Courant number L" means:
/// the peak is generally attained at an asymmetric (C, D) pair.
pub fn max_over_courant_box(
    scheme: Scheme2D,
    kappa: &Kappa2D,
    limit: f64,
    coarse_step: f64,
    resolution: usize,
) -> StabilityReport {
    let inner = |c: f64, d: f64, refine: bool| -> f64 {
        if c.abs() > limit || d.abs() > limit {
            return f64::NEG_INFINITY;
        }
        max_amplification(&symbol_2d(scheme, c, d, kappa), resolution, refine).0
    };
    let steps = (2.0 * limit / coarse_step).round() as usize;
    let mut top: Vec<(f64, (f64, f64))> = Vec::new();
    for i in 0..=steps {
        for j in 0..=steps {
            let c = -limit + i as f64 * coarse_step;
            let d = -limit + j as f64 * coarse_step;
            top.push((inner(c, d, false), (c, d)));
        }
    }
    top.sort_by(|a, b| b.0.total_cmp(&a.0));
    top.truncate(4);
    let mut best = top[0];
    for &(_, seed) in top.iter() {
        let f = |x: &[f64]| inner(x[0], x[1], true);
        let (x, v) = coordinate_search(&f, &[seed.0, seed.1], coarse_step, 80);
        if v > best.0 {
            best = (v, (x[0], x[1]));
        }
    }
    let (c, d) = best.1;
    analyze_2d(scheme, c, d, kappa, resolution, true)
}

/// Region CSV: one line per parameter point.
pub fn write_region_csv<W: Write>(reports: &[StabilityReport], w: &mut W) -> Result<()> {
    writeln!(w, "scheme,C,D,kappa_x,kappa_y,max_abs_S,theta_x,theta_y,verdict")?;
    for r in reports {
        writeln!(
            w,
            "{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{}",
            r.scheme, r.c, r.d, r.kappa_x, r.kappa_y, r.max_abs_s, r.theta.0, r.theta.1,
            r.verdict()
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_is_one_at_zero_wavenumber() {
        for scheme in [Scheme1D::Explicit, Scheme1D::Implicit, Scheme1D::SemiImplicit] {
            for &c in &[0.5, -2.0, 16.0] {
                let s = symbol_1d(scheme, c, Kappa1D::Constant(0.3));
                let v = s.amplification(0.0, 0.0);
                assert!((v.re - 1.0).abs() <= 1e-14 && v.im.abs() <= 1e-14);
            }
        }
        let s = symbol_2d(Scheme2D::CTU_A, 3.0, -2.0, &Kappa2D::K3);
        let v = s.amplification(0.0, 0.0);
        assert!((v.re - 1.0).abs() <= 1e-14 && v.im.abs() <= 1e-14);
    }

    #[test]
    fn identity_symbol_for_zero_courant() {
        let s = symbol_1d(Scheme1D::SemiImplicit, 0.0, Kappa1D::Constant(0.5));
        assert!(s.alpha.is_empty() && s.beta.is_empty());
        for &t in &[0.3, 2.5, -1.1] {
            assert!((s.abs_s(t, 0.0) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn one_sided_semi_implicit_symbol_hand_derivation() {
        // C = 0.5, kappa = sign(C) = 1:
        //   numerator 1 - 0.25 (e^{i t} - 1), denominator 1 + 0.25 (1 - e^{-i t})
        let s = symbol_1d(Scheme1D::SemiImplicit, 0.5, Kappa1D::SignOfVelocity(1.0));
        for &t in &[0.0, 0.7, -2.2, 3.0] {
            let e_p = Complex64::from_polar(1.0, t);
            let e_m = Complex64::from_polar(1.0, -t);
            let expect = (Complex64::new(1.0, 0.0) - 0.25 * (e_p - 1.0))
                / (Complex64::new(1.0, 0.0) + 0.25 * (Complex64::new(1.0, 0.0) - e_m));
            let got = s.amplification(t, 0.0);
            assert!((got - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let s1 = symbol_1d(Scheme1D::Implicit, 1.3, Kappa1D::Constant(-0.4));
        for &t in &[0.3, 1.9, 2.8] {
            assert!((s1.abs_s(t, 0.0) - s1.abs_s(-t, 0.0)).abs() <= 1e-13);
        }
        let s2 = symbol_2d(Scheme2D::CTU_B, 2.0, -3.0, &Kappa2D::K3);
        for &(tx, ty) in &[(0.4, 1.2), (2.0, -0.8)] {
            assert!((s2.abs_s(tx, ty) - s2.abs_s(-tx, -ty)).abs() <= 1e-13);
        }
    }

    #[test]
    fn refine_never_loses_to_scan() {
        let sym = symbol_1d(Scheme1D::Explicit, 0.9, Kappa1D::Constant(0.2));
        let (scan, _) = max_amplification(&sym, 128, false);
        let (refined, _) = max_amplification(&sym, 128, true);
        assert!(refined >= scan - 1e-12);
    }

    #[test]
    fn variant_b_one_sided_has_unit_modulus() {
        for &c in &[0.5, 2.0, 8.0, -3.0] {
            let s = symbol_1d(Scheme1D::SemiImplicitB, c, Kappa1D::SignOfVelocity(1.0));
            let (max_s, _) = max_amplification(&s, 256, true);
            assert!((max_s - 1.0).abs() <= 1e-11, "C = {c}: {max_s}");
        }
    }

    #[test]
    fn explicit_is_stable_at_courant_one_unstable_beyond() {
        let r = analyze_1d(Scheme1D::Explicit, 1.0, Kappa1D::Constant(0.0), 512, true);
        assert!((r.max_abs_s - 1.0).abs() <= 1e-9, "{}", r.max_abs_s);
        let r = analyze_1d(Scheme1D::Explicit, 1.3, Kappa1D::Constant(0.0), 512, true);
        assert!(!r.stable);
    }
}
