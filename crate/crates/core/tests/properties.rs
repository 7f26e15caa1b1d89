//! Structural properties of the stencil assemblies and Fourier symbols,
//! randomized where the claim holds for arbitrary parameters.

use std::sync::Arc;

use advect_core::field::{kappa_gradient_1d, CourantField1D, CourantField2D};
use advect_core::scheme1d::{advance_1d, assemble_row_1d, StencilRow1D};
use advect_core::scheme2d::{advance_2d, assemble_row_2d};
use advect_core::stability::{symbol_1d, symbol_2d};
use advect_core::{
    BoundaryMode, Grid1D, Grid2D, Kappa1D, Kappa2D, ScalarField1D, ScalarField2D, Scheme1D,
    Scheme2D, VelocityField1D, VelocityField2D,
};
use proptest::prelude::*;

fn row_1d(scheme: Scheme1D, c: f64, kappa: f64) -> StencilRow1D {
    assemble_row_1d(scheme, Kappa1D::Constant(kappa), &|_| c, 0)
}

fn assert_row_close(got: &StencilRow1D, alpha: [f64; 5], beta: [f64; 5], tol: f64) {
    for k in 0..5 {
        assert!(
            (got.alpha[k] - alpha[k]).abs() <= tol,
            "alpha[{k}]: got {}, want {}",
            got.alpha[k],
            alpha[k]
        );
        assert!(
            (got.beta[k] - beta[k]).abs() <= tol,
            "beta[{k}]: got {}, want {}",
            got.beta[k],
            beta[k]
        );
    }
}

// --- reduction identities for constant V > 0 -------------------------------
// Offsets are stored as index k+2 for k in -2..=2.

#[test]
fn semi_implicit_with_upwind_kappa_is_the_lax_wendroff_split() {
    for c in [0.3, 0.5, 1.0, 2.5] {
        let r = row_1d(Scheme1D::SemiImplicit, c, 1.0);
        // U + C/2 (U_i - U_{i-1})^{n+1} = U^n - C/2 (U_{i+1} - U_i)^n
        let a = [0.0, -0.5 * c, 0.5 * c, 0.0, 0.0];
        let b = [0.0, 0.0, 0.5 * c, -0.5 * c, 0.0];
        assert_row_close(&r, a, b, 1e-14);
        // mirrored for negative velocity
        let r = row_1d(Scheme1D::SemiImplicit, -c, -1.0);
        let a = [0.0, 0.0, 0.5 * c, -0.5 * c, 0.0];
        let b = [0.0, -0.5 * c, 0.5 * c, 0.0, 0.0];
        assert_row_close(&r, a, b, 1e-14);
    }
}

#[test]
fn semi_implicit_with_central_kappa_matches_the_fromm_split() {
    for c in [0.4, 1.0, 3.0] {
        let r = row_1d(Scheme1D::SemiImplicit, c, 0.0);
        // implicit side C/4 (3 U_i - 4 U_{i-1} + U_{i-2}), explicit side
        // -C/4 (U_{i+1} - U_{i-1})
        let a = [0.25 * c, -c, 0.75 * c, 0.0, 0.0];
        let b = [0.0, 0.25 * c, 0.0, -0.25 * c, 0.0];
        assert_row_close(&r, a, b, 1e-14);
    }
}

#[test]
fn explicit_with_kappa_one_is_lax_wendroff() {
    for c in [0.2, 0.5, 0.9] {
        let r = row_1d(Scheme1D::Explicit, c, 1.0);
        // U^{n+1} = U^n - C/2 (U_{i+1} - U_{i-1}) + C^2/2 (U_{i+1} - 2U_i + U_{i-1})
        let b = [
            0.0,
            0.5 * c + 0.5 * c * c,
            -c * c,
            -0.5 * c + 0.5 * c * c,
            0.0,
        ];
        assert_row_close(&r, [0.0; 5], b, 1e-14);
    }
}

#[test]
fn explicit_with_kappa_zero_is_fromm() {
    for c in [0.2, 0.5, 0.9] {
        let r = row_1d(Scheme1D::Explicit, c, 0.0);
        // U^{n+1} = U^n - C (U_i - U_{i-1}) - C(1-C)/4 (U_{i+1} - U_i - U_{i-1} + U_{i-2})
        let q = 0.25 * c * (1.0 - c);
        let b = [-q, c + q, -c + q, -q, 0.0];
        assert_row_close(&r, [0.0; 5], b, 1e-14);
    }
}

// --- gradient exactness -----------------------------------------------------

proptest! {
    #[test]
    fn kappa_gradient_is_exact_on_linear_data(
        slope in -10.0..10.0f64,
        intercept in -5.0..5.0f64,
        kappa in -1.0..1.0f64,
        m in 4usize..40,
    ) {
        let grid = Arc::new(Grid1D::new(-1.0, 1.0, m).unwrap());
        let f = ScalarField1D::from_fn(grid, |x| slope * x + intercept);
        for i in 2..m - 1 {
            let g = kappa_gradient_1d(&f, i, kappa).unwrap();
            prop_assert!((g - slope).abs() <= 1e-12 * (1.0 + slope.abs()));
        }
    }

    #[test]
    fn kappa_gradient_endpoints_are_one_sided_and_central_differences(
        vals in proptest::collection::vec(-5.0..5.0f64, 7),
    ) {
        let m = vals.len() - 1;
        let grid = Arc::new(Grid1D::new(0.0, 1.0, m).unwrap());
        let h = grid.h;
        let vs = vals.clone();
        let f = ScalarField1D::from_fn(grid, move |x| vs[(x / h).round() as usize]);
        for i in 2..m - 1 {
            let back = (vals[i] - vals[i - 1]) / h;
            let fwd = (vals[i + 1] - vals[i]) / h;
            let cen = (vals[i + 1] - vals[i - 1]) / (2.0 * h);
            prop_assert!((kappa_gradient_1d(&f, i, -1.0).unwrap() - back).abs() <= 1e-11);
            prop_assert!((kappa_gradient_1d(&f, i, 1.0).unwrap() - fwd).abs() <= 1e-11);
            prop_assert!((kappa_gradient_1d(&f, i, 0.0).unwrap() - cen).abs() <= 1e-11);
        }
    }

    // every row keeps constants fixed: sum(alpha) = sum(beta)
    #[test]
    fn rows_preserve_constants(
        c in -3.0..3.0f64,
        d in -3.0..3.0f64,
        kx in -1.0..1.0f64,
        ky in -1.0..1.0f64,
    ) {
        for scheme in [
            Scheme1D::Explicit,
            Scheme1D::Implicit,
            Scheme1D::SemiImplicit,
            Scheme1D::SemiImplicitB,
        ] {
            let r = row_1d(scheme, c, kx);
            let sa: f64 = r.alpha.iter().sum();
            let sb: f64 = r.beta.iter().sum();
            prop_assert!((sa - sb).abs() <= 1e-13, "{scheme:?}: {sa} vs {sb}");
        }
        for scheme in [
            Scheme2D::SemiImplicit,
            Scheme2D::CTU_A,
            Scheme2D::CTU_B,
            Scheme2D::Ctu { blend: 0.5 },
        ] {
            let r = assemble_row_2d(scheme, c, d, kx, ky);
            let sa = r.alpha.sum();
            let sb = r.beta.sum();
            prop_assert!((sa - sb).abs() <= 1e-13, "{}: {sa} vs {sb}", scheme.name());
        }
    }

    // 2D scheme with W = 0 collapses to the 1D scheme along x
    #[test]
    fn vanishing_second_velocity_reduces_to_1d(
        c in -3.0..3.0f64,
        kx in -1.0..1.0f64,
        ky in -1.0..1.0f64,
    ) {
        for (s2, s1) in [
            (Scheme2D::SemiImplicit, Scheme1D::SemiImplicit),
            (Scheme2D::CTU_A, Scheme1D::SemiImplicit),
            (Scheme2D::CTU_B, Scheme1D::SemiImplicit),
        ] {
            let r2 = assemble_row_2d(s2, c, 0.0, kx, ky);
            let r1 = row_1d(s1, c, kx);
            prop_assert!((r2.alpha.c0 - r1.alpha[2]).abs() <= 1e-14);
            prop_assert!((r2.beta.c0 - r1.beta[2]).abs() <= 1e-14);
            for k in [-2i64, -1, 1, 2] {
                prop_assert!((r2.alpha.x[(k + 2) as usize] - r1.alpha[(k + 2) as usize]).abs() <= 1e-14);
                prop_assert!((r2.beta.x[(k + 2) as usize] - r1.beta[(k + 2) as usize]).abs() <= 1e-14);
                prop_assert_eq!(r2.alpha.y[(k + 2) as usize], 0.0);
                prop_assert_eq!(r2.beta.y[(k + 2) as usize], 0.0);
            }
            for ((di, dj), v) in r2.alpha.entries().into_iter().chain(r2.beta.entries()) {
                prop_assert!(dj == 0 || v == 0.0, "({},{}) -> {}", di, dj, v);
            }
        }
    }

    // the corner-transport terms carry a factor C*D and vanish whenever one
    // Courant number is zero
    #[test]
    fn corner_transport_degenerates_without_cross_flow(
        c in -3.0..3.0f64,
        kx in -1.0..1.0f64,
        ky in -1.0..1.0f64,
        axis in 0usize..2,
    ) {
        let (cc, dd) = if axis == 0 { (c, 0.0) } else { (0.0, c) };
        for scheme in [Scheme2D::CTU_A, Scheme2D::CTU_B, Scheme2D::Ctu { blend: 0.3 }] {
            let ctu = assemble_row_2d(scheme, cc, dd, kx, ky);
            let base = assemble_row_2d(Scheme2D::SemiImplicit, cc, dd, kx, ky);
            prop_assert_eq!(&ctu, &base, "{}", scheme.name());
        }
    }

    // the Fourier symbol is the interior stencil row of a constant-velocity
    // assembly, so S(0) = 1 and |S| is even in theta
    #[test]
    fn symbol_is_normalized_and_conjugate_symmetric(
        c in -4.0..4.0f64,
        d in -4.0..4.0f64,
        kx in -1.0..1.0f64,
        ky in -1.0..1.0f64,
        tx in -3.1..3.1f64,
        ty in -3.1..3.1f64,
    ) {
        for scheme in [Scheme1D::Explicit, Scheme1D::Implicit, Scheme1D::SemiImplicit, Scheme1D::SemiImplicitB] {
            let sym = symbol_1d(scheme, c, Kappa1D::Constant(kx));
            let s0 = sym.amplification(0.0, 0.0);
            prop_assert!((s0.re - 1.0).abs() <= 1e-14 && s0.im.abs() <= 1e-14);
            prop_assert!((sym.abs_s(tx, 0.0) - sym.abs_s(-tx, 0.0)).abs() <= 1e-13);
        }
        let kappa = Kappa2D::Constant(kx, ky);
        for scheme in [Scheme2D::SemiImplicit, Scheme2D::CTU_A, Scheme2D::CTU_B] {
            let sym = symbol_2d(scheme, c, d, &kappa);
            let s0 = sym.amplification(0.0, 0.0);
            prop_assert!((s0.re - 1.0).abs() <= 1e-14 && s0.im.abs() <= 1e-14);
            prop_assert!((sym.abs_s(tx, ty) - sym.abs_s(-tx, -ty)).abs() <= 1e-13);
        }
    }

    #[test]
    fn symbol_matches_interior_stencil_row(
        c in -4.0..4.0f64,
        d in -4.0..4.0f64,
        kx in -1.0..1.0f64,
        ky in -1.0..1.0f64,
    ) {
        let kappa = Kappa2D::Constant(kx, ky);
        for scheme in [Scheme2D::SemiImplicit, Scheme2D::CTU_A, Scheme2D::CTU_B] {
            let sym = symbol_2d(scheme, c, d, &kappa);
            let row = assemble_row_2d(scheme, c, d, kx, ky);
            for &((di, dj), v) in &sym.alpha {
                let want = if di == 0 && dj == 0 {
                    row.alpha.c0
                } else {
                    row.alpha.entries().iter().find(|(o, _)| *o == (di, dj)).map_or(0.0, |e| e.1)
                };
                prop_assert_eq!(v, want, "alpha ({},{})", di, dj);
            }
            for &((di, dj), v) in &sym.beta {
                let want = if di == 0 && dj == 0 {
                    row.beta.c0
                } else {
                    row.beta.entries().iter().find(|(o, _)| *o == (di, dj)).map_or(0.0, |e| e.1)
                };
                prop_assert_eq!(v, want, "beta ({},{})", di, dj);
            }
        }
    }
}

// --- constant fields are fixed points of full time stepping -----------------

#[test]
fn constant_field_is_a_fixed_point_1d() {
    let grid = Arc::new(Grid1D::new(-1.0, 1.0, 24).unwrap());
    let vel = VelocityField1D::from_fn(grid.clone(), |x| 1.5 * (3.0 * x).sin() - 0.4);
    let courant = CourantField1D::new(&vel, 0.05);
    let u0 = ScalarField1D::constant(grid, 0.7);
    for scheme in [
        Scheme1D::Explicit,
        Scheme1D::Implicit,
        Scheme1D::SemiImplicit,
        Scheme1D::SemiImplicitB,
    ] {
        let u = advance_1d(
            &u0,
            &courant,
            0.05,
            5,
            scheme,
            Kappa1D::Constant(0.3),
            3,
            &|_, _| 0.7,
            |_, _| {},
        )
        .unwrap();
        for &v in &u.values {
            assert!((v - 0.7).abs() <= 1e-13, "{scheme:?}: {v}");
        }
    }
}

#[test]
fn constant_field_is_a_fixed_point_2d() {
    let grid = Arc::new(Grid2D::new(-1.0, 1.0, 12).unwrap());
    let vel = VelocityField2D::from_fn(grid.clone(), |x, y| (y - 0.2, 0.5 - x));
    let courant = CourantField2D::new(&vel, 0.05);
    let u0 = ScalarField2D::constant(grid, -1.3);
    for scheme in [Scheme2D::SemiImplicit, Scheme2D::CTU_A, Scheme2D::CTU_B] {
        let u = advance_2d(
            &u0,
            &courant,
            0.05,
            4,
            scheme,
            &Kappa2D::K3,
            BoundaryMode::GhostDirichlet,
            3,
            &|_, _, _| -1.3,
            |_, _| {},
        )
        .unwrap();
        for &v in &u.values {
            assert!((v + 1.3).abs() <= 1e-13, "{}: {v}", scheme.name());
        }
    }
}

// single-signed velocity makes the semi-implicit system triangular: one
// ordered pass solves it to round-off
#[test]
fn single_signed_systems_solve_in_one_pass() {
    let grid = Arc::new(Grid1D::new(-1.0, 1.0, 40).unwrap());
    for v in [1.0, -1.0] {
        let vel = VelocityField1D::constant(grid.clone(), v * 0.9);
        let courant = CourantField1D::new(&vel, 0.1);
        let u0 = ScalarField1D::from_fn(grid.clone(), |x| (2.0 * x).sin());
        let mut worst = 0.0f64;
        advance_1d(
            &u0,
            &courant,
            0.1,
            3,
            Scheme1D::SemiImplicit,
            Kappa1D::Constant(0.4),
            1,
            &|x, t| (2.0 * (x - v * 0.9 * t)).sin(),
            |_, diag| worst = worst.max(diag.final_residual),
        )
        .unwrap();
        assert!(worst <= 1e-13, "one-pass residual {worst}");
    }
}
