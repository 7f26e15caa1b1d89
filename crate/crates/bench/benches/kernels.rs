//! Microbenchmarks for the hot kernels: stencil assembly, one sweeping pass
//! over the implicit system, and a stability scan.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use advect_core::field::{CourantField2D, VelocityField2D};
use advect_core::grid::Grid2D;
use advect_core::profile::{exact_rotation, rotation_velocity};
use advect_core::scheme2d::assemble_2d;
use advect_core::stability::analyze_2d;
use advect_core::{BoundaryMode, Kappa2D, Profile, ScalarField2D, Scheme2D};

const M: usize = 80;

fn setup() -> (Arc<Grid2D>, CourantField2D, ScalarField2D) {
    let grid = Arc::new(Grid2D::new(-1.0, 1.0, M).unwrap());
    let tau = 1.0 / (5.0 * M as f64 / 2.0);
    let vel = VelocityField2D::from_fn(grid.clone(), rotation_velocity);
    let courant = CourantField2D::new(&vel, tau);
    let profile = Profile::Cubic;
    let u = ScalarField2D::from_fn(grid.clone(), |x, y| profile.eval(x, y));
    (grid, courant, u)
}

fn bench_assembly(c: &mut Criterion) {
    let (_, courant, _) = setup();
    c.bench_function("assemble_2d si2d+k3 M=80", |b| {
        b.iter(|| black_box(assemble_2d(Scheme2D::SemiImplicit, &courant, &Kappa2D::K3)))
    });
}

fn bench_sweep(c: &mut Criterion) {
    let (_, courant, u) = setup();
    let tau = 1.0 / (5.0 * M as f64 / 2.0);
    let profile = Profile::Cubic;
    let exact = |x: f64, y: f64, t: f64| exact_rotation(&profile, t, x, y);
    let stencil = assemble_2d(Scheme2D::SemiImplicit, &courant, &Kappa2D::K3);
    let sys = stencil.build_system(&u, &exact, 0.0, tau, BoundaryMode::GhostDirichlet).unwrap();
    c.bench_function("fast_sweeping_solve 1 sweep M=80", |b| {
        b.iter(|| {
            let mut x = u.values.clone();
            sys.fast_sweeping_solve(&mut x, 1).unwrap();
            black_box(x)
        })
    });
}

fn bench_stability_scan(c: &mut Criterion) {
    c.bench_function("analyze_2d si2d+k0 res=64", |b| {
        b.iter(|| {
            black_box(analyze_2d(Scheme2D::SemiImplicit, 8.0, 8.0, &Kappa2D::K0, 64, false))
        })
    });
}

criterion_group!(benches, bench_assembly, bench_sweep, bench_stability_scan);
criterion_main!(benches);
