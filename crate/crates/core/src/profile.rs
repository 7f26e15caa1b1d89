//! Initial profiles, analytic velocity fields and exact solutions for the
//! benchmark problems.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Bivariate polynomial with terms `x^p y^q`, `p + q <= degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    pub degree: u32,
    /// Coefficients in the order produced by iterating `p` then `q`.
    pub coeffs: Vec<f64>,
}

impl Poly2 {
    /// Coefficients drawn uniformly from [-1, 1]; the seed is part of the
    /// profile identity so runs are reproducible.
    pub fn random(degree: u32, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = ((degree + 1) * (degree + 2) / 2) as usize;
        let coeffs = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        Self { degree, coeffs }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut k = 0;
        let mut acc = 0.0;
        for p in 0..=self.degree {
            for q in 0..=(self.degree - p) {
                acc += self.coeffs[k] * x.powi(p as i32) * y.powi(q as i32);
                k += 1;
            }
        }
        acc
    }
}

/// Named initial profiles of the benchmark suite.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// `|x+0.5|(x+0.5)^2 + |y| y^2`
    Cubic,
    /// Euclidean distance to the point (-0.5, 0)
    DistEuclid,
    /// `max{(x+0.5), y}` as printed in the source material
    DistMax,
    /// `max{|x+0.5|, |y|}`, the max-metric distance to (-0.5, 0)
    DistMaxAbs,
    /// Cone centered at (0, 0.5): the Euclidean distance to that point,
    /// whose 0.3-level set is the circle tracked in the vortex benchmark
    VortexCone,
    QuadraticRandom { seed: u64, poly: Poly2 },
    CubicRandom { seed: u64, poly: Poly2 },
}

impl Profile {
    pub fn by_name(name: &str, seed: u64) -> Result<Self> {
        Ok(match name {
            "cubic" => Profile::Cubic,
            "dist_euclid" => Profile::DistEuclid,
            "dist_max" => Profile::DistMax,
            "dist_max_abs" => Profile::DistMaxAbs,
            "vortex_cone" => Profile::VortexCone,
            "quadratic_random" => Profile::QuadraticRandom { seed, poly: Poly2::random(2, seed) },
            "cubic_random" => Profile::CubicRandom { seed, poly: Poly2::random(3, seed) },
            other => return Err(Error::UnknownProfile(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Profile::Cubic => "cubic",
            Profile::DistEuclid => "dist_euclid",
            Profile::DistMax => "dist_max",
            Profile::DistMaxAbs => "dist_max_abs",
            Profile::VortexCone => "vortex_cone",
            Profile::QuadraticRandom { .. } => "quadratic_random",
            Profile::CubicRandom { .. } => "cubic_random",
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Profile::Cubic => {
                let a = x + 0.5;
                a.abs() * a * a + y.abs() * y * y
            }
            Profile::DistEuclid => ((x + 0.5) * (x + 0.5) + y * y).sqrt(),
            Profile::DistMax => (x + 0.5).max(y),
            Profile::DistMaxAbs => (x + 0.5).abs().max(y.abs()),
            Profile::VortexCone => (x * x + (y - 0.5) * (y - 0.5)).sqrt(),
            Profile::QuadraticRandom { poly, .. } | Profile::CubicRandom { poly, .. } => {
                poly.eval(x, y)
            }
        }
    }
}

/// Rigid rotation velocity `(-2*pi*y, 2*pi*x)`: one full revolution per unit time.
pub fn rotation_velocity(x: f64, y: f64) -> (f64, f64) {
    (-2.0 * PI * y, 2.0 * PI * x)
}

/// Exact solution of the rotation problem: the initial profile evaluated at
/// the back-rotated point.
pub fn exact_rotation(u0: &Profile, t: f64, x: f64, y: f64) -> f64 {
    let (s, c) = (2.0 * PI * t).sin_cos();
    u0.eval(x * c + y * s, y * c - x * s)
}

/// Exact solution for constant-velocity translation.
pub fn exact_translation(u0: &Profile, v: f64, w: f64, t: f64, x: f64, y: f64) -> f64 {
    u0.eval(x - v * t, y - w * t)
}

/// Single-vortex velocity on the square (-1, 1)^2; vanishes identically on
/// the boundary.
pub fn vortex_velocity(x: f64, y: f64) -> (f64, f64) {
    let sx = (PI * (x + 1.0) / 2.0).sin();
    let sy = (PI * (y + 1.0) / 2.0).sin();
    let cx = (PI * (x + 1.0) / 2.0).cos();
    let cy = (PI * (y + 1.0) / 2.0).cos();
    (-4.0 * sx * sx * sy * cy, 4.0 * sy * sy * sx * cx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_hand_value() {
        // |1|*1 + |1|*1 = 2 at (0.5, 1)
        assert_eq!(Profile::Cubic.eval(0.5, 1.0), 2.0);
    }

    #[test]
    fn dist_euclid_center() {
        assert_eq!(Profile::DistEuclid.eval(-0.5, 0.0), 0.0);
    }

    #[test]
    fn vortex_cone_center() {
        assert!(Profile::VortexCone.eval(0.0, 0.5).abs() < 1e-15);
        // the 0.3-level set is the tracked circle
        assert!((Profile::VortexCone.eval(0.3, 0.5) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn rotation_full_revolution() {
        let p = Profile::Cubic;
        for &(x, y) in &[(0.3, -0.7), (0.0, 0.0), (-0.9, 0.4)] {
            assert!((exact_rotation(&p, 1.0, x, y) - p.eval(x, y)).abs() < 1e-12);
        }
    }

    #[test]
    fn rotation_half_revolution() {
        // half revolution maps (0.5, 0) onto (-0.5, 0)
        let v = exact_rotation(&Profile::DistEuclid, 0.5, 0.5, 0.0);
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn vortex_velocity_hand_values() {
        let (v, w) = vortex_velocity(0.0, 0.0);
        assert!(v.abs() < 1e-15 && w.abs() < 1e-15);
        let (v, w) = vortex_velocity(0.0, -0.5);
        assert!((v - (-2.0)).abs() < 1e-13);
        assert!(w.abs() < 1e-13);
    }

    #[test]
    fn vortex_velocity_vanishes_on_boundary() {
        for k in 0..=1000 {
            let s = -1.0 + 2.0 * k as f64 / 1000.0;
            for &(x, y) in &[(s, -1.0), (s, 1.0), (-1.0, s), (1.0, s)] {
                let (v, w) = vortex_velocity(x, y);
                assert!(v.abs() <= 1e-13 && w.abs() <= 1e-13, "({x},{y}) -> ({v},{w})");
            }
        }
    }

    #[test]
    fn random_poly_reproducible() {
        let a = Poly2::random(2, 42);
        let b = Poly2::random(2, 42);
        assert_eq!(a, b);
        assert_eq!(a.coeffs.len(), 6);
        assert!(a.coeffs.iter().all(|c| (-1.0..=1.0).contains(c)));
        assert_eq!(Poly2::random(3, 7).coeffs.len(), 10);
    }

    #[test]
    fn unknown_profile_is_error() {
        assert!(Profile::by_name("nope", 0).is_err());
    }
}
