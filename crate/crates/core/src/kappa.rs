//! Kappa strategies: rules producing the scheme parameter kappa per node
//! from the local Courant numbers.

/// Sign with the convention `sign(0) = +1`, so every code path is total;
/// all sign-dependent terms carry a velocity factor and vanish at 0 anyway.
#[inline]
pub fn sign0(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThirdOrderVariant {
    Explicit,
    Implicit,
    Semi,
}

/// The kappa value for which each scheme family is third order accurate
/// under constant velocity.
pub fn third_order_kappa(variant: ThirdOrderVariant, c: f64) -> f64 {
    match variant {
        ThirdOrderVariant::Explicit => sign0(c) * (1.0 - 2.0 * c.abs()) / 3.0,
        ThirdOrderVariant::Implicit => sign0(c) * (1.0 + 2.0 * c.abs()) / 3.0,
        ThirdOrderVariant::Semi => sign0(c) * (1.0 - c.abs()) / 3.0,
    }
}

/// Per-node kappa rule for the 1D schemes.
///
/// `Constant` values outside [-1, 1] are permitted (the third-order implicit
/// rule exceeds 1/3 for |C| > 0); nothing is clamped silently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kappa1D {
    Constant(f64),
    /// `kappa = s * sign(C_i)`, `s` in {-1, +1}
    SignOfVelocity(f64),
    ThirdOrder(ThirdOrderVariant),
}

impl Kappa1D {
    #[inline]
    pub fn eval(&self, c: f64) -> f64 {
        match *self {
            Kappa1D::Constant(k) => k,
            Kappa1D::SignOfVelocity(s) => s * sign0(c),
            Kappa1D::ThirdOrder(v) => third_order_kappa(v, c),
        }
    }
}

/// Per-node `(kappa^x, kappa^y)` rule for the 2D schemes.
#[derive(Debug, Clone, PartialEq)]
pub enum Kappa2D {
    /// `(sign(C), sign(D))`
    Kp,
    /// `(-sign(C), -sign(D))`
    Km,
    /// `(0, 0)`
    K0,
    /// `(sign(C)(1-|C|)/3, sign(D)(1-|D|)/3)`
    K3,
    Constant(f64, f64),
    /// Wrapped strategy that, at nodes next to the boundary, switches to the
    /// one-sided upwind value so the implicit stencil never references
    /// points outside the domain.
    BoundaryOverride(Box<Kappa2D>),
}

impl Kappa2D {
    pub fn by_name(name: &str) -> Option<Self> {
        Some(match name {
            "kp" => Kappa2D::Kp,
            "km" => Kappa2D::Km,
            "k0" => Kappa2D::K0,
            "k3" => Kappa2D::K3,
            _ => return None,
        })
    }

    pub fn name(&self) -> String {
        match self {
            Kappa2D::Kp => "kp".into(),
            Kappa2D::Km => "km".into(),
            Kappa2D::K0 => "k0".into(),
            Kappa2D::K3 => "k3".into(),
            Kappa2D::Constant(kx, ky) => format!("const({kx},{ky})"),
            Kappa2D::BoundaryOverride(inner) => inner.name(),
        }
    }

    /// Evaluate at node `(i, j)` of a grid with `m` intervals.
    pub fn eval_at(&self, m: usize, i: usize, j: usize, c: f64, d: f64) -> (f64, f64) {
        match self {
            Kappa2D::Kp => (sign0(c), sign0(d)),
            Kappa2D::Km => (-sign0(c), -sign0(d)),
            Kappa2D::K0 => (0.0, 0.0),
            Kappa2D::K3 => (
                third_order_kappa(ThirdOrderVariant::Semi, c),
                third_order_kappa(ThirdOrderVariant::Semi, d),
            ),
            Kappa2D::Constant(kx, ky) => (*kx, *ky),
            Kappa2D::BoundaryOverride(inner) => {
                let (mut kx, mut ky) = inner.eval_at(m, i, j, c, d);
                // sign(V) is the one-sided difference on the upwind side; for
                // it the implicit stencil reaches only one node past the
                // upwind neighbor, which stays inside the domain.
                if i == 1 || i == m - 1 {
                    kx = sign0(c);
                }
                if j == 1 || j == m - 1 {
                    ky = sign0(d);
                }
                (kx, ky)
            }
        }
    }
}

/// Wrap a strategy so near-boundary nodes use the one-sided upwind kappa.
pub fn boundary_kappa_override(kappa: Kappa2D) -> Kappa2D {
    Kappa2D::BoundaryOverride(Box::new(kappa))
}
