//! The finite test-function library.
//!
//! The identity checks quantify over this library instead of the full C^{1,1}
//! class: a quartic bump, a truncated-cone family (kink at the regularization
//! radius σ, so genuinely C^{1,1} and not C²), the smooth plateau cutoff, and
//! quartic-times-polynomial entries. All members have closed-form value and
//! derivative data and declare their kink radii so quadrature can split there.

use crate::error::{HardyError, Result};
use crate::profile::RadialFunction;
use crate::real::{lit, Real};

/// Library entry selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BumpKind<T> {
    /// (1 - (r/R)²)² on [0, R].
    Quartic,
    /// (R - φ_σ(r))·η(4r/R): cone with parabolic tip of half-width σ.
    Cone { sigma: T },
    /// Smooth plateau: 1 on [0, R], 0 beyond 2R.
    Cutoff,
    /// Quartic bump times 1 + c1·(r/R) + c2·(r/R)².
    QuarticPoly { c1: T, c2: T },
}

/// A compactly supported C^{1,1} radial test function, optionally translated
/// away from the origin.
#[derive(Clone)]
pub struct TestFunction<T> {
    pub profile: RadialFunction<T>,
    pub support_radius: T,
    /// Distance of the bump center from the origin (rotation invariance makes
    /// the direction irrelevant).
    pub center_offset: T,
    /// True when value and first derivative vanish at the support radius
    /// (membership in C^{1,1}_c); false for Dirichlet-only profiles.
    pub compact: bool,
    /// Radii at which the second derivative may jump.
    pub breakpoints: Vec<T>,
    label: String,
}

impl<T: Real> std::fmt::Debug for TestFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction")
            .field("label", &self.label)
            .field("support_radius", &self.support_radius)
            .field("center_offset", &self.center_offset)
            .field("compact", &self.compact)
            .finish()
    }
}

impl<T: Real> TestFunction<T> {
    pub fn label(&self) -> &str {
        &self.label
    }

    /// ξ(0) as a function on R^N (profile evaluated at the center offset).
    pub fn value_at_origin(&self) -> T {
        self.profile.value(self.center_offset)
    }

    /// Same profile centered `offset` away from the origin.
    pub fn translated(&self, offset: T) -> Self {
        let mut t = self.clone();
        t.center_offset = offset;
        t.label = format!("{}@{}", self.label, offset);
        t
    }

    /// Same profile with analytic derivative closures stripped, for
    /// derivative-free cross checks.
    pub fn finite_difference_version(&self) -> Self {
        let mut t = self.clone();
        t.profile = self.profile.without_analytic_derivatives();
        t.label = format!("{}/fd", self.label);
        t
    }

    /// Wraps an arbitrary profile vanishing on the boundary but with free
    /// normal derivative (C^{1,1}_0 of the ball, not compactly supported).
    pub fn dirichlet_only(profile: RadialFunction<T>, support_radius: T, label: &str) -> Self {
        Self {
            profile,
            support_radius,
            center_offset: T::zero(),
            compact: false,
            breakpoints: Vec::new(),
            label: label.to_string(),
        }
    }

    /// Wraps a custom compactly supported C^{1,1} profile.
    pub fn compact(
        profile: RadialFunction<T>,
        support_radius: T,
        breakpoints: Vec<T>,
        label: &str,
    ) -> Self {
        Self {
            profile,
            support_radius,
            center_offset: T::zero(),
            compact: true,
            breakpoints,
            label: label.to_string(),
        }
    }
}

/// Smooth transition η₀: C^∞, decreasing, 1 on [0,1], 0 on [2,∞).
fn eta0<T: Real>(t: T) -> T {
    if t <= T::one() {
        return T::one();
    }
    if t >= lit::<T>(2.0) {
        return T::zero();
    }
    let a = (-(lit::<T>(2.0) - t).recip()).exp();
    let b = (-(t - T::one()).recip()).exp();
    a / (a + b)
}

fn eta0_d1<T: Real>(t: T) -> T {
    if t <= T::one() || t >= lit::<T>(2.0) {
        return T::zero();
    }
    let two = lit::<T>(2.0);
    let a = (-(two - t).recip()).exp();
    let b = (-(t - T::one()).recip()).exp();
    let ap = -a / ((two - t) * (two - t));
    let bp = b / ((t - T::one()) * (t - T::one()));
    (ap * b - a * bp) / ((a + b) * (a + b))
}

fn eta0_d2<T: Real>(t: T) -> T {
    if t <= T::one() || t >= lit::<T>(2.0) {
        return T::zero();
    }
    let one = T::one();
    let two = lit::<T>(2.0);
    let u = two - t;
    let v = t - one;
    let a = (-u.recip()).exp();
    let b = (-v.recip()).exp();
    let ap = -a / (u * u);
    let bp = b / (v * v);
    let app = a * (one / (u * u * u * u) - two / (u * u * u));
    let bpp = b * (one / (v * v * v * v) - two / (v * v * v));
    let s = a + b;
    ((app * b - a * bpp) * s - two * (ap * b - a * bp) * (ap + bp)) / (s * s * s)
}

/// Even convex regularization of |t|: t²/(2σ) inside [0, σ], t - σ/2 beyond.
fn phi_sigma<T: Real>(t: T, sigma: T) -> T {
    if t <= sigma {
        t * t / (lit::<T>(2.0) * sigma)
    } else {
        t - sigma / lit::<T>(2.0)
    }
}

fn phi_sigma_d1<T: Real>(t: T, sigma: T) -> T {
    if t <= sigma {
        t / sigma
    } else {
        T::one()
    }
}

fn phi_sigma_d2<T: Real>(t: T, sigma: T) -> T {
    if t <= sigma {
        sigma.recip()
    } else {
        T::zero()
    }
}

/// Builds a library test function of the requested kind and scale.
pub fn bump_library<T: Real>(kind: BumpKind<T>, big_r: T) -> Result<TestFunction<T>> {
    if big_r <= T::zero() {
        return Err(HardyError::DomainError(big_r.to_f64().unwrap_or(f64::NAN)));
    }
    match kind {
        BumpKind::Quartic => Ok(quartic(big_r, T::zero(), T::zero())),
        BumpKind::QuarticPoly { c1, c2 } => Ok(quartic(big_r, c1, c2)),
        BumpKind::Cone { sigma } => {
            if sigma <= T::zero() || sigma >= big_r / lit::<T>(4.0) {
                return Err(HardyError::DomainError(sigma.to_f64().unwrap_or(f64::NAN)));
            }
            Ok(cone(big_r, sigma))
        }
        BumpKind::Cutoff => Ok(cutoff(big_r)),
    }
}

fn quartic<T: Real>(big_r: T, c1: T, c2: T) -> TestFunction<T> {
    let one = T::one();
    let two = lit::<T>(2.0);
    let r0 = big_r;
    let value = move |r: T| {
        let s = r / r0;
        if s > one {
            return T::zero();
        }
        let w = one - s * s;
        w * w * (one + c1 * s + c2 * s * s)
    };
    let d1 = move |r: T| {
        let s = r / r0;
        if s > one {
            return T::zero();
        }
        let w = one - s * s;
        let p = one + c1 * s + c2 * s * s;
        let pp = c1 + two * c2 * s;
        (-two * two * s * w * p + w * w * pp) / r0
    };
    let d2 = move |r: T| {
        let s = r / r0;
        if s > one {
            return T::zero();
        }
        let four = lit::<T>(4.0);
        let w = one - s * s;
        let p = one + c1 * s + c2 * s * s;
        let pp = c1 + two * c2 * s;
        let ppp = two * c2;
        // d²/ds² of w²p, then /R².
        let t1 = (-four * w + lit::<T>(8.0) * s * s) * p;
        let t2 = -lit::<T>(8.0) * s * w * pp;
        let t3 = w * w * ppp;
        (t1 + t2 + t3) / (r0 * r0)
    };
    let label = if c1 == T::zero() && c2 == T::zero() {
        "quartic".to_string()
    } else {
        format!("quartic*poly({c1},{c2})")
    };
    TestFunction {
        profile: RadialFunction::with_derivatives(value, d1, d2, big_r),
        support_radius: big_r,
        center_offset: T::zero(),
        compact: true,
        breakpoints: vec![big_r],
        label,
    }
}

fn cone<T: Real>(big_r: T, sigma: T) -> TestFunction<T> {
    let four = lit::<T>(4.0);
    let scale = four / big_r; // plateau of η ends at R/4, support at R/2
    let r0 = big_r;
    let value = move |r: T| (r0 - phi_sigma(r, sigma)) * eta0(scale * r);
    let d1 = move |r: T| {
        let a = r0 - phi_sigma(r, sigma);
        let ap = -phi_sigma_d1(r, sigma);
        ap * eta0(scale * r) + a * scale * eta0_d1(scale * r)
    };
    let d2 = move |r: T| {
        let a = r0 - phi_sigma(r, sigma);
        let ap = -phi_sigma_d1(r, sigma);
        let app = -phi_sigma_d2(r, sigma);
        app * eta0(scale * r)
            + lit::<T>(2.0) * ap * scale * eta0_d1(scale * r)
            + a * scale * scale * eta0_d2(scale * r)
    };
    TestFunction {
        profile: RadialFunction::with_derivatives(value, d1, d2, big_r / lit::<T>(2.0)),
        support_radius: big_r / lit::<T>(2.0),
        center_offset: T::zero(),
        compact: true,
        breakpoints: vec![sigma, big_r / four, big_r / lit::<T>(2.0)],
        label: format!("cone(sigma={sigma})"),
    }
}

fn cutoff<T: Real>(big_r: T) -> TestFunction<T> {
    let scale = big_r.recip();
    let value = move |r: T| eta0(scale * r);
    let d1 = move |r: T| scale * eta0_d1(scale * r);
    let d2 = move |r: T| scale * scale * eta0_d2(scale * r);
    TestFunction {
        profile: RadialFunction::with_derivatives(value, d1, d2, lit::<T>(2.0) * big_r),
        support_radius: lit::<T>(2.0) * big_r,
        center_offset: T::zero(),
        compact: true,
        breakpoints: vec![big_r, lit::<T>(2.0) * big_r],
        label: "cutoff".to_string(),
    }
}

/// The default verification library at scale `big_r`.
pub fn default_library<T: Real>(big_r: T) -> Vec<TestFunction<T>> {
    vec![
        bump_library(BumpKind::Quartic, big_r).unwrap(),
        bump_library(
            BumpKind::Cone {
                sigma: lit::<T>(0.1) * big_r,
            },
            big_r,
        )
        .unwrap(),
        bump_library(
            BumpKind::Cone {
                sigma: lit::<T>(0.05) * big_r,
            },
            big_r,
        )
        .unwrap(),
        bump_library(
            BumpKind::QuarticPoly {
                c1: lit::<T>(0.3),
                c2: lit::<T>(-0.2),
            },
            big_r,
        )
        .unwrap(),
        // Cutoff scaled so the whole support [0, big_r] fits a ball of that
        // radius: plateau to big_r/2, zero from big_r on.
        bump_library(BumpKind::Cutoff, big_r / lit::<T>(2.0)).unwrap(),
    ]
}
