//! Radial boundary-value solves on balls and annuli.
//!
//! The homogeneous basis of the per-mode operator is known in closed form
//! (two powers, or power and power·log at the degenerate root), so solutions
//! are built by variation of parameters: accuracy is limited only by
//! quadrature, and the singular behavior at the origin is imposed exactly
//! through the coefficient of the Dirichlet singular solution.

use crate::error::{HardyError, Result};
use crate::extrapolate::{aitken_limit, Limit};
use crate::fit::GrowthFit;
use crate::params::{HardyParams, Regime};
use crate::profile::RadialFunction;
use crate::quad::{integrate_radial, integrate_split, Integrability, QuadratureSpec};
use crate::real::{lit, Real};
use crate::testfn::TestFunction;

/// A solved radial profile with its singularity coefficient and metadata.
#[derive(Debug, Clone)]
pub struct RadialSolution<T> {
    pub profile: RadialFunction<T>,
    /// Coefficient of the singular branch at the origin.
    pub k: T,
    pub boundary_value: T,
    /// Angular mode the solve was performed in.
    pub mode: u32,
    /// max |L u - f| over the interior probe grid, by finite differences.
    pub residual_norm: T,
}

/// Values of an exhaustion family solved on shrinking annuli, with the
/// growth classification of the recorded point values.
#[derive(Debug, Clone)]
pub struct ExhaustionSeries<T> {
    pub inner_radii: Vec<T>,
    pub values_at_probe: Vec<T>,
    pub growth_fit: GrowthFit<T>,
}

/// Homogeneous basis for one mode on the ball: `regular` grows like r^{σ₊},
/// `dirichlet` matches the singular branch at 0 and vanishes at R. `constant`
/// is -p·W of the pair, the denominator of the variation-of-parameters
/// kernel.
struct BallBasis<T> {
    sigma_minus: T,
    sigma_plus: T,
    critical: bool,
    big_r: T,
    constant: T,
}

impl<T: Real> BallBasis<T> {
    fn new(p_eff: &HardyParams<T>, big_r: T) -> Result<Self> {
        let sigma_minus = p_eff.singular_exponent()?;
        let sigma_plus = p_eff.regular_exponent()?;
        let critical = p_eff.regime() == Regime::Critical;
        let constant = if critical {
            T::one()
        } else {
            sigma_plus - sigma_minus
        };
        Ok(Self {
            sigma_minus,
            sigma_plus,
            critical,
            big_r,
            constant,
        })
    }

    fn regular(&self, t: T) -> T {
        t.powf(self.sigma_plus)
    }

    fn dirichlet(&self, t: T) -> T {
        if self.critical {
            t.powf(self.sigma_minus) * (self.big_r / t).ln()
        } else {
            t.powf(self.sigma_minus)
                - self.big_r.powf(self.sigma_minus - self.sigma_plus) * t.powf(self.sigma_plus)
        }
    }
}

fn finite_difference_residual<T: Real>(
    p_eff: &HardyParams<T>,
    profile: &RadialFunction<T>,
    f: &RadialFunction<T>,
    lo: T,
    hi: T,
) -> T {
    let fd = profile.without_analytic_derivatives();
    let mut worst = T::zero();
    let m = 12;
    for i in 0..m {
        let r = lo + (hi - lo) * lit::<T>(i as f64 / (m - 1) as f64);
        if let Ok(lu) = p_eff.apply_operator(&fd, r) {
            let res = (lu - f.value(r)).abs();
            if res > worst {
                worst = res;
            }
        }
    }
    worst
}

/// Solves -u'' - (N-1)u'/r + μ_eff u/r² = f on (0, R] with u(R) = 0 and a
/// prescribed singular coefficient lim u/Φ = k, where μ_eff = μ + l(l+N-2).
///
/// Refuses (with the divergence evidence) when f fails the weighted L¹
/// condition near the origin: that is exactly the nonexistence side of the
/// sharp dichotomy.
pub fn solve_radial_bvp<T: Real>(
    p: &HardyParams<T>,
    l: u32,
    f: &RadialFunction<T>,
    big_r: T,
    k: T,
    spec: &QuadratureSpec<T>,
) -> Result<RadialSolution<T>> {
    if p.regime() == Regime::SubHardy {
        return Err(HardyError::UnsupportedRegime);
    }
    let n = p.dim();
    let mu_eff = p.mu() + lit::<T>((l as f64) * (l as f64 + n as f64 - 2.0));
    let p_eff = HardyParams::new(n, mu_eff)?;

    // Weighted integrability gate (the dμ_eff measure is the one the mode
    // couples to).
    match crate::quad::weighted_l1_norm(&p_eff, f, big_r, spec)? {
        Integrability::Finite(_) => {}
        Integrability::Divergent(ev) => return Err(HardyError::NoSolution(ev)),
    }

    let basis = BallBasis::new(&p_eff, big_r)?;
    let n1 = lit::<T>(n as f64 - 1.0);
    let f_inner = f.clone();
    let basis_inner = BallBasis::new(&p_eff, big_r)?;
    let inner = move |s: T| basis_inner.regular(s) * f_inner.value(s) * s.powf(n1);
    let f_outer = f.clone();
    let basis_outer = BallBasis::new(&p_eff, big_r)?;
    let outer = move |s: T| basis_outer.dirichlet(s) * f_outer.value(s) * s.powf(n1);

    let quad = *spec;
    let profile = RadialFunction::from_fn(
        move |r: T| {
            let i1 = integrate_radial(&inner, T::zero(), r, &quad)
                .map(|e| e.value)
                .unwrap_or(T::nan());
            let i2 = integrate_radial(&outer, r, big_r, &quad)
                .map(|e| e.value)
                .unwrap_or(T::nan());
            k * basis.dirichlet(r)
                + (basis.dirichlet(r) * i1 + basis.regular(r) * i2) / basis.constant
        },
        big_r,
    )
    .clamped(big_r);

    let residual_norm = finite_difference_residual(
        &p_eff,
        &profile,
        f,
        lit::<T>(0.08) * big_r,
        lit::<T>(0.92) * big_r,
    );
    let boundary_value = profile.value(big_r);

    Ok(RadialSolution {
        profile,
        k,
        boundary_value,
        mode: l,
        residual_norm,
    })
}

/// Solves the dual problem L*_mu ξ = g on the ball with ξ(R) = 0 and ξ
/// bounded at the origin: the radial Laplace problem in effective dimension
/// Ñ = N + 2τ₊.
pub fn solve_dual_radial<T: Real>(
    p: &HardyParams<T>,
    g: &RadialFunction<T>,
    big_r: T,
    spec: &QuadratureSpec<T>,
) -> Result<RadialSolution<T>> {
    if p.regime() == Regime::SubHardy {
        return Err(HardyError::UnsupportedRegime);
    }
    let eff = p.effective_dim()?;
    let two = lit::<T>(2.0);
    let critical = p.regime() == Regime::Critical; // Ñ = 2 exactly there

    let kernel = move |r: T, t: T| {
        let m = r.max(t);
        if critical {
            (big_r / m).ln()
        } else {
            (m.powf(two - eff) - big_r.powf(two - eff)) / (eff - two)
        }
    };
    let g_val = g.clone();
    let quad = *spec;
    let value = move |r: T| {
        let h = |t: T| kernel(r, t) * g_val.value(t) * t.powf(eff - T::one());
        integrate_split(&h, T::zero(), big_r, &[r], &quad)
            .map(|e| e.value)
            .unwrap_or(T::nan())
    };

    // ξ'(r) = -r^{1-Ñ} ∫_0^r g t^{Ñ-1} dt, and ξ'' follows from the equation.
    let g1 = g.clone();
    let d1 = move |r: T| {
        if r <= T::zero() {
            return T::zero();
        }
        let h = |t: T| g1.value(t) * t.powf(eff - T::one());
        let i = integrate_radial(&h, T::zero(), r, &quad)
            .map(|e| e.value)
            .unwrap_or(T::nan());
        -r.powf(T::one() - eff) * i
    };
    let g2 = g.clone();
    let d2 = move |r: T| {
        if r <= T::zero() {
            return -g2.value(T::zero()) / eff;
        }
        let h = |t: T| g2.value(t) * t.powf(eff - T::one());
        let i = integrate_radial(&h, T::zero(), r, &quad)
            .map(|e| e.value)
            .unwrap_or(T::nan());
        (eff - T::one()) * r.powf(-eff) * i - g2.value(r)
    };

    let profile = RadialFunction::with_derivatives(value, d1, d2, big_r).clamped(big_r);
    let residual = {
        let fd = profile.without_analytic_derivatives();
        let mut worst = T::zero();
        for i in 0..12 {
            let r = big_r * lit::<T>(0.08 + 0.84 * i as f64 / 11.0);
            let res = (p.apply_dual(&fd, r).unwrap_or(T::nan()) - g.value(r)).abs();
            if res > worst {
                worst = res;
            }
        }
        worst
    };
    let boundary_value = profile.value(big_r);
    Ok(RadialSolution {
        profile,
        k: T::zero(),
        boundary_value,
        mode: 0,
        residual_norm: residual,
    })
}

/// Two-point solve on the annulus [a, R]: L_mu u = f, u(a) = inner_bc,
/// u(R) = 0. No singularity handling is needed away from the origin.
pub fn solve_annulus<T: Real>(
    p: &HardyParams<T>,
    f: &RadialFunction<T>,
    a: T,
    big_r: T,
    inner_bc: T,
    spec: &QuadratureSpec<T>,
) -> Result<RadialSolution<T>> {
    if p.regime() == Regime::SubHardy {
        return Err(HardyError::UnsupportedRegime);
    }
    if a <= T::zero() || a >= big_r {
        return Err(HardyError::DomainError(a.to_f64().unwrap_or(f64::NAN)));
    }
    let critical = p.regime() == Regime::Critical;
    let (s_minus, s_plus) = (p.singular_exponent()?, p.regular_exponent()?);

    // y_a vanishes at a, y_r at R; constant = -p·W(y_a, y_R).
    let y_a = move |t: T| {
        if critical {
            t.powf(s_minus) * (t / a).ln()
        } else {
            t.powf(s_minus) - a.powf(s_minus - s_plus) * t.powf(s_plus)
        }
    };
    let y_r = move |t: T| {
        if critical {
            t.powf(s_minus) * (big_r / t).ln()
        } else {
            t.powf(s_minus) - big_r.powf(s_minus - s_plus) * t.powf(s_plus)
        }
    };
    let constant = if critical {
        (big_r / a).ln()
    } else {
        (big_r.powf(s_minus - s_plus) - a.powf(s_minus - s_plus)) * (s_plus - s_minus)
    };

    let n1 = lit::<T>(p.dim() as f64 - 1.0);
    let f1 = f.clone();
    let lower = move |s: T| y_a(s) * f1.value(s) * s.powf(n1);
    let f2 = f.clone();
    let upper = move |s: T| y_r(s) * f2.value(s) * s.powf(n1);

    let bc_scale = inner_bc / y_r(a);
    let quad = *spec;
    let profile = RadialFunction::from_fn(
        move |r: T| {
            let i1 = integrate_radial(&lower, a, r, &quad)
                .map(|e| e.value)
                .unwrap_or(T::nan());
            let i2 = integrate_radial(&upper, r, big_r, &quad)
                .map(|e| e.value)
                .unwrap_or(T::nan());
            bc_scale * y_r(r) + (y_r(r) * i1 + y_a(r) * i2) / constant
        },
        big_r,
    )
    .clamped(big_r);

    let p_eff = *p;
    let residual = finite_difference_residual(
        &p_eff,
        &profile,
        f,
        a + lit::<T>(0.06) * (big_r - a),
        big_r - lit::<T>(0.06) * (big_r - a),
    );
    let boundary_value = profile.value(big_r);
    Ok(RadialSolution {
        profile,
        k: T::zero(),
        boundary_value,
        mode: 0,
        residual_norm: residual,
    })
}

/// Solves the mollified Green problem Γ_mu·L_mu w = δ̂_n with w(R) = 0 and no
/// singular part, where δ̂_n(x) = η₀(n|x|)/mass is the unit-mass radial
/// mollifier. The family converges to G_mu/c_mu away from the origin.
pub fn approximate_green_mollifier<T: Real>(
    p: &HardyParams<T>,
    big_r: T,
    n: u32,
    spec: &QuadratureSpec<T>,
) -> Result<RadialSolution<T>> {
    if n < 1 {
        return Err(HardyError::NumericFailure(
            "mollifier index must be >= 1".into(),
        ));
    }
    let support = lit::<T>(2.0) / lit::<T>(n as f64);
    if support >= big_r {
        return Err(HardyError::DomainError(
            support.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let bump = crate::testfn::bump_library(crate::testfn::BumpKind::Cutoff, T::one())?;
    let n_t = lit::<T>(n as f64);
    let dim_exp = lit::<T>(p.dim() as f64 - 1.0);
    let shape = bump.profile.clone();
    let mass_integrand = move |r: T| shape.value(n_t * r) * r.powf(dim_exp);
    let mass = p.sphere_area() * integrate_radial(&mass_integrand, T::zero(), support, spec)?.value;

    let shape2 = bump.profile.clone();
    let tau_plus = p.regular_exponent()?;
    let source = RadialFunction::from_fn(
        move |r: T| {
            if r <= T::zero() {
                return T::zero();
            }
            shape2.value(n_t * r) / mass * r.powf(-tau_plus)
        },
        big_r,
    );
    solve_radial_bvp(p, 0, &source, big_r, T::zero(), spec)
}

/// Richardson/Aitken limit of profile(r)/Φ(r) on the geometric grid
/// r_j = r₀ q^j: the singularity coefficient k with an error estimate.
pub fn extract_singularity_coefficient<T: Real>(
    sol: &RadialSolution<T>,
    p: &HardyParams<T>,
) -> Result<Limit<T>> {
    let n = p.dim();
    let mu_eff = p.mu() + lit::<T>((sol.mode as f64) * (sol.mode as f64 + n as f64 - 2.0));
    let p_eff = HardyParams::new(n, mu_eff)?;

    let r0 = lit::<T>(0.1).min(sol.profile.support_radius() * lit::<T>(0.25));
    let q = lit::<T>(0.5);
    let levels = 20;
    let mut seq = Vec::with_capacity(levels);
    let mut r = r0;
    for _ in 0..levels {
        let phi = p_eff.singular_branch(r)?;
        seq.push(sol.profile.value(r) / phi);
        r = r * q;
    }
    aitken_limit(&seq)
}

/// Dual ball solution ξ₀ wrapped as a Dirichlet-only test function.
pub fn dual_ball_test_function<T: Real>(p: &HardyParams<T>, big_r: T) -> Result<TestFunction<T>> {
    Ok(TestFunction::dirichlet_only(
        p.dual_ball_profile(big_r)?,
        big_r,
        "xi0",
    ))
}
