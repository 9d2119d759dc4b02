//! Quantified checks of the distributional identities.
//!
//! The central objects are the weighted pairings ∫ u L*(ξ) dμ computed by
//! quadrature and compared against their closed-form right-hand sides. A
//! check only counts as a violation when the residual exceeds the propagated
//! quadrature error budget, so identity failure is distinguishable from
//! numerical noise.

use crate::error::{HardyError, Result};
use crate::params::{HardyParams, Regime};
use crate::profile::RadialFunction;
use crate::quad::{integrate_radial, integrate_split, Estimate, QuadratureSpec};
use crate::real::{lit, unit_sphere_area, Real};
use crate::solver::{extract_singularity_coefficient, solve_radial_bvp, RadialSolution};
use crate::testfn::TestFunction;

/// Two sides of one identity with the residual and its error budget.
#[derive(Debug, Clone, Copy)]
pub struct IdentityResidual<T> {
    pub lhs: T,
    pub rhs: T,
    pub abs_residual: T,
    pub rel_residual: T,
    pub quadrature_error_budget: T,
}

impl<T: Real> IdentityResidual<T> {
    fn new(lhs: T, rhs: T, budget: T) -> Self {
        let abs_residual = (lhs - rhs).abs();
        let scale = rhs.abs().max(lhs.abs()).max(lit(1e-30));
        Self {
            lhs,
            rhs,
            abs_residual,
            rel_residual: abs_residual / scale,
            quadrature_error_budget: budget,
        }
    }

    /// Within tolerance: |lhs - rhs| ≤ max(rel_tol·|rhs|, abs_floor).
    pub fn within(&self, rel_tol: T, abs_floor: T) -> bool {
        self.abs_residual <= (rel_tol * self.rhs.abs()).max(abs_floor)
    }

    /// A violation requires the residual to exceed both the tolerance and
    /// the propagated quadrature budget.
    pub fn is_violation(&self, rel_tol: T, abs_floor: T) -> bool {
        !self.within(rel_tol, abs_floor) && self.abs_residual > self.quadrature_error_budget
    }
}

/// Φ_mu·Γ_mu·r^{N-1} (or the Green variant), fused so no large powers are
/// ever formed: the product is r, r·ln(1/r), r·(1-(r/R)^Δ) or r·ln(R/r).
fn fused_singular_weight<T: Real>(p: &HardyParams<T>, ball_radius: Option<T>, r: T) -> Result<T> {
    let critical = p.regime() == Regime::Critical;
    match ball_radius {
        None => Ok(if critical { -r * r.ln() } else { r }),
        Some(big_r) => {
            if critical {
                Ok(r * (big_r / r).ln())
            } else {
                let gap = p.regular_exponent()? - p.singular_exponent()?;
                Ok(r * (T::one() - (r / big_r).powf(gap)))
            }
        }
    }
}

fn dual_integral_centered<T: Real>(
    p: &HardyParams<T>,
    xi: &TestFunction<T>,
    ball_radius: Option<T>,
    spec: &QuadratureSpec<T>,
) -> Result<Estimate<T>> {
    let upper = match ball_radius {
        Some(big_r) => xi.support_radius.min(big_r),
        None => xi.support_radius,
    };
    let p2 = *p;
    let profile = xi.profile.clone();
    let integrand = move |r: T| {
        let w = fused_singular_weight(&p2, ball_radius, r).unwrap_or(T::nan());
        let dual = p2.apply_dual(&profile, r).unwrap_or(T::nan());
        w * dual
    };
    // Split at the kink radii, then let the singular engine handle [0, cut].
    let mut cuts = xi.breakpoints.clone();
    cuts.push(spec.log_cut);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut total = Estimate {
        value: T::zero(),
        error: T::zero(),
    };
    let mut lo = T::zero();
    for c in cuts.into_iter().filter(|&c| c > T::zero() && c < upper) {
        let part = integrate_radial(&integrand, lo, c, spec)?;
        total.value = total.value + part.value;
        total.error = total.error + part.error;
        lo = c;
    }
    let part = integrate_radial(&integrand, lo, upper, spec)?;
    total.value = total.value + part.value;
    total.error = total.error + part.error;
    let area = p.sphere_area();
    Ok(Estimate {
        value: area * total.value,
        error: area * total.error,
    })
}

/// Off-center pairing by tensor quadrature over (ρ, γ): radius around the
/// bump center and polar angle against the center direction.
fn dual_integral_offcenter<T: Real>(
    p: &HardyParams<T>,
    xi: &TestFunction<T>,
    ball_radius: Option<T>,
    spec: &QuadratureSpec<T>,
) -> Result<Estimate<T>> {
    let c = xi.center_offset;
    if c - xi.support_radius <= T::zero() {
        return Err(HardyError::NumericFailure(
            "translated bump must keep the origin outside its support".into(),
        ));
    }
    let n = p.dim();
    let tau_plus = p.regular_exponent()?;
    let p2 = *p;
    let profile = xi.profile.clone();
    // The outer integrand carries the inner quadrature's noise floor, so it
    // cannot be pushed to the 1-D tolerances.
    let inner_spec = *spec;
    let mut outer_spec = *spec;
    outer_spec.rel_tol = spec.rel_tol.max(lit(1e-9));
    outer_spec.abs_tol = spec.abs_tol.max(lit(1e-11));
    let sin_pow = lit::<T>(n as f64 - 2.0);
    let integrand_rho = move |rho: T| {
        let b1 = profile.d1(rho);
        let b2 = profile.d2(rho);
        let prof_term = move |gamma: T| {
            let cosg = gamma.cos();
            let dist2 = c * c + rho * rho + lit::<T>(2.0) * c * rho * cosg;
            let dist = dist2.sqrt();
            let w = {
                // Φ·Γ = dist^{2-N} times the Dirichlet factor when on a ball.
                let base = dist.powf(lit::<T>(2.0 - n as f64));
                match ball_radius {
                    None => {
                        if p2.regime() == Regime::Critical {
                            -base * dist.ln()
                        } else {
                            base
                        }
                    }
                    Some(big_r) => {
                        if p2.regime() == Regime::Critical {
                            base * (big_r / dist).ln()
                        } else {
                            let gap = lit::<T>(2.0) * (p2.mu() - p2.mu_critical()).sqrt();
                            base * (T::one() - (dist / big_r).powf(gap))
                        }
                    }
                }
            };
            let dual = -b2
                - lit::<T>(n as f64 - 1.0) * b1 / rho
                - lit::<T>(2.0) * tau_plus / dist2 * b1 * (rho + c * cosg);
            let sing = gamma.sin();
            let ang = if n == 2 { T::one() } else { sing.powf(sin_pow) };
            w * dual * ang
        };
        integrate_radial(&prof_term, T::zero(), crate::real::pi(), &inner_spec)
            .map(|e| e.value)
            .unwrap_or(T::nan())
            * rho.powf(lit::<T>(n as f64 - 1.0))
    };
    let est = integrate_split(
        &integrand_rho,
        T::zero(),
        xi.support_radius,
        &xi.breakpoints,
        &outer_spec,
    )?;
    let ang_area = match n {
        2 => lit::<T>(2.0),
        d => unit_sphere_area::<T>(d - 1),
    };
    Ok(Estimate {
        value: ang_area * est.value,
        error: ang_area * est.error + lit(1e-12),
    })
}

/// Theorem-1 check: ∫ Φ L*(ξ) dμ = c_mu ξ(0) over R^N.
pub fn verify_fundamental_identity<T: Real>(
    p: &HardyParams<T>,
    xi: &TestFunction<T>,
    spec: &QuadratureSpec<T>,
) -> Result<IdentityResidual<T>> {
    if !xi.compact {
        return Err(HardyError::NumericFailure(
            "the whole-space identity needs a compactly supported test function".into(),
        ));
    }
    let est = if xi.center_offset == T::zero() {
        dual_integral_centered(p, xi, None, spec)?
    } else {
        dual_integral_offcenter(p, xi, None, spec)?
    };
    let rhs = p.dirac_constant()? * xi.value_at_origin();
    Ok(IdentityResidual::new(est.value, rhs, est.error))
}

/// Theorem-2 check: ∫_B G L*(ξ) dμ = c_mu ξ(0) on the ball of radius `big_r`.
pub fn verify_green_identity<T: Real>(
    p: &HardyParams<T>,
    big_r: T,
    xi: &TestFunction<T>,
    spec: &QuadratureSpec<T>,
) -> Result<IdentityResidual<T>> {
    let est = if xi.center_offset == T::zero() {
        dual_integral_centered(p, xi, Some(big_r), spec)?
    } else {
        dual_integral_offcenter(p, xi, Some(big_r), spec)?
    };
    let rhs = p.dirac_constant()? * xi.value_at_origin();
    Ok(IdentityResidual::new(est.value, rhs, est.error))
}

/// Weak-formulation check for a solved profile:
/// ∫ u L*(ξ) dμ = ∫ f ξ dμ + c_mu k ξ(0), one residual per test function.
pub fn verify_weak_solution<T: Real>(
    p: &HardyParams<T>,
    sol: &RadialSolution<T>,
    f: &RadialFunction<T>,
    k: T,
    xis: &[TestFunction<T>],
    spec: &QuadratureSpec<T>,
) -> Result<Vec<IdentityResidual<T>>> {
    let big_r = sol.profile.support_radius();
    let tau_plus = p.regular_exponent()?;
    let n1 = lit::<T>(p.dim() as f64 - 1.0);
    let area = p.sphere_area();
    let c_mu = p.dirac_constant()?;
    let mut out = Vec::with_capacity(xis.len());
    for xi in xis {
        let upper = xi.support_radius.min(big_r);
        let p2 = *p;
        let u = sol.profile.clone();
        let prof = xi.profile.clone();
        let lhs_integrand = move |r: T| {
            u.value(r) * p2.apply_dual(&prof, r).unwrap_or(T::nan()) * r.powf(tau_plus + n1)
        };
        let lhs = integrate_split(&lhs_integrand, T::zero(), upper, &xi.breakpoints, spec)
            .or_else(|_| {
                // fall back to the singular engine when the profile decays slowly
                integrate_radial(&lhs_integrand, T::zero(), upper, spec)
            })?;

        let fv = f.clone();
        let prof2 = xi.profile.clone();
        let rhs_integrand = move |r: T| fv.value(r) * prof2.value(r) * r.powf(tau_plus + n1);
        let rhs_f = integrate_radial(&rhs_integrand, T::zero(), upper, spec)?;

        let lhs_v = area * lhs.value;
        let rhs_v = area * rhs_f.value + c_mu * k * xi.value_at_origin();
        let budget = area * (lhs.error + rhs_f.error) + lit(1e-12);
        out.push(IdentityResidual::new(lhs_v, rhs_v, budget));
    }
    Ok(out)
}

/// Outcome of the two Kato-type inequality checks for one (u, f, ξ).
#[derive(Debug, Clone, Copy)]
pub struct KatoReport<T> {
    pub lhs_abs: T,
    pub rhs_abs: T,
    /// rhs - lhs for the |u| inequality; nonnegative (minus budget) on pass.
    pub slack_abs: T,
    pub lhs_plus: T,
    pub rhs_plus: T,
    pub slack_plus: T,
    pub budget: T,
    pub violation: bool,
}

fn locate_zeros<T: Real>(u: &RadialFunction<T>, lo: T, hi: T) -> Vec<T> {
    let m = 400;
    let mut zeros = Vec::new();
    let mut prev_r = lo;
    let mut prev_v = u.value(lo);
    for i in 1..=m {
        let r = lo + (hi - lo) * lit::<T>(i as f64 / m as f64);
        let v = u.value(r);
        if prev_v * v < T::zero() {
            let (mut a, mut b) = (prev_r, r);
            let (mut fa, _) = (prev_v, v);
            for _ in 0..60 {
                let mid = (a + b) * lit(0.5);
                let fm = u.value(mid);
                if fa * fm <= T::zero() {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            zeros.push((a + b) * lit(0.5));
        }
        prev_r = r;
        prev_v = v;
    }
    zeros
}

/// Checks ∫|u| L*(ξ) dμ ≤ ∫ sign(u) f ξ dμ and the positive-part variant for
/// a solution of the k = 0 problem. ξ must be nonnegative.
pub fn check_kato<T: Real>(
    p: &HardyParams<T>,
    sol: &RadialSolution<T>,
    f: &RadialFunction<T>,
    xi: &TestFunction<T>,
    spec: &QuadratureSpec<T>,
) -> Result<KatoReport<T>> {
    let big_r = sol.profile.support_radius();
    let upper = xi.support_radius.min(big_r);
    let tau_plus = p.regular_exponent()?;
    let n1 = lit::<T>(p.dim() as f64 - 1.0);
    let area = p.sphere_area();

    let zeros = locate_zeros(&sol.profile, lit::<T>(1e-3) * big_r, upper);
    let mut cuts = xi.breakpoints.clone();
    cuts.extend(zeros.iter().copied());

    // segment sign map from midpoints
    let mut seg_bounds = vec![T::zero()];
    seg_bounds.extend(zeros.iter().copied());
    seg_bounds.push(upper);

    let u = sol.profile.clone();
    let p2 = *p;
    let prof = xi.profile.clone();
    let lhs_abs_integrand = move |r: T| {
        u.value(r).abs() * p2.apply_dual(&prof, r).unwrap_or(T::nan()) * r.powf(tau_plus + n1)
    };
    let lhs_abs_est = integrate_split(&lhs_abs_integrand, T::zero(), upper, &cuts, spec)?;

    let mut rhs_abs = Estimate {
        value: T::zero(),
        error: T::zero(),
    };
    let mut lhs_plus = Estimate {
        value: T::zero(),
        error: T::zero(),
    };
    let mut rhs_plus = Estimate {
        value: T::zero(),
        error: T::zero(),
    };
    for w in seg_bounds.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let mid = (a + b) * lit::<T>(0.5);
        let sgn = if sol.profile.value(mid) >= T::zero() {
            T::one()
        } else {
            -T::one()
        };
        let fv = f.clone();
        let prof2 = xi.profile.clone();
        let seg = move |r: T| fv.value(r) * prof2.value(r) * r.powf(tau_plus + n1);
        let est = integrate_split(&seg, a, b, &xi.breakpoints, spec)?;
        rhs_abs.value = rhs_abs.value + sgn * est.value;
        rhs_abs.error = rhs_abs.error + est.error;
        if sgn > T::zero() {
            rhs_plus.value = rhs_plus.value + est.value;
            rhs_plus.error = rhs_plus.error + est.error;
            let u2 = sol.profile.clone();
            let p3 = *p;
            let prof3 = xi.profile.clone();
            let seg_u = move |r: T| {
                u2.value(r) * p3.apply_dual(&prof3, r).unwrap_or(T::nan()) * r.powf(tau_plus + n1)
            };
            let est_u = integrate_split(&seg_u, a, b, &xi.breakpoints, spec)?;
            lhs_plus.value = lhs_plus.value + est_u.value;
            lhs_plus.error = lhs_plus.error + est_u.error;
        }
    }

    let lhs_abs = area * lhs_abs_est.value;
    let rhs_abs_v = area * rhs_abs.value;
    let lhs_plus_v = area * lhs_plus.value;
    let rhs_plus_v = area * rhs_plus.value;
    let budget =
        area * (lhs_abs_est.error + rhs_abs.error + lhs_plus.error + rhs_plus.error) + lit(1e-9);
    let slack_abs = rhs_abs_v - lhs_abs;
    let slack_plus = rhs_plus_v - lhs_plus_v;
    Ok(KatoReport {
        lhs_abs,
        rhs_abs: rhs_abs_v,
        slack_abs,
        lhs_plus: lhs_plus_v,
        rhs_plus: rhs_plus_v,
        slack_plus,
        budget,
        violation: slack_abs < -budget || slack_plus < -budget,
    })
}

/// Decomposition of a singular solution into k·(ball singular solution) plus
/// the regular part driven by f.
#[derive(Debug, Clone, Copy)]
pub struct Classification<T> {
    pub k_hat: T,
    pub k_error_estimate: T,
    pub decomposition_residual: T,
}

/// Extracts the singularity coefficient and measures the decomposition
/// residual sup |u - k̂·G - G_mu[f]| on an interior probe grid.
pub fn classify_solution<T: Real>(
    p: &HardyParams<T>,
    sol: &RadialSolution<T>,
    f: &RadialFunction<T>,
    spec: &QuadratureSpec<T>,
) -> Result<Classification<T>> {
    let limit = extract_singularity_coefficient(sol, p)?;
    let big_r = sol.profile.support_radius();
    let v_f = solve_radial_bvp(p, sol.mode, f, big_r, T::zero(), spec)?;
    let mut worst = T::zero();
    let m = 16;
    for i in 0..m {
        let t =
            lit::<T>(0.2) * (lit::<T>(0.9) / lit::<T>(0.2)).powf(lit(i as f64 / (m - 1) as f64));
        let r = t * big_r;
        let g = p.green_ball(big_r, r)?;
        let res = (sol.profile.value(r) - limit.value * g - v_f.profile.value(r)).abs();
        if res > worst {
            worst = res;
        }
    }
    Ok(Classification {
        k_hat: limit.value,
        k_error_estimate: limit.error_estimate,
        decomposition_residual: worst,
    })
}

/// The proof-side majorant of the shrinking-bump functional:
/// D(ε) = ε^{-2} ∫_{B_2ε} |u| dμ + ε^{-1} ∫_{B_2ε} |u| |x|^{-1} dμ.
///
/// A nonzero derivative-of-delta component in u would make D grow like a
/// power of 1/ε; order-zero singularities keep it bounded (N ≥ 3, μ > μ₀)
/// or logarithmic (critical case).
pub fn shrinking_bump_majorant<T: Real>(
    p: &HardyParams<T>,
    u: &RadialFunction<T>,
    eps_list: &[T],
    spec: &QuadratureSpec<T>,
) -> Result<Vec<(T, T)>> {
    let tau_plus = p.regular_exponent()?;
    let n1 = lit::<T>(p.dim() as f64 - 1.0);
    let area = p.sphere_area();
    let mut out = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let top = lit::<T>(2.0) * eps;
        let uv = u.clone();
        let g0 = move |r: T| uv.value(r).abs() * r.powf(tau_plus + n1);
        let m0 = integrate_radial(&g0, T::zero(), top, spec)?;
        let uv1 = u.clone();
        let g1 = move |r: T| uv1.value(r).abs() * r.powf(tau_plus + n1 - T::one());
        let m1 = integrate_radial(&g1, T::zero(), top, spec)?;
        let d = area * (m0.value / (eps * eps) + m1.value / eps);
        out.push((eps, d));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadratureSpec;
    use crate::solver::dual_ball_test_function;
    use crate::testfn::{bump_library, default_library, BumpKind};
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec<f64> {
        QuadratureSpec::default()
    }

    fn sweep_mus(p_dim: u32) -> Vec<f64> {
        let mu0 = -((p_dim as f64 - 2.0) / 2.0).powi(2);
        let mut mus = vec![mu0, mu0 + 0.5, 0.0, 1.0, 5.0];
        mus.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        mus
    }

    #[test]
    fn fundamental_identity_symbolic_case() {
        // N=3, μ=2: ∫_0^1 r·L*ξ dr = 2√(μ-μ₀) for the quartic bump, so the
        // pairing equals c_mu exactly.
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let xi = bump_library(BumpKind::Quartic, 1.0).unwrap();
        let res = verify_fundamental_identity(&p, &xi, &spec()).unwrap();
        let c = p.dirac_constant().unwrap();
        assert!((res.lhs - c).abs() < 1e-8 * c, "lhs {} vs {c}", res.lhs);
        assert!(res.within(1e-8, 1e-12));
    }

    #[test]
    fn fundamental_identity_critical_symbolic_case() {
        // N=3, μ=μ₀: ∫_0^1 (-ln r) r (8 - 16 r²) dr = 1, lhs = |S²|.
        let p = HardyParams::<f64>::new(3, -0.25).unwrap();
        let xi = bump_library(BumpKind::Quartic, 1.0).unwrap();
        let res = verify_fundamental_identity(&p, &xi, &spec()).unwrap();
        assert!((res.lhs - 4.0 * PI).abs() < 1e-8 * 4.0 * PI);
        assert!(res.within(1e-6, 1e-10));
    }

    #[test]
    fn fundamental_identity_sweep_over_library() {
        for n in [2u32, 3, 4] {
            for mu in sweep_mus(n) {
                let p = HardyParams::<f64>::new(n, mu).unwrap();
                for xi in default_library::<f64>(1.0) {
                    let res = verify_fundamental_identity(&p, &xi, &spec()).unwrap();
                    assert!(
                        res.within(1e-6, 1e-9),
                        "N={n} mu={mu} xi={}: rel {}",
                        xi.label(),
                        res.rel_residual
                    );
                }
            }
        }
    }

    #[test]
    fn fundamental_identity_offcenter_bump_is_zero() {
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let xi = bump_library(BumpKind::Quartic, 0.2)
            .unwrap()
            .translated(0.5);
        let res = verify_fundamental_identity(&p, &xi, &spec()).unwrap();
        assert_eq!(res.rhs, 0.0);
        assert!(res.lhs.abs() < 1e-8, "lhs {}", res.lhs);
    }

    #[test]
    fn green_identity_cases() {
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let xi = bump_library(BumpKind::Quartic, 1.0).unwrap();
        let res = verify_green_identity(&p, 1.0, &xi, &spec()).unwrap();
        assert!(res.within(1e-7, 1e-10), "rel {}", res.rel_residual);

        let pc = HardyParams::<f64>::new(3, -0.25).unwrap();
        let resc = verify_green_identity(&pc, 1.0, &xi, &spec()).unwrap();
        assert!(resc.within(1e-6, 1e-9), "rel {}", resc.rel_residual);
    }

    #[test]
    fn green_identity_truncated_dual_solution() {
        // ξ₀ smoothly truncated back into the compact library class.
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let xi0 = p.dual_ball_profile(1.0).unwrap();
        let cut = bump_library::<f64>(BumpKind::Cutoff, 0.5).unwrap();
        let prod = xi0.mul(&cut.profile);
        let xi = TestFunction::compact(prod, 1.0, vec![0.5, 1.0], "xi0*cutoff");
        let res = verify_green_identity(&p, 1.0, &xi, &spec()).unwrap();
        assert!(res.within(1e-6, 1e-9), "rel {}", res.rel_residual);
    }

    #[test]
    fn green_identity_offcenter_bump_is_zero() {
        // Supported away from the origin, ξ(0) = 0, and the singular solution
        // is annihilated by the operator there.
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let xi = bump_library(BumpKind::Quartic, 0.15)
            .unwrap()
            .translated(0.5);
        let res = verify_green_identity(&p, 1.0, &xi, &spec()).unwrap();
        assert_eq!(res.rhs, 0.0);
        assert!(res.lhs.abs() < 1e-8, "lhs {}", res.lhs);
    }

    #[test]
    fn derivative_free_cross_check() {
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let xi = bump_library(BumpKind::Quartic, 1.0).unwrap();
        let analytic = verify_fundamental_identity(&p, &xi, &spec()).unwrap();
        // Finite-difference derivatives put a noise floor under the
        // integrand; the check runs at a matching tolerance.
        let mut fd_spec = spec();
        fd_spec.rel_tol = 1e-8;
        fd_spec.abs_tol = 1e-10;
        let fd =
            verify_fundamental_identity(&p, &xi.finite_difference_version(), &fd_spec).unwrap();
        assert!(
            (analytic.lhs - fd.lhs).abs() < 1e-5 * analytic.lhs.abs(),
            "{} vs {}",
            analytic.lhs,
            fd.lhs
        );
    }

    #[test]
    fn weak_solution_closed_form_source() {
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let f = RadialFunction::constant(1.0, 1.0);
        let sol = solve_radial_bvp(&p, 0, &f, 1.0, 0.0, &spec()).unwrap();
        let xis = default_library::<f64>(1.0);
        for res in verify_weak_solution(&p, &sol, &f, 0.0, &xis, &spec()).unwrap() {
            assert!(res.within(1e-8, 1e-9), "rel {}", res.rel_residual);
        }
    }

    #[test]
    fn weak_solution_green_consistency() {
        // f ≡ 0, k = 1 reduces to the Green identity.
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let f = RadialFunction::zero(1.0);
        let sol = solve_radial_bvp(&p, 0, &f, 1.0, 1.0, &spec()).unwrap();
        let xis = vec![bump_library(BumpKind::Quartic, 1.0).unwrap()];
        let res = &verify_weak_solution(&p, &sol, &f, 1.0, &xis, &spec()).unwrap()[0];
        let direct = verify_green_identity(&p, 1.0, &xis[0], &spec()).unwrap();
        assert!((res.lhs - direct.lhs).abs() < 1e-8 * direct.lhs.abs());
        assert!(res.within(1e-7, 1e-9));
    }

    #[test]
    fn weak_solution_singular_source_with_k() {
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let f = RadialFunction::power(-3.5, 1.0);
        let sol = solve_radial_bvp(&p, 0, &f, 1.0, 2.0, &spec()).unwrap();
        let xis = vec![bump_library(BumpKind::Quartic, 1.0).unwrap()];
        for res in verify_weak_solution(&p, &sol, &f, 2.0, &xis, &spec()).unwrap() {
            assert!(res.within(1e-6, 1e-8), "rel {}", res.rel_residual);
        }
        let class = classify_solution(&p, &sol, &f, &spec()).unwrap();
        assert!((class.k_hat - 2.0).abs() < 1e-4);
    }

    #[test]
    fn kato_equality_for_signed_free_source() {
        // f ≥ 0 forces u ≥ 0 and (sign) becomes the weak identity.
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let f = RadialFunction::constant(1.0, 1.0);
        let sol = solve_radial_bvp(&p, 0, &f, 1.0, 0.0, &spec()).unwrap();
        let xi = bump_library(BumpKind::Quartic, 1.0).unwrap();
        let rep = check_kato(&p, &sol, &f, &xi, &spec()).unwrap();
        assert!(!rep.violation);
        assert!(rep.slack_abs.abs() < 1e-8, "slack {}", rep.slack_abs);
    }

    #[test]
    fn kato_strict_for_sign_changing_source() {
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let f = RadialFunction::from_fn(|r: f64| (6.0 * PI * r).sin(), 1.0);
        let sol = solve_radial_bvp(&p, 0, &f, 1.0, 0.0, &spec()).unwrap();
        let xi = dual_ball_test_function(&p, 1.0).unwrap();
        let rep = check_kato(&p, &sol, &f, &xi, &spec()).unwrap();
        assert!(
            !rep.violation,
            "slacks {} {}",
            rep.slack_abs, rep.slack_plus
        );
        assert!(rep.slack_abs > 1e-6, "expected strict inequality");
    }

    #[test]
    fn kato_zero_source() {
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let f = RadialFunction::zero(1.0);
        let sol = solve_radial_bvp(&p, 0, &f, 1.0, 0.0, &spec()).unwrap();
        let xi = bump_library(BumpKind::Quartic, 1.0).unwrap();
        let rep = check_kato(&p, &sol, &f, &xi, &spec()).unwrap();
        assert!(rep.lhs_abs.abs() < 1e-9 && rep.rhs_abs.abs() < 1e-9);
    }

    #[test]
    fn classification_of_composite_solution() {
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let one = RadialFunction::constant(1.0, 1.0);
        let v = solve_radial_bvp(&p, 0, &one, 1.0, 0.0, &spec()).unwrap();
        let g = solve_radial_bvp(&p, 0, &RadialFunction::zero(1.0), 1.0, 1.0, &spec()).unwrap();
        let combo = RadialSolution {
            profile: RadialFunction::linear_comb(3.0, &g.profile, 1.0, &v.profile).clamped(1.0),
            k: 3.0,
            boundary_value: 0.0,
            mode: 0,
            residual_norm: 0.0,
        };
        let class = classify_solution(&p, &combo, &one, &spec()).unwrap();
        assert!((class.k_hat - 3.0).abs() < 1e-4, "{}", class.k_hat);
        assert!(
            class.decomposition_residual < 1e-6,
            "{}",
            class.decomposition_residual
        );

        let plain = classify_solution(&p, &v, &one, &spec()).unwrap();
        assert!(plain.k_hat.abs() < 1e-7);
    }

    #[test]
    fn shrinking_bump_majorant_bounded_supercritical() {
        let p = HardyParams::<f64>::new(3, 2.0).unwrap();
        let g = p.green_ball_profile(1.0).unwrap();
        let eps: Vec<f64> = (3..=10).map(|k| 2f64.powi(-k)).collect();
        let d = shrinking_bump_majorant(&p, &g, &eps, &spec()).unwrap();
        let first = d[0].1;
        for &(e, v) in &d {
            assert!(v <= 1.1 * first, "eps={e}: {v} vs first {first}");
        }
    }

    #[test]
    fn shrinking_bump_majorant_log_growth_in_2d() {
        let p = HardyParams::<f64>::new(2, 0.0).unwrap();
        let g = p.green_ball_profile(1.0).unwrap();
        let eps: Vec<f64> = (3..=10).map(|k| 2f64.powi(-k)).collect();
        let d = shrinking_bump_majorant(&p, &g, &eps, &spec()).unwrap();
        let unit = d[0].1 / (d[0].0.ln().abs());
        for &(e, v) in &d {
            assert!(
                v / e.ln().abs() <= 1.1 * unit,
                "eps={e}: {} vs {unit}",
                v / e.ln().abs()
            );
        }
    }
}
