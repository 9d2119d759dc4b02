//! Numerical demonstrations of the nonexistence and threshold phenomena.
//!
//! Three probes: the sharpness dichotomy for the weighted integrability of
//! the source (exhaustion on shrinking annuli blows up exactly when the
//! weighted tail diverges), the oscillation of radial homogeneous solutions
//! below the threshold μ₀, and the annulus eigenvalue scan whose principal
//! eigenvalue decreases strictly to the Hardy constant without attaining it.

use crate::error::{DivergenceEvidence, GrowthModel, HardyError, Result};
use crate::fit::classify_growth;
use crate::params::HardyParams;
use crate::profile::RadialFunction;
use crate::quad::{weighted_l1_norm, Integrability, QuadratureSpec};
use crate::real::{lit, Real};
use crate::solver::{solve_annulus, ExhaustionSeries};

/// Evidence-backed classification of a source term against the weighted
/// integrability conditions.
#[derive(Debug, Clone)]
pub struct SourceClass<T> {
    /// f ∈ L¹(B, dμ), with the computed norm when finite.
    pub f1_finite: bool,
    pub l1_norm: Option<T>,
    /// lim f(r)·r^{2-τ₋} = 0 on the probe grid (log-log slope evidence).
    pub cond_413: bool,
    /// Truncated integrals blow up as the inner radius shrinks.
    pub f2_divergent: bool,
    pub divergence: Option<DivergenceEvidence>,
}

/// Zero set of the oscillating homogeneous solution below the threshold.
#[derive(Debug, Clone)]
pub struct OscillationReport<T> {
    /// Zeros in decreasing order.
    pub zero_locations: Vec<T>,
    /// Ratios r_k / r_{k+1} of consecutive zeros.
    pub consecutive_ratios: Vec<T>,
    /// exp(π/√(μ₀-μ)), the exact limit of the ratios.
    pub predicted_ratio: T,
}

/// Principal-eigenvalue curve of -Δu = λ a₀ u/|x|² on annuli (ε, 1).
#[derive(Debug, Clone)]
pub struct EigenCurve<T> {
    pub eps_list: Vec<T>,
    pub lambda1: Vec<T>,
    /// (N-2)²/(4a₀), the unattained infimum.
    pub hardy_constant: T,
}

/// Classifies f against the integrability conditions that separate existence
/// from nonexistence.
pub fn classify_source<T: Real>(
    p: &HardyParams<T>,
    f: &RadialFunction<T>,
    big_r: T,
    spec: &QuadratureSpec<T>,
) -> Result<SourceClass<T>> {
    let norm = weighted_l1_norm(p, f, big_r, spec).map_err(|e| match e {
        HardyError::ToleranceNotMet { estimate, error } => HardyError::Inconclusive(format!(
            "weighted norm neither converged nor diverged (estimate {estimate}, error {error})"
        )),
        other => other,
    })?;
    let (f1_finite, l1_norm, f2_divergent, divergence) = match norm {
        Integrability::Finite(est) => (true, Some(est.value), false, None),
        Integrability::Divergent(ev) => (false, None, true, Some(ev)),
    };

    // Condition lim f(r) r^{2-τ₋} = 0, tested by the log-log slope on a
    // geometric grid. A clearly positive slope (or uniformly negligible
    // values) counts as vanishing.
    let tau_minus = p.singular_exponent()?;
    let expo = lit::<T>(2.0) - tau_minus;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut all_tiny = true;
    for j in 0..=12 {
        let r = lit::<T>(10f64.powf(-1.0 - j as f64 / 2.0)) * big_r;
        let v = (f.value(r) * r.powf(expo)).abs();
        if v > lit(1e-10) {
            all_tiny = false;
        }
        if v > T::zero() {
            xs.push(r.ln());
            ys.push(v.ln());
        }
    }
    let cond_413 = if all_tiny {
        true
    } else if xs.len() >= 3 {
        let (_, slope, _) = crate::fit::line_fit(&xs, &ys);
        slope > lit(0.05)
    } else {
        false
    };

    Ok(SourceClass {
        f1_finite,
        l1_norm,
        cond_413,
        f2_divergent,
        divergence,
    })
}

/// Exhaustion on annuli (1/n, R) with zero boundary data: records u_n at the
/// probe radius for n = 4, 8, ..., up to n_max and classifies the growth.
///
/// A bounded fit for a source certified divergent (or unbounded growth for a
/// certified-integrable one) is a probe failure, not a finding.
pub fn nonexistence_probe<T: Real>(
    p: &HardyParams<T>,
    f: &RadialFunction<T>,
    x0: T,
    n_max: u32,
    spec: &QuadratureSpec<T>,
) -> Result<ExhaustionSeries<T>> {
    let big_r = f.support_radius();
    if x0 <= lit(0.25) || x0 >= big_r {
        return Err(HardyError::DomainError(x0.to_f64().unwrap_or(f64::NAN)));
    }
    let source = classify_source(p, f, big_r, spec)?;

    let mut ns = Vec::new();
    let mut n = 4u32;
    while n <= n_max {
        ns.push(n);
        n *= 2;
    }
    if ns.len() < 3 {
        return Err(HardyError::NumericFailure("need n_max >= 16".into()));
    }
    let mut inner_radii = Vec::with_capacity(ns.len());
    let mut values = Vec::with_capacity(ns.len());
    for &n in &ns {
        let a = T::one() / lit::<T>(n as f64);
        let sol = solve_annulus(p, f, a, big_r, T::zero(), spec)?;
        inner_radii.push(a);
        values.push(sol.profile.value(x0));
    }
    let ns_t: Vec<T> = ns.iter().map(|&n| lit(n as f64)).collect();
    let fit = classify_growth(&ns_t, &values);

    let unbounded = matches!(fit.model, GrowthModel::Log | GrowthModel::Power);
    if source.f2_divergent && !unbounded {
        return Err(HardyError::ProbeFailure(format!(
            "divergent source produced a bounded exhaustion fit ({:?})",
            fit.model
        )));
    }
    if source.f1_finite && unbounded {
        return Err(HardyError::ProbeFailure(format!(
            "integrable source produced an unbounded exhaustion fit ({:?})",
            fit.model
        )));
    }

    Ok(ExhaustionSeries {
        inner_radii,
        values_at_probe: values,
        growth_fit: fit,
    })
}

/// Oscillation of r^{(2-N)/2} cos(√(μ₀-μ) ln r) below the threshold: zeros
/// located by bisection, consecutive ratios against exp(π/√(μ₀-μ)).
pub fn sub_hardy_probe<T: Real>(dim: u32, mu: T, r_max: T) -> Result<OscillationReport<T>> {
    let p = HardyParams::new(dim, mu)?;
    if mu >= p.mu_critical() {
        return Err(HardyError::WrongRegime {
            mu: mu.to_f64().unwrap_or(f64::NAN),
            mu0: p.mu_critical().to_f64().unwrap_or(f64::NAN),
        });
    }
    let omega = (p.mu_critical() - mu).sqrt();
    let half_codim = lit::<T>((dim as f64 - 2.0) / 2.0);
    let u = move |r: T| r.powf(-half_codim) * (omega * r.ln()).cos();

    // March down in t = ln r with steps small against the half-period.
    let step = lit::<T>(std::f64::consts::PI) / (omega * lit::<T>(16.0));
    let mut zeros = Vec::new();
    let mut t = r_max.ln();
    let mut prev = u(t.exp());
    while zeros.len() < 12 {
        let t_next = t - step;
        let v = u(t_next.exp());
        if prev * v < T::zero() {
            let (mut a, mut b) = (t_next, t);
            let mut fa = v;
            for _ in 0..80 {
                let mid = (a + b) * lit(0.5);
                let fm = u(mid.exp());
                if fa * fm <= T::zero() {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            zeros.push(((a + b) * lit::<T>(0.5)).exp());
        }
        t = t_next;
        prev = v;
    }
    let ratios: Vec<T> = zeros.windows(2).map(|w| w[0] / w[1]).collect();
    Ok(OscillationReport {
        zero_locations: zeros,
        consecutive_ratios: ratios,
        predicted_ratio: (lit::<T>(std::f64::consts::PI) / omega).exp(),
    })
}

/// Shooting integration of the log-variable form of the annulus problem:
/// y'' + (λ a₀ - (N-2)²/4) y = 0 on [ln ε, 0], y(ln ε) = 0. Returns y(0) and
/// the number of interior sign changes.
fn shoot<T: Real>(omega_sq: T, t_span: T, steps: usize) -> (T, usize) {
    let h = t_span / lit::<T>(steps as f64);
    let mut y = T::zero();
    let mut yp = T::one();
    let mut nodes = 0usize;
    let f = |y: T| -omega_sq * y;
    for _ in 0..steps {
        // RK4 on (y, y')
        let k1y = yp;
        let k1p = f(y);
        let k2y = yp + h * k1p * lit(0.5);
        let k2p = f(y + h * k1y * lit(0.5));
        let k3y = yp + h * k2p * lit(0.5);
        let k3p = f(y + h * k2y * lit(0.5));
        let k4y = yp + h * k3p;
        let k4p = f(y + h * k3y);
        let y_new = y + h * (k1y + lit::<T>(2.0) * k2y + lit::<T>(2.0) * k3y + k4y) / lit(6.0);
        let yp_new = yp + h * (k1p + lit::<T>(2.0) * k2p + lit::<T>(2.0) * k3p + k4p) / lit(6.0);
        if y * y_new < T::zero() {
            nodes += 1;
        }
        y = y_new;
        yp = yp_new;
    }
    (y, nodes)
}

/// Radial principal eigenvalue of -Δu = λ (a₀/|x|²) u on the annulus (ε, 1)
/// for each ε, by shooting and bisection. The curve decreases strictly to
/// the Hardy constant (N-2)²/(4a₀) and never attains it.
pub fn eigen_scan<T: Real>(dim: u32, a0: T, eps_list: &[T]) -> Result<EigenCurve<T>> {
    if dim < 2 {
        return Err(HardyError::InvalidDimension(dim));
    }
    if a0 <= T::zero() {
        return Err(HardyError::NumericFailure("a0 must be positive".into()));
    }
    let hardy = lit::<T>(((dim as f64 - 2.0) / 2.0).powi(2)) / a0;
    let mut lambda1 = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        if eps <= T::zero() || eps >= T::one() {
            return Err(HardyError::DomainError(eps.to_f64().unwrap_or(f64::NAN)));
        }
        let span = -eps.ln();
        let steps = 4000;
        // ω² = λ a₀ - (N-2)²/4; principal eigenvalue at ω·span = π.
        let shoot_at = |lambda: T| {
            let omega_sq = lambda * a0 - hardy * a0;
            shoot(omega_sq, span, steps)
        };
        // Bracket: y(0) > 0 below λ₁ (no node), < 0 just above.
        let mut lo = hardy;
        let mut offset = (lit::<T>(std::f64::consts::PI) / span).powi(2) / a0;
        let mut hi = hardy + offset * lit(1.5);
        let mut grow = 0;
        while shoot_at(hi).0 > T::zero() {
            offset = offset * lit(2.0);
            hi = hardy + offset;
            grow += 1;
            if grow > 60 {
                return Err(HardyError::NumericFailure(format!(
                    "eigenvalue bracket failed: lo={lo:?}, hi={hi:?}"
                )));
            }
        }
        for _ in 0..90 {
            let mid = (lo + hi) * lit(0.5);
            let (y_end, nodes) = shoot_at(mid);
            if y_end > T::zero() && nodes == 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let lambda = (lo + hi) * lit(0.5);
        let (_, nodes) = shoot_at(lo);
        if nodes != 0 {
            return Err(HardyError::NumericFailure(
                "principal branch lost: interior node below the eigenvalue".into(),
            ));
        }
        lambda1.push(lambda);
    }
    Ok(EigenCurve {
        eps_list: eps_list.to_vec(),
        lambda1,
        hardy_constant: hardy,
    })
}
