//! Small least-squares helpers for growth classification.

use crate::error::GrowthModel;
use crate::real::{lit, Real};

/// Ordinary least squares y = a + b x. Returns (a, b, r_squared).
pub fn line_fit<T: Real>(xs: &[T], ys: &[T]) -> (T, T, T) {
    let n = lit::<T>(xs.len() as f64);
    let sx: T = xs.iter().copied().sum();
    let sy: T = ys.iter().copied().sum();
    let mx = sx / n;
    let my = sy / n;
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    let mut syy = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
        syy = syy + (y - my) * (y - my);
    }
    if sxx == T::zero() {
        return (my, T::zero(), T::one());
    }
    let b = sxy / sxx;
    let a = my - b * mx;
    let ss_res = syy - b * sxy;
    let r2 = if syy > T::zero() {
        T::one() - ss_res / syy
    } else {
        T::one()
    };
    (a, b, r2)
}

/// Fit diagnostics for one growth model against an exhaustion sequence.
#[derive(Debug, Clone, Copy)]
pub struct GrowthFit<T> {
    pub model: GrowthModel,
    /// Log: slope against ln n. Power: exponent of n. Bounded: the limit.
    pub coefficient: T,
    pub r_squared: T,
    pub aic: T,
}

fn aic<T: Real>(rss: T, n_pts: usize, k_params: usize) -> T {
    let n = lit::<T>(n_pts as f64);
    let rss = rss.max(lit(1e-300));
    n * (rss / n).ln() + lit::<T>(2.0 * k_params as f64)
}

fn rss_linear<T: Real>(xs: &[T], ys: &[T]) -> (T, T, T) {
    let (a, b, _) = line_fit(xs, ys);
    let mut rss = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let e = y - (a + b * x);
        rss = rss + e * e;
    }
    (a, b, rss)
}

/// Classifies an exhaustion sequence u(n) on a geometric grid of n values by
/// AIC over three models: bounded (a + c·λ^j), logarithmic (a + b ln n) and
/// power (a + c·n^p). Rates for the nonlinear models come from the increment
/// ratios, after which each fit is linear.
pub fn classify_growth<T: Real>(ns: &[T], us: &[T]) -> GrowthFit<T> {
    assert!(ns.len() == us.len() && ns.len() >= 3);
    let m = ns.len();

    // An essentially constant sequence is bounded with its mean as limit.
    let max_abs = us.iter().fold(T::zero(), |a, &u| a.max(u.abs()));
    let spread = us.iter().fold(T::zero(), |a, &u| a.max((u - us[0]).abs()));
    if spread <= lit::<T>(1e-12) * max_abs.max(T::one()) {
        let mean = us.iter().copied().sum::<T>() / lit::<T>(m as f64);
        return GrowthFit {
            model: GrowthModel::Bounded,
            coefficient: mean,
            r_squared: T::one(),
            aic: -T::infinity(),
        };
    }

    // Increment ratio on the geometric grid fixes the rate of the nonlinear
    // models: u_{j+1}-u_j = c λ^j (bounded) or c (g^p - 1) n_j^p (power),
    // where g is the grid ratio.
    let mut incr = Vec::with_capacity(m - 1);
    for j in 0..m - 1 {
        incr.push(us[j + 1] - us[j]);
    }
    let mut ratios = Vec::new();
    for j in 0..incr.len() - 1 {
        if incr[j].abs() > lit(1e-300) {
            ratios.push(incr[j + 1] / incr[j]);
        }
    }
    let mean_ratio = if ratios.is_empty() {
        T::zero()
    } else {
        ratios.iter().copied().sum::<T>() / lit::<T>(ratios.len() as f64)
    };
    let grid_ratio = ns[1] / ns[0];

    // Log model: u = a + b ln n.
    let ln_ns: Vec<T> = ns.iter().map(|&n| n.ln()).collect();
    let (_, b_log, rss_log) = rss_linear(&ln_ns, us);
    let (_, _, r2_log) = line_fit(&ln_ns, us);
    let log_fit = GrowthFit {
        model: GrowthModel::Log,
        coefficient: b_log,
        r_squared: r2_log,
        aic: aic(rss_log, m, 2),
    };

    // Bounded model: u = a + c λ^j with λ from the increment ratio; the limit
    // a is refined by iterated Aitken extrapolation.
    let bounded_fit = {
        let lam = mean_ratio.abs().min(lit(0.999));
        let mut xs = Vec::with_capacity(m);
        let mut pw = T::one();
        for _ in 0..m {
            xs.push(pw);
            pw = pw * lam;
        }
        let (a, _, rss) = rss_linear(&xs, us);
        let (_, _, r2) = line_fit(&xs, us);
        let limit = crate::extrapolate::aitken_limit(us)
            .map(|l| l.value)
            .unwrap_or(a);
        GrowthFit {
            model: GrowthModel::Bounded,
            coefficient: limit,
            r_squared: r2,
            aic: aic(rss, m, 3),
        }
    };

    // Power model: u = a + c n^p, p from the increment ratio. A ratio barely
    // above 1 is indistinguishable from logarithmic growth, so the power
    // model only competes past a margin.
    let power_fit = if mean_ratio > lit(1.03) {
        let p = mean_ratio.ln() / grid_ratio.ln();
        let xs: Vec<T> = ns.iter().map(|&n| n.powf(p)).collect();
        let (_, _, rss) = rss_linear(&xs, us);
        let (_, _, r2) = line_fit(&xs, us);
        Some(GrowthFit {
            model: GrowthModel::Power,
            coefficient: p,
            r_squared: r2,
            aic: aic(rss, m, 3),
        })
    } else {
        None
    };

    let mut best = if bounded_fit.aic < log_fit.aic && mean_ratio < lit(0.98) {
        bounded_fit
    } else {
        log_fit
    };
    if let Some(pf) = power_fit {
        if pf.aic < best.aic {
            best = pf;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_fit_recovers_slope() {
        let xs = [1.0f64, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        let (a, b, r2) = line_fit(&xs, &ys);
        assert!((a - 1.0).abs() < 1e-12 && (b - 2.0).abs() < 1e-12);
        assert!((r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn classify_pure_log_growth() {
        let ns: Vec<f64> = (0..7).map(|j| 4.0 * 2f64.powi(j)).collect();
        let us: Vec<f64> = ns.iter().map(|n| -0.9 + 1.2 * n.ln()).collect();
        let fit = classify_growth(&ns, &us);
        assert_eq!(fit.model, GrowthModel::Log);
        assert!((fit.coefficient - 1.2).abs() < 1e-10);
        assert!(fit.r_squared > 0.99999);
    }

    #[test]
    fn classify_power_growth() {
        let ns: Vec<f64> = (0..7).map(|j| 4.0 * 2f64.powi(j)).collect();
        let us: Vec<f64> = ns.iter().map(|n| 0.3 + 0.05 * n.powf(0.8)).collect();
        let fit = classify_growth(&ns, &us);
        assert_eq!(fit.model, GrowthModel::Power);
        assert!((fit.coefficient - 0.8).abs() < 1e-6);
    }

    #[test]
    fn classify_bounded_sequence() {
        let ns: Vec<f64> = (0..7).map(|j| 4.0 * 2f64.powi(j)).collect();
        let us: Vec<f64> = ns.iter().map(|n| 5.0 - 3.0 * n.powf(-0.2)).collect();
        let fit = classify_growth(&ns, &us);
        assert_eq!(fit.model, GrowthModel::Bounded);
        assert!((fit.coefficient - 5.0).abs() < 1e-6, "{}", fit.coefficient);
    }
}
