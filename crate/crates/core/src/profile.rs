//! Evaluable radial profiles.
//!
//! [`RadialFunction`] carries a value closure plus optional analytic first and
//! second derivative closures; when they are missing, high-order central
//! finite differences back the derivative calls.

use std::sync::Arc;

use crate::real::{lit, Real};

type Closure<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A function of the radius on (0, support_radius], with derivative access.
#[derive(Clone)]
pub struct RadialFunction<T> {
    eval: Closure<T>,
    d1: Option<Closure<T>>,
    d2: Option<Closure<T>>,
    support_radius: T,
    /// Largest radius at which `eval` may be called; `None` when the closure
    /// is valid for every r > 0 (e.g. closed forms, compact bumps extended by
    /// zero). Finite-difference stencils clamp here.
    hard_end: Option<T>,
}

impl<T: Real> RadialFunction<T> {
    pub fn from_fn(f: impl Fn(T) -> T + Send + Sync + 'static, support_radius: T) -> Self {
        Self {
            eval: Arc::new(f),
            d1: None,
            d2: None,
            support_radius,
            hard_end: None,
        }
    }

    pub fn with_derivatives(
        f: impl Fn(T) -> T + Send + Sync + 'static,
        d1: impl Fn(T) -> T + Send + Sync + 'static,
        d2: impl Fn(T) -> T + Send + Sync + 'static,
        support_radius: T,
    ) -> Self {
        Self {
            eval: Arc::new(f),
            d1: Some(Arc::new(d1)),
            d2: Some(Arc::new(d2)),
            support_radius,
            hard_end: None,
        }
    }

    /// Marks the profile as evaluable only up to `end` (solver outputs).
    pub fn clamped(mut self, end: T) -> Self {
        self.hard_end = Some(end);
        self
    }

    pub fn constant(c: T, support_radius: T) -> Self {
        Self::with_derivatives(move |_| c, |_| T::zero(), |_| T::zero(), support_radius)
    }

    pub fn zero(support_radius: T) -> Self {
        Self::constant(T::zero(), support_radius)
    }

    /// r^alpha with analytic derivatives.
    pub fn power(alpha: T, support_radius: T) -> Self {
        let one = T::one();
        Self::with_derivatives(
            move |r: T| r.powf(alpha),
            move |r: T| alpha * r.powf(alpha - one),
            move |r: T| alpha * (alpha - one) * r.powf(alpha - one - one),
            support_radius,
        )
    }

    /// -r^alpha ln r with analytic derivatives (the critical singular branch).
    pub fn log_power(alpha: T, support_radius: T) -> Self {
        let one = T::one();
        let two = lit::<T>(2.0);
        Self::with_derivatives(
            move |r: T| -r.powf(alpha) * r.ln(),
            move |r: T| -r.powf(alpha - one) * (alpha * r.ln() + one),
            move |r: T| -r.powf(alpha - two) * (alpha * (alpha - one) * r.ln() + two * alpha - one),
            support_radius,
        )
    }

    pub fn support_radius(&self) -> T {
        self.support_radius
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.d1.is_some() && self.d2.is_some()
    }

    /// Drops the analytic derivative closures (finite differences take over).
    pub fn without_analytic_derivatives(&self) -> Self {
        Self {
            eval: self.eval.clone(),
            d1: None,
            d2: None,
            support_radius: self.support_radius,
            hard_end: self.hard_end,
        }
    }

    pub fn value(&self, r: T) -> T {
        (self.eval)(r)
    }

    pub fn d1(&self, r: T) -> T {
        match &self.d1 {
            Some(f) => f(r),
            None => self.fd_d1(r),
        }
    }

    pub fn d2(&self, r: T) -> T {
        match &self.d2 {
            Some(f) => f(r),
            None => self.fd_d2(r),
        }
    }

    fn fd_step(&self, r: T) -> T {
        // 5-point stencils: h ~ eps^{1/5} balances truncation and roundoff.
        let base = T::epsilon().powf(lit::<T>(0.2)) * r.abs().max(lit::<T>(0.05));
        let mut h = base;
        if r > T::zero() {
            h = h.min(r * lit::<T>(0.45));
        }
        if let Some(end) = self.hard_end {
            let room = (end - r) * lit::<T>(0.45);
            if room > T::zero() {
                h = h.min(room);
            }
        }
        h.max(T::epsilon().sqrt() * lit::<T>(1e-2))
    }

    fn fd_d1(&self, r: T) -> T {
        let h = self.fd_step(r);
        let two = lit::<T>(2.0);
        let eight = lit::<T>(8.0);
        let f1 = self.value(r - two * h);
        let f2 = self.value(r - h);
        let f3 = self.value(r + h);
        let f4 = self.value(r + two * h);
        (f1 - eight * f2 + eight * f3 - f4) / (lit::<T>(12.0) * h)
    }

    fn fd_d2(&self, r: T) -> T {
        let h = self.fd_step(r);
        let two = lit::<T>(2.0);
        let f0 = self.value(r);
        let f1 = self.value(r - two * h);
        let f2 = self.value(r - h);
        let f3 = self.value(r + h);
        let f4 = self.value(r + two * h);
        (-f1 + lit::<T>(16.0) * f2 - lit::<T>(30.0) * f0 + lit::<T>(16.0) * f3 - f4)
            / (lit::<T>(12.0) * h * h)
    }

    /// Pointwise scaling by a constant (derivatives preserved).
    pub fn scale(&self, c: T) -> Self {
        let f = self.clone();
        let g = self.clone();
        let h = self.clone();
        Self {
            eval: Arc::new(move |r| c * f.value(r)),
            d1: Some(Arc::new(move |r| c * g.d1(r))),
            d2: Some(Arc::new(move |r| c * h.d2(r))),
            support_radius: self.support_radius,
            hard_end: self.hard_end,
        }
    }

    /// Pointwise sum (derivatives preserved; support is the larger one).
    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let (a1, b1) = (self.clone(), other.clone());
        let (a2, b2) = (self.clone(), other.clone());
        let analytic = self.has_analytic_derivatives() && other.has_analytic_derivatives();
        let hard_end = match (self.hard_end, other.hard_end) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        };
        Self {
            eval: Arc::new(move |r| a.value(r) + b.value(r)),
            d1: analytic.then(|| Arc::new(move |r: T| a1.d1(r) + b1.d1(r)) as Closure<T>),
            d2: analytic.then(|| Arc::new(move |r: T| a2.d2(r) + b2.d2(r)) as Closure<T>),
            support_radius: self.support_radius.max(other.support_radius),
            hard_end,
        }
    }

    /// c1·f1 + c2·f2.
    pub fn linear_comb(c1: T, f1: &Self, c2: T, f2: &Self) -> Self {
        f1.scale(c1).add(&f2.scale(c2))
    }

    /// Pointwise product; derivatives by the product rule when both factors
    /// carry analytic closures.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let (a1, b1) = (self.clone(), other.clone());
        let (a2, b2) = (self.clone(), other.clone());
        let analytic = self.has_analytic_derivatives() && other.has_analytic_derivatives();
        let hard_end = match (self.hard_end, other.hard_end) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        };
        Self {
            eval: Arc::new(move |r| a.value(r) * b.value(r)),
            d1: analytic.then(|| {
                Arc::new(move |r: T| a1.d1(r) * b1.value(r) + a1.value(r) * b1.d1(r)) as Closure<T>
            }),
            d2: analytic.then(|| {
                Arc::new(move |r: T| {
                    a2.d2(r) * b2.value(r)
                        + lit::<T>(2.0) * a2.d1(r) * b2.d1(r)
                        + a2.value(r) * b2.d2(r)
                }) as Closure<T>
            }),
            support_radius: self.support_radius.min(other.support_radius),
            hard_end,
        }
    }
}

impl<T: std::fmt::Debug> std::fmt::Debug for RadialFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialFunction")
            .field("support_radius", &self.support_radius)
            .field(
                "analytic_derivatives",
                &(self.d1.is_some() && self.d2.is_some()),
            )
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fd_matches_analytic_on_powers() {
        for &alpha in &[-2.0, -0.5, 1.0, 2.5] {
            let p = RadialFunction::<f64>::power(alpha, 1.0);
            let q = p.without_analytic_derivatives();
            for &r in &[0.2, 0.5, 0.8] {
                let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
                assert!(rel(q.d1(r), p.d1(r)) < 1e-6, "d1 alpha={alpha} r={r}");
                assert!(rel(q.d2(r), p.d2(r)) < 1e-6, "d2 alpha={alpha} r={r}");
            }
        }
    }

    #[test]
    fn fd_matches_analytic_on_log_power() {
        let p = RadialFunction::<f64>::log_power(-0.5, 1.0);
        let q = p.without_analytic_derivatives();
        for &r in &[0.1, 0.3, 0.7] {
            assert!((q.d1(r) - p.d1(r)).abs() / p.d1(r).abs() < 1e-6);
            assert!((q.d2(r) - p.d2(r)).abs() / p.d2(r).abs() < 1e-6);
        }
    }

    #[test]
    fn linear_combination() {
        let a = RadialFunction::<f64>::power(2.0, 1.0);
        let b = RadialFunction::<f64>::constant(3.0, 1.0);
        let c = RadialFunction::linear_comb(2.0, &a, -1.0, &b);
        assert!((c.value(0.5) - (2.0 * 0.25 - 3.0)).abs() < 1e-15);
        assert!((c.d1(0.5) - 2.0).abs() < 1e-12);
    }
}
