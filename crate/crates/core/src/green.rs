//! Angular-mode series for the full Green kernel on the unit ball.
//!
//! Separation of variables turns L_mu into the family of radial operators
//! with μ_l = μ + l(l+N-2); each mode has the closed-form two-power basis, so
//! the per-mode kernels cost nothing to evaluate. The assembled kernel is the
//! dμ-normalized one: K(x, y) → G_mu(|x|)/c_mu as y → 0, and the symmetric
//! Lebesgue kernel is Γ_mu(|y|)·K(x, y). Zonal harmonics are exact for
//! N ∈ {2, 3} (Chebyshev and Legendre); higher dimensions go through the
//! radial l = 0 channel only.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HardyError, Result};
use crate::params::{HardyParams, Regime};
use crate::profile::RadialFunction;
use crate::quad::{weighted_l1_norm, Integrability, QuadratureSpec};
use crate::real::{lit, Real};

#[derive(Debug, Clone, Copy)]
struct ModeData<T> {
    sigma_minus: T,
    sigma_plus: T,
    constant: T,
    critical: bool,
}

/// Truncated zonal-harmonic expansion of the Green kernel.
#[derive(Debug, Clone)]
pub struct GreenKernelSeries<T> {
    params: HardyParams<T>,
    radius: T,
    max_mode: usize,
    /// Relative tolerance the geometric tail bound must meet at evaluation.
    tail_tol: T,
    modes: Vec<ModeData<T>>,
}

/// One sampled pair in a bound check, in polar form (radii and the cosine of
/// the angle between the two points).
#[derive(Debug, Clone, Copy)]
pub struct BoundSample<T> {
    pub r: T,
    pub s: T,
    pub cos_gamma: T,
    pub dist: T,
    pub kernel_value: T,
    pub upper_envelope: T,
    pub lower_envelope: Option<T>,
}

/// Outcome of an envelope check over sampled pairs.
#[derive(Debug, Clone)]
pub struct BoundReport<T> {
    pub samples: Vec<BoundSample<T>>,
    /// Smallest constant making the upper envelope hold on all samples.
    pub fitted_upper_c: T,
    /// Largest constant making the lower envelope hold (sum-form regime).
    pub fitted_lower_c: Option<T>,
    pub violations: usize,
}

impl<T: Real> GreenKernelSeries<T> {
    pub fn build(params: HardyParams<T>, radius: T, max_mode: usize) -> Result<Self> {
        if params.regime() == Regime::SubHardy {
            return Err(HardyError::UnsupportedRegime);
        }
        let n = params.dim();
        let mut modes = Vec::with_capacity(max_mode + 3);
        for l in 0..=(max_mode + 2) {
            let mu_l = params.mu() + lit::<T>((l as f64) * (l as f64 + n as f64 - 2.0));
            let p_l = HardyParams::new(n, mu_l)?;
            let critical = p_l.regime() == Regime::Critical;
            let sigma_minus = p_l.singular_exponent()?;
            let sigma_plus = p_l.regular_exponent()?;
            let constant = if critical {
                T::one()
            } else {
                sigma_plus - sigma_minus
            };
            modes.push(ModeData {
                sigma_minus,
                sigma_plus,
                constant,
                critical,
            });
        }
        Ok(Self {
            params,
            radius,
            max_mode,
            tail_tol: lit(1e-7),
            modes,
        })
    }

    pub fn with_tail_tol(mut self, tol: T) -> Self {
        self.tail_tol = tol;
        self
    }

    pub fn params(&self) -> &HardyParams<T> {
        &self.params
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn max_mode(&self) -> usize {
        self.max_mode
    }

    fn mode(&self, l: usize) -> &ModeData<T> {
        &self.modes[l]
    }

    fn mode_data(&self, l: usize) -> Result<ModeData<T>> {
        if l < self.modes.len() {
            return Ok(self.modes[l]);
        }
        let n = self.params.dim();
        let mu_l = self.params.mu() + lit::<T>((l as f64) * (l as f64 + n as f64 - 2.0));
        let p_l = HardyParams::new(n, mu_l)?;
        let sigma_minus = p_l.singular_exponent()?;
        let sigma_plus = p_l.regular_exponent()?;
        Ok(ModeData {
            sigma_minus,
            sigma_plus,
            constant: sigma_plus - sigma_minus,
            critical: false,
        })
    }

    /// dμ-normalized radial kernel of mode l:
    /// φ_l(min)·ψ_l(max) / (C_l · Γ(s)), symmetric against the weight Γ.
    pub fn mode_green(&self, l: usize, r: T, s: T) -> Result<T> {
        if r <= T::zero() || s <= T::zero() || r > self.radius || s > self.radius {
            return Err(HardyError::DomainError(
                r.min(s).to_f64().unwrap_or(f64::NAN),
            ));
        }
        let m = &self.mode_data(l)?;
        let (lo, hi) = if r <= s { (r, s) } else { (s, r) };
        let regular = lo.powf(m.sigma_plus);
        let dirichlet = if m.critical {
            hi.powf(m.sigma_minus) * (self.radius / hi).ln()
        } else {
            hi.powf(m.sigma_minus)
                - self.radius.powf(m.sigma_minus - m.sigma_plus) * hi.powf(m.sigma_plus)
        };
        let gamma_s = s.powf(self.params.regular_exponent()?);
        Ok(regular * dirichlet / (m.constant * gamma_s))
    }

    /// Geometric majorant of the series tail beyond mode L, using |P_l| ≤ 1
    /// and ψ_l(t) ≤ t^{σ⁻_l}.
    fn tail_bound(&self, last: usize, q: T, hi: T, gamma_s: T) -> T {
        let n = self.params.dim();
        let l1 = self.mode(last + 1);
        let l2 = self.mode(last + 2);
        // Exponent increments grow toward 1 for μ ≥ 0 and stay ≥ 1 for μ < 0.
        let d = if self.params.mu() >= T::zero() {
            (l2.sigma_plus - l1.sigma_plus).max(lit(0.5))
        } else {
            T::one()
        };
        let big_q = q.powf(d);
        if big_q >= T::one() {
            return T::infinity();
        }
        let lead =
            q.powf(l1.sigma_plus) * hi.powf(lit::<T>(2.0 - n as f64)) / (l1.constant * gamma_s);
        let geom = T::one() / (T::one() - big_q);
        match n {
            2 => lead * geom / crate::real::pi::<T>(),
            _ => {
                let l_t = lit::<T>((2 * (last + 1) + 1) as f64);
                lead * (l_t * geom + lit::<T>(2.0) * big_q * geom * geom)
                    / (lit::<T>(4.0) * crate::real::pi::<T>())
            }
        }
    }

    /// Kernel value at polar data (radii of the two points and the cosine of
    /// the angle between them). N ∈ {2, 3}.
    pub fn eval_polar(&self, r: T, s: T, cos_gamma: T) -> Result<T> {
        let n = self.params.dim();
        if n != 2 && n != 3 {
            return Err(HardyError::InvalidDimension(n));
        }
        let dist2 = r * r + s * s - lit::<T>(2.0) * r * s * cos_gamma;
        if dist2 <= T::epsilon() * (r * r + s * s) {
            return Err(HardyError::SingularDiagonal);
        }
        let (lo, hi) = if r <= s { (r, s) } else { (s, r) };
        let q = lo / hi;
        let gamma_s = s.powf(self.params.regular_exponent()?);

        let four_pi = lit::<T>(4.0) * crate::real::pi::<T>();
        let two_pi = lit::<T>(2.0) * crate::real::pi::<T>();

        let mut sum = T::zero();
        // Zonal recurrences: Legendre for N=3, Chebyshev for N=2.
        let mut z_prev = T::one(); // P_0 = T_0 = 1
        let mut z_curr = cos_gamma; // P_1 = T_1 = cos γ
        for l in 0..=self.max_mode {
            let zonal = if l == 0 {
                T::one()
            } else if l == 1 {
                z_curr
            } else {
                let lt = lit::<T>((l - 1) as f64);
                let next = if n == 3 {
                    ((lit::<T>(2.0) * lt + T::one()) * cos_gamma * z_curr - lt * z_prev)
                        / (lt + T::one())
                } else {
                    lit::<T>(2.0) * cos_gamma * z_curr - z_prev
                };
                z_prev = z_curr;
                z_curr = next;
                next
            };
            let weight = if n == 3 {
                lit::<T>((2 * l + 1) as f64) / four_pi
            } else if l == 0 {
                two_pi.recip()
            } else {
                crate::real::pi::<T>().recip()
            };
            sum = sum + weight * zonal * self.mode_green(l, r, s)?;
        }

        let tail = self.tail_bound(self.max_mode, q, hi, gamma_s);
        let scale = hi.powf(lit::<T>(2.0 - n as f64)) / (four_pi * gamma_s);
        if tail > self.tail_tol * sum.abs().max(scale * lit(1e-3)) {
            return Err(HardyError::TruncationError {
                tail_bound: tail.to_f64().unwrap_or(f64::NAN),
                tol: (self.tail_tol * sum.abs()).to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(sum)
    }

    /// Kernel at two cartesian points inside the ball.
    pub fn eval_at(&self, x: &[T], y: &[T]) -> Result<T> {
        let n = self.params.dim() as usize;
        if x.len() != n || y.len() != n {
            return Err(HardyError::NumericFailure(
                "point dimension mismatch".into(),
            ));
        }
        let norm = |v: &[T]| v.iter().map(|&c| c * c).sum::<T>().sqrt();
        let r = norm(x);
        let s = norm(y);
        if r <= T::zero() || s <= T::zero() {
            return Err(HardyError::DomainError(0.0));
        }
        let dot: T = x.iter().zip(y).map(|(&a, &b)| a * b).sum();
        self.eval_polar(r, s, dot / (r * s))
    }

    /// Green operator on a radial source: only the l = 0 mode survives the
    /// angular integral, so this is the 1-D weighted kernel integral. The
    /// source must be weighted-integrable; failure is the no-solution signal.
    pub fn apply_radial(&self, f: &RadialFunction<T>, r: T, spec: &QuadratureSpec<T>) -> Result<T> {
        match weighted_l1_norm(&self.params, f, self.radius, spec)? {
            Integrability::Finite(_) => {}
            Integrability::Divergent(ev) => return Err(HardyError::NoSolution(ev)),
        }
        let n1 = lit::<T>(self.params.dim() as f64 - 1.0);
        let m0 = *self.mode(0);
        let big_r = self.radius;
        let regular = |t: T| t.powf(m0.sigma_plus);
        let dirichlet = move |t: T| {
            if m0.critical {
                t.powf(m0.sigma_minus) * (big_r / t).ln()
            } else {
                t.powf(m0.sigma_minus)
                    - big_r.powf(m0.sigma_minus - m0.sigma_plus) * t.powf(m0.sigma_plus)
            }
        };
        // Γ(s) cancels between the dμ measure and the dμ-kernel norm, leaving
        // the plain l = 0 variation-of-parameters integrals.
        let f1 = f.clone();
        let inner = move |s: T| regular(s) * f1.value(s) * s.powf(n1);
        let f2 = f.clone();
        let outer = move |s: T| dirichlet(s) * f2.value(s) * s.powf(n1);
        let i1 =
            crate::quad::integrate_radial(&inner, T::zero(), r, spec).map_err(|e| match e {
                HardyError::Divergence(ev) => HardyError::NoSolution(ev),
                other => other,
            })?;
        let i2 = crate::quad::integrate_radial(&outer, r, big_r, spec)?;
        Ok((dirichlet(r) * i1.value + regular(r) * i2.value) / m0.constant)
    }

    /// Samples admissible pairs and checks the two-sided envelopes.
    ///
    /// Pairs are drawn from a compact annulus, kept off the diagonal by a
    /// floor distance, and kept series-convergent by a radial-ratio cap.
    pub fn check_kernel_bounds(&self, sample_count: usize, seed: u64) -> Result<BoundReport<T>> {
        let n = self.params.dim();
        let mu = self.params.mu();
        let tau_plus = self.params.regular_exponent()?;
        let sum_form = mu < T::zero();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut samples = Vec::with_capacity(sample_count);
        let mut violations = 0usize;
        let mut upper_c = T::zero();
        let mut lower_c: Option<T> = None;

        let floor_dist = lit::<T>(0.01);
        let mut drawn = 0usize;
        let mut attempts = 0usize;
        while drawn < sample_count && attempts < sample_count * 200 {
            attempts += 1;
            let r = lit::<T>(rng.gen_range(0.1..0.85)) * self.radius;
            let s = lit::<T>(rng.gen_range(0.1..0.85)) * self.radius;
            let c = lit::<T>(rng.gen_range(-1.0..1.0));
            let q = r.min(s) / r.max(s);
            if q > lit(0.85) {
                continue;
            }
            let dist = (r * r + s * s - lit::<T>(2.0) * r * s * c).sqrt();
            if dist < floor_dist {
                continue;
            }
            if n == 2 && dist > lit(0.9) {
                continue; // keep -ln|x-y| positive
            }
            let kernel = match self.eval_polar(r, s, c) {
                Ok(v) => v * s.powf(tau_plus), // symmetric Lebesgue kernel
                Err(HardyError::TruncationError { .. }) => continue,
                Err(e) => return Err(e),
            };
            drawn += 1;

            let base = if n == 2 {
                -(dist.ln())
            } else {
                dist.powf(lit::<T>(2.0 - n as f64))
            };
            let t2 = r.powf(tau_plus) / dist.powf(lit::<T>(n as f64 - 2.0) + tau_plus);
            let t3 = s.powf(tau_plus) / dist.powf(lit::<T>(n as f64 - 2.0) + tau_plus);
            let t4 = (r * s).powf(tau_plus)
                / dist.powf(lit::<T>(n as f64 - 2.0) + lit::<T>(2.0) * tau_plus);
            let upper = if sum_form {
                base + t2 + t3 + t4
            } else {
                base.min(t2).min(t3).min(t4)
            };
            let lower = sum_form.then_some(base + t2 + t3 + t4);

            let mut bad = false;
            if !kernel.is_finite() || kernel <= T::zero() {
                bad = true;
            }
            if !upper.is_finite() || upper <= T::zero() {
                bad = true;
            }
            if !bad {
                let ratio = kernel / upper;
                if ratio > upper_c {
                    upper_c = ratio;
                }
                if let Some(env) = lower {
                    let lr = kernel / env;
                    lower_c = Some(match lower_c {
                        Some(cur) if cur < lr => cur,
                        Some(_) | None => lr,
                    });
                }
            } else {
                violations += 1;
            }
            samples.push(BoundSample {
                r,
                s,
                cos_gamma: c,
                dist,
                kernel_value: kernel,
                upper_envelope: upper,
                lower_envelope: lower,
            });
        }
        if drawn < sample_count {
            return Err(HardyError::NumericFailure(format!(
                "bound sampler exhausted after {attempts} attempts"
            )));
        }
        Ok(BoundReport {
            samples,
            fitted_upper_c: upper_c,
            fitted_lower_c: lower_c,
            violations,
        })
    }
}
