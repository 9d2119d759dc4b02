//! Parameters and closed forms for the operator L_mu = -Δ + μ/|x|².
//!
//! Everything downstream (quadrature weights, solver bases, kernel modes,
//! identity checks) reads exponents and constants from [`HardyParams`], which
//! is the single source of truth.
//!
//! For μ ≥ μ₀ = -(N-2)²/4 the radial equation L_mu u = 0 has the two power
//! branches r^{τ₋} and r^{τ₊}, where τ_± are the roots of μ - τ(τ+N-2) = 0;
//! at the threshold μ = μ₀ the roots collide and the singular branch picks up
//! a logarithm. Below μ₀ the exponents turn complex and only the oscillation
//! probes apply.

use crate::error::{HardyError, Result};
use crate::profile::RadialFunction;
use crate::real::{lit, unit_sphere_area, Real};

/// Position of μ relative to the threshold μ₀ = -(N-2)²/4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// μ > μ₀: two distinct real exponents.
    Supercritical,
    /// μ = μ₀: double root, logarithmic singular branch.
    Critical,
    /// μ < μ₀: complex exponents; closed forms are unavailable.
    SubHardy,
}

/// Dimension, potential strength and every derived constant.
#[derive(Debug, Clone, Copy)]
pub struct HardyParams<T> {
    dim: u32,
    mu: T,
    mu_critical: T,
    sphere_area: T,
    regime: Regime,
    /// (τ₋, τ₊); `None` in the sub-Hardy regime.
    exponents: Option<(T, T)>,
    /// Dirac normalization constant c_μ; `None` in the sub-Hardy regime.
    mass_constant: Option<T>,
}

impl<T: Real> HardyParams<T> {
    /// Derives all constants from the dimension and potential strength.
    ///
    /// μ < μ₀ is representable (for the oscillation probes) but marks the
    /// exponents and c_μ unavailable.
    pub fn new(dim: u32, mu: T) -> Result<Self> {
        if dim < 2 {
            return Err(HardyError::InvalidDimension(dim));
        }
        let half_codim = lit::<T>((dim as f64 - 2.0) / 2.0); // (N-2)/2
        let mu_critical = -half_codim * half_codim;
        let sphere_area = unit_sphere_area::<T>(dim);
        let disc = mu - mu_critical;

        let (regime, exponents, mass_constant) = if disc > T::zero() {
            let root = disc.sqrt();
            let tau_minus = -half_codim - root;
            let tau_plus = -half_codim + root;
            let c = lit::<T>(2.0) * root * sphere_area;
            (Regime::Supercritical, Some((tau_minus, tau_plus)), Some(c))
        } else if disc == T::zero() {
            let tau = -half_codim;
            (Regime::Critical, Some((tau, tau)), Some(sphere_area))
        } else {
            (Regime::SubHardy, None, None)
        };

        Ok(Self {
            dim,
            mu,
            mu_critical,
            sphere_area,
            regime,
            exponents,
            mass_constant,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    /// Threshold μ₀ = -(N-2)²/4.
    pub fn mu_critical(&self) -> T {
        self.mu_critical
    }

    /// Area of the unit sphere |S^{N-1}|.
    pub fn sphere_area(&self) -> T {
        self.sphere_area
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    fn exponents(&self) -> Result<(T, T)> {
        self.exponents.ok_or(HardyError::UnsupportedRegime)
    }

    /// Exponent τ₋ of the singular branch.
    pub fn singular_exponent(&self) -> Result<T> {
        Ok(self.exponents()?.0)
    }

    /// Exponent τ₊ of the regular branch (the weight dμ = r^{τ₊} dx).
    pub fn regular_exponent(&self) -> Result<T> {
        Ok(self.exponents()?.1)
    }

    /// √(μ - μ₀), half the gap τ₊ - τ₋.
    pub fn exponent_gap_half(&self) -> Result<T> {
        let (lo, hi) = self.exponents()?;
        Ok((hi - lo) / lit::<T>(2.0))
    }

    /// Dirac normalization constant c_μ: 2√(μ-μ₀)|S^{N-1}| above the
    /// threshold, |S^{N-1}| at it. The jump at μ₀ is genuine.
    pub fn dirac_constant(&self) -> Result<T> {
        self.mass_constant.ok_or(HardyError::UnsupportedRegime)
    }

    /// Effective dimension Ñ = N + 2τ₊ in which the dual operator is the
    /// plain radial Laplacian.
    pub fn effective_dim(&self) -> Result<T> {
        Ok(lit::<T>(self.dim as f64) + lit::<T>(2.0) * self.regular_exponent()?)
    }

    fn check_radius(&self, r: T) -> Result<()> {
        if r <= T::zero() || !r.is_finite() {
            return Err(HardyError::DomainError(r.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(())
    }

    /// Singular fundamental solution Φ_μ(r): r^{τ₋}, or -r^{τ₋} ln r at μ₀.
    pub fn singular_branch(&self, r: T) -> Result<T> {
        self.check_radius(r)?;
        let (tau_minus, _) = self.exponents()?;
        match self.regime {
            Regime::Critical => Ok(-r.powf(tau_minus) * r.ln()),
            _ => Ok(r.powf(tau_minus)),
        }
    }

    /// Regular fundamental solution Γ_μ(r) = r^{τ₊}.
    pub fn regular_branch(&self, r: T) -> Result<T> {
        self.check_radius(r)?;
        Ok(r.powf(self.regular_exponent()?))
    }

    /// Dirichlet singular solution on the ball of radius `big_r`, normalized
    /// so that its ratio to Φ_μ tends to 1 at the origin:
    /// r^{τ₋} - R^{τ₋-τ₊} r^{τ₊}, or -r^{τ} ln(r/R) at μ₀. Vanishes at r = R.
    pub fn green_ball(&self, big_r: T, r: T) -> Result<T> {
        self.check_radius(r)?;
        let (tau_minus, tau_plus) = self.exponents()?;
        match self.regime {
            Regime::Critical => Ok(-r.powf(tau_minus) * (r / big_r).ln()),
            _ => Ok(r.powf(tau_minus) - big_r.powf(tau_minus - tau_plus) * r.powf(tau_plus)),
        }
    }

    /// Solution of the dual problem L*_mu ξ = 1 on the ball with zero boundary
    /// value: (R² - r²) / (2(N + 2τ₊)).
    pub fn dual_ball_solution(&self, big_r: T, r: T) -> Result<T> {
        if r < T::zero() || r > big_r {
            return Err(HardyError::DomainError(r.to_f64().unwrap_or(f64::NAN)));
        }
        let eff = self.effective_dim()?;
        Ok((big_r * big_r - r * r) / (lit::<T>(2.0) * eff))
    }

    /// Pointwise operator value (L_mu u)(r) = -u'' - (N-1)u'/r + μ u / r².
    ///
    /// Defined in every regime, including μ < μ₀.
    pub fn apply_operator(&self, u: &RadialFunction<T>, r: T) -> Result<T> {
        self.check_radius(r)?;
        let n1 = lit::<T>(self.dim as f64 - 1.0);
        Ok(-u.d2(r) - n1 * u.d1(r) / r + self.mu * u.value(r) / (r * r))
    }

    /// Pointwise dual operator (L*_mu ξ)(r) = -ξ'' - (Ñ-1)ξ'/r with
    /// Ñ = N + 2τ₊; at r = 0 the limit -Ñ ξ''(0) is returned.
    pub fn apply_dual(&self, xi: &RadialFunction<T>, r: T) -> Result<T> {
        if r < T::zero() || !r.is_finite() {
            return Err(HardyError::DomainError(r.to_f64().unwrap_or(f64::NAN)));
        }
        let eff = self.effective_dim()?;
        if r == T::zero() {
            return Ok(-eff * xi.d2(r));
        }
        Ok(-xi.d2(r) - (eff - T::one()) * xi.d1(r) / r)
    }

    /// Φ_μ as an evaluable profile with analytic derivatives.
    pub fn singular_profile(&self, support: T) -> Result<RadialFunction<T>> {
        let (tau, _) = self.exponents()?;
        Ok(match self.regime {
            Regime::Critical => RadialFunction::log_power(tau, support),
            _ => RadialFunction::power(tau, support),
        })
    }

    /// Γ_μ as an evaluable profile with analytic derivatives.
    pub fn regular_profile(&self, support: T) -> Result<RadialFunction<T>> {
        Ok(RadialFunction::power(self.regular_exponent()?, support))
    }

    /// The ball singular solution as a profile with analytic derivatives.
    pub fn green_ball_profile(&self, big_r: T) -> Result<RadialFunction<T>> {
        let (tau_minus, tau_plus) = self.exponents()?;
        Ok(match self.regime {
            Regime::Critical => {
                // -r^τ ln(r/R) = r^τ ln R - r^τ ln r
                let a = RadialFunction::power(tau_minus, big_r).scale(big_r.ln());
                let b = RadialFunction::log_power(tau_minus, big_r);
                a.add(&b)
            }
            _ => {
                let a = RadialFunction::power(tau_minus, big_r);
                let b =
                    RadialFunction::power(tau_plus, big_r).scale(-big_r.powf(tau_minus - tau_plus));
                a.add(&b)
            }
        })
    }

    /// The dual ball solution ξ₀ as a profile with analytic derivatives.
    pub fn dual_ball_profile(&self, big_r: T) -> Result<RadialFunction<T>> {
        let eff = self.effective_dim()?;
        let denom = lit::<T>(2.0) * eff;
        let r2 = big_r * big_r;
        Ok(RadialFunction::with_derivatives(
            move |r: T| (r2 - r * r) / denom,
            move |r: T| -lit::<T>(2.0) * r / denom,
            move |_: T| -lit::<T>(2.0) / denom,
            big_r,
        ))
    }
}
