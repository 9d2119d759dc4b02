//! Scalar abstraction for the whole crate.
//!
//! All numerics are generic over a floating scalar so the same code runs in
//! `f64` (the default) and `f32`. Concrete aliases live at the crate root.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating scalar used throughout the crate.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Sum<Self> + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FromPrimitive + ToPrimitive + Sum<Self> + Debug + Display + Send + Sync + 'static
{
}

/// Shorthand for embedding an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal not representable in scalar type")
}

/// Euler's constant π in the working scalar.
#[inline]
pub fn pi<T: Real>() -> T {
    lit(std::f64::consts::PI)
}

/// Gamma function at half-integer arguments, Γ(n/2) for n ≥ 1.
///
/// Exact recursion from Γ(1/2) = √π and Γ(1) = 1; this is all the sphere-area
/// formula needs.
pub fn gamma_half_integer<T: Real>(n: u32) -> T {
    assert!(n >= 1, "gamma_half_integer needs n >= 1");
    let mut value: T = if n.is_multiple_of(2) {
        T::one()
    } else {
        pi::<T>().sqrt()
    };
    // Γ(x+1) = x·Γ(x), climbing from 1/2 or 1 up to n/2.
    let mut k = if n.is_multiple_of(2) { 2 } else { 1 };
    while k + 2 <= n {
        value = value * lit::<T>(k as f64 / 2.0);
        k += 2;
    }
    value
}

/// Area |S^{N-1}| of the unit sphere in R^N: 2 π^{N/2} / Γ(N/2).
pub fn unit_sphere_area<T: Real>(dim: u32) -> T {
    let two = lit::<T>(2.0);
    let half_dim = lit::<T>(dim as f64 / 2.0);
    two * pi::<T>().powf(half_dim) / gamma_half_integer::<T>(dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_small_arguments() {
        assert!((gamma_half_integer::<f64>(1) - std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half_integer::<f64>(2) - 1.0).abs() < 1e-15);
        assert!((gamma_half_integer::<f64>(3) - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half_integer::<f64>(4) - 1.0).abs() < 1e-15);
        assert!((gamma_half_integer::<f64>(6) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn sphere_areas() {
        let pi = std::f64::consts::PI;
        assert!((unit_sphere_area::<f64>(2) - 2.0 * pi).abs() < 1e-14);
        assert!((unit_sphere_area::<f64>(3) - 4.0 * pi).abs() < 1e-13);
        assert!((unit_sphere_area::<f64>(4) - 2.0 * pi * pi).abs() < 1e-13);
        assert!((unit_sphere_area::<f64>(5) - 8.0 * pi * pi / 3.0).abs() < 1e-13);
    }

    #[test]
    fn f32_instantiation() {
        let a: f32 = unit_sphere_area(3);
        assert!((a - 4.0 * std::f32::consts::PI).abs() < 1e-4);
    }
}
