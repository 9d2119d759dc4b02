//! Numerical toolkit for the inverse-square Schrödinger operator
//! -Δ + μ/|x|² on balls and annuli.
//!
//! The crate provides the closed-form fundamental solutions and derived
//! constants, weighted quadrature against the measure dμ = r^{τ₊} dx, exact
//! radial boundary-value solves with prescribed singularity coefficient, the
//! angular-mode Green kernel with two-sided envelope checks, quantified
//! verification of the weighted distributional identities, and probes for
//! the nonexistence phenomena (sharp integrability threshold, sub-threshold
//! oscillation, principal-eigenvalue degeneration).
//!
//! All numerics are generic over the floating scalar via [`real::Real`];
//! `f64` aliases for the main types live at the crate root.

pub mod error;
pub mod extrapolate;
pub mod fit;
pub mod green;
pub mod params;
pub mod probes;
pub mod profile;
pub mod quad;
pub mod real;
pub mod solver;
pub mod testfn;
pub mod verify;

pub use error::{DivergenceEvidence, GrowthModel, HardyError, Result};
pub use params::{HardyParams, Regime};
pub use profile::RadialFunction;
pub use quad::{Estimate, Integrability, QuadratureSpec};
pub use solver::{ExhaustionSeries, RadialSolution};
pub use testfn::{bump_library, default_library, BumpKind, TestFunction};

/// Default-precision aliases.
pub type Params64 = HardyParams<f64>;
pub type Profile64 = RadialFunction<f64>;
pub type TestFunction64 = TestFunction<f64>;
pub type Solution64 = RadialSolution<f64>;
pub type Quadrature64 = QuadratureSpec<f64>;

/// Single-precision aliases (coarse work only).
pub type Params32 = HardyParams<f32>;
pub type Profile32 = RadialFunction<f32>;
