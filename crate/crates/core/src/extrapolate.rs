//! Limit extraction from geometrically sampled sequences.
//!
//! Iterated Aitken Δ² extrapolation: each sweep removes the dominant
//! geometric error mode, which is exactly the structure produced by profiles
//! sampled on a grid r_j = r₀ q^j. A sequence whose differences keep changing
//! sign without contracting is reported as oscillating instead of being
//! forced to a limit.

use crate::error::{HardyError, Result};
use crate::real::{lit, Real};

/// Extracted limit with an error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Limit<T> {
    pub value: T,
    pub error_estimate: T,
    /// Number of Aitken sweeps applied.
    pub sweeps: usize,
}

/// Detects a non-convergent oscillation: repeated sign changes in the
/// differences with no contraction of their magnitude between the first and
/// last third of the sequence.
fn oscillates<T: Real>(seq: &[T]) -> bool {
    if seq.len() < 9 {
        return false;
    }
    let diffs: Vec<T> = seq.windows(2).map(|w| w[1] - w[0]).collect();
    let mut sign_changes = 0;
    for w in diffs.windows(2) {
        if w[0] * w[1] < T::zero() {
            sign_changes += 1;
        }
    }
    let third = diffs.len() / 3;
    let mean_abs =
        |part: &[T]| part.iter().map(|d| d.abs()).sum::<T>() / lit::<T>(part.len() as f64);
    let head = mean_abs(&diffs[..third]);
    let tail = mean_abs(&diffs[diffs.len() - third..]);
    sign_changes >= 3 && tail > lit::<T>(0.3) * head
}

/// One Aitken Δ² sweep; rows that would divide by a vanishing second
/// difference keep their last value.
fn aitken_sweep<T: Real>(seq: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(seq.len().saturating_sub(2));
    for w in seq.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        let denom = c - lit::<T>(2.0) * b + a;
        if denom.abs() <= T::epsilon() * (a.abs() + b.abs() + c.abs()) {
            out.push(c);
        } else {
            let d = c - b;
            out.push(c - d * d / denom);
        }
    }
    out
}

/// Iterated Aitken limit of a sequence assumed to converge geometrically.
pub fn aitken_limit<T: Real>(seq: &[T]) -> Result<Limit<T>> {
    if seq.len() < 3 {
        return Err(HardyError::NumericFailure(
            "need at least 3 terms to extrapolate".into(),
        ));
    }
    if oscillates(seq) {
        let last_delta = (seq[seq.len() - 1] - seq[seq.len() - 2])
            .to_f64()
            .unwrap_or(f64::NAN);
        return Err(HardyError::NoLimit(last_delta.abs()));
    }

    let mut current = seq.to_vec();
    let mut sweeps = 0;
    let mut best = *current.last().unwrap();
    let mut best_err = if current.len() >= 2 {
        (current[current.len() - 1] - current[current.len() - 2]).abs()
    } else {
        T::infinity()
    };
    while current.len() >= 3 && sweeps < 12 {
        let next = aitken_sweep(&current);
        if next.is_empty() {
            break;
        }
        sweeps += 1;
        let tail_err = if next.len() >= 2 {
            (next[next.len() - 1] - next[next.len() - 2]).abs()
        } else {
            best_err
        };
        let candidate = *next.last().unwrap();
        if tail_err <= best_err && candidate.is_finite() {
            best = candidate;
            best_err = tail_err;
        } else if tail_err > best_err * lit::<T>(4.0) {
            // Noise amplification has taken over; stop sweeping.
            break;
        }
        current = next;
    }
    Ok(Limit {
        value: best,
        error_estimate: best_err,
        sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_sequence_is_nailed() {
        let seq: Vec<f64> = (0..20).map(|j| 2.5 + 3.0 * 0.7f64.powi(j)).collect();
        let lim = aitken_limit(&seq).unwrap();
        assert!((lim.value - 2.5).abs() < 1e-12, "{}", lim.value);
    }

    #[test]
    fn two_mode_sequence() {
        let seq: Vec<f64> = (0..20)
            .map(|j| 1.0 + 2.0 * 0.871f64.powi(j) - 0.4 * 0.125f64.powi(j))
            .collect();
        let lim = aitken_limit(&seq).unwrap();
        assert!((lim.value - 1.0).abs() < 1e-9, "{}", lim.value);
    }

    #[test]
    fn oscillation_is_detected() {
        let seq: Vec<f64> = (0..20)
            .map(|j| 1.0 + 0.1 * ((j as f64) * 0.693).sin())
            .collect();
        assert!(matches!(aitken_limit(&seq), Err(HardyError::NoLimit(_))));
    }

    #[test]
    fn slow_harmonic_sequence_still_improves() {
        let seq: Vec<f64> = (1..=20).map(|j| 4.0 + 1.0 / j as f64).collect();
        let lim = aitken_limit(&seq).unwrap();
        assert!((lim.value - 4.0).abs() < 5e-3, "{}", lim.value);
    }
}
