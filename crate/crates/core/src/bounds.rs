// SPDX-License-Identifier: MIT OR Apache-2.0

//! Closed-form accuracy guarantees and the online threshold window.
//!
//! Every function returns the raw formula value; nothing is clamped to the
//! data length. `ε = ∞` drops the noise term of each private bound. All
//! logarithms are natural.
//!
//! The online accuracy is `max{16A²/C² · ln(32n/β), 4A/(Cε) · ln(8n/β)}`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// Non-private MLE, bounded log ratio.
    MleBounded,
    /// Private detector, bounded log ratio.
    PrivateBounded,
    /// Non-private MLE, tail-bounded log ratio.
    MleRelaxed,
    /// Private detector, tail-bounded log ratio.
    PrivateRelaxed,
    /// Online detector.
    Online,
}

/// Inputs to a bound. `divergence` is `C` for the bounded and online
/// variants and `C_M` for the relaxed ones; `window` only matters online.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    pub a: f64,
    pub divergence: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub window: usize,
}

/// An `α` together with what produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyBound {
    pub alpha: f64,
    pub inputs: BoundInputs,
    pub kind: BoundKind,
}

impl AccuracyBound {
    pub fn compute(kind: BoundKind, inputs: BoundInputs) -> Result<Self> {
        let BoundInputs { a, divergence, beta, epsilon, window } = inputs;
        let alpha = match kind {
            BoundKind::MleBounded => alpha_mle_bounded(a, divergence, beta)?,
            BoundKind::PrivateBounded => alpha_private_bounded(a, divergence, beta, epsilon)?,
            BoundKind::MleRelaxed => alpha_mle_relaxed(divergence, beta)?,
            BoundKind::PrivateRelaxed => alpha_private_relaxed(a, divergence, beta, epsilon)?,
            BoundKind::Online => online_alpha(a, divergence, window, beta, epsilon)?,
        };
        Ok(Self { alpha, inputs, kind })
    }
}

/// Feasible thresholds `[t_low, t_high]` for the online detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdRange {
    pub t_low: f64,
    pub t_high: f64,
    pub feasible: bool,
}

impl ThresholdRange {
    pub fn new(t_low: f64, t_high: f64) -> Self {
        Self { t_low, t_high, feasible: t_low <= t_high }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.t_low <= t && t <= self.t_high
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("{name} must be positive and finite, got {v}")))
    }
}

fn probability(v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("beta must lie in (0, 1), got {v}")))
    }
}

fn epsilon_ok(v: f64) -> Result<()> {
    if v > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("epsilon must be positive, got {v}")))
    }
}

/// `(c / ε) · log_term`, or zero at `ε = ∞`.
fn noise_term(c: f64, epsilon: f64, log_term: f64) -> f64 {
    if epsilon.is_infinite() {
        0.0
    } else {
        c / epsilon * log_term
    }
}

/// `2A²/C² · ln(32/(3β))`.
pub fn alpha_mle_bounded(a: f64, c: f64, beta: f64) -> Result<f64> {
    positive("A", a)?;
    positive("C", c)?;
    probability(beta)?;
    Ok(2.0 * (a / c).powi(2) * (32.0 / (3.0 * beta)).ln())
}

/// `max{8A²/C² · ln(64/(3β)), 4A/(Cε) · ln(16/β)}`.
pub fn alpha_private_bounded(a: f64, c: f64, beta: f64, epsilon: f64) -> Result<f64> {
    positive("A", a)?;
    positive("C", c)?;
    probability(beta)?;
    epsilon_ok(epsilon)?;
    let sampling = 8.0 * (a / c).powi(2) * (64.0 / (3.0 * beta)).ln();
    Ok(sampling.max(noise_term(4.0 * a / c, epsilon, (16.0 / beta).ln())))
}

fn c_m_ok(c_m: f64) -> Result<()> {
    if c_m > 0.0 && c_m <= std::f64::consts::LN_2 {
        Ok(())
    } else {
        Err(Error::param(format!("C_M must lie in (0, ln 2], got {c_m}")))
    }
}

/// `67/C_M² · ln(64/(3β))`.
pub fn alpha_mle_relaxed(c_m: f64, beta: f64) -> Result<f64> {
    c_m_ok(c_m)?;
    probability(beta)?;
    Ok(67.0 / (c_m * c_m) * (64.0 / (3.0 * beta)).ln())
}

/// `max{262/C_M² · ln(128/(3β)), 2A ln(16/β)/(C_M ε)}`.
pub fn alpha_private_relaxed(a: f64, c_m: f64, beta: f64, epsilon: f64) -> Result<f64> {
    positive("A", a)?;
    c_m_ok(c_m)?;
    probability(beta)?;
    epsilon_ok(epsilon)?;
    let sampling = 262.0 / (c_m * c_m) * (128.0 / (3.0 * beta)).ln();
    Ok(sampling.max(noise_term(2.0 * a / c_m, epsilon, (16.0 / beta).ln())))
}

/// Threshold range for the online detector with change time `k_star`:
///
/// `T_L = 2A·sqrt(2 ln(64k*/β)) − C + (16A/ε) ln(8k*/β)`
/// `T_U = nC/2 − (A/2)·sqrt(n ln(8/β)) − (16A/ε) ln(8k*/β)`
pub fn online_threshold_range(
    a: f64,
    c: f64,
    n: usize,
    k_star: usize,
    beta: f64,
    epsilon: f64,
) -> Result<ThresholdRange> {
    positive("A", a)?;
    positive("C", c)?;
    probability(beta)?;
    epsilon_ok(epsilon)?;
    if n < 2 {
        return Err(Error::param(format!("window must be at least 2, got {n}")));
    }
    if 2 * k_star < n {
        return Err(Error::Precondition(format!("k_star={k_star} must be at least n/2={}", n as f64 / 2.0)));
    }
    let (n, k) = (n as f64, k_star as f64);
    let noise = noise_term(16.0 * a, epsilon, (8.0 * k / beta).ln());
    let t_low = 2.0 * a * (2.0 * (64.0 * k / beta).ln()).sqrt() - c + noise;
    let t_high = n * c / 2.0 - a / 2.0 * (n * (8.0 / beta).ln()).sqrt() - noise;
    Ok(ThresholdRange::new(t_low, t_high))
}

/// `max{16A²/C² · ln(32n/β), 4A/(Cε) · ln(8n/β)}`.
pub fn online_alpha(a: f64, c: f64, n: usize, beta: f64, epsilon: f64) -> Result<f64> {
    positive("A", a)?;
    positive("C", c)?;
    probability(beta)?;
    epsilon_ok(epsilon)?;
    if n < 2 {
        return Err(Error::param(format!("window must be at least 2, got {n}")));
    }
    let n = n as f64;
    let sampling = 16.0 * (a / c).powi(2) * (32.0 * n / beta).ln();
    Ok(sampling.max(noise_term(4.0 * a / c, epsilon, (8.0 * n / beta).ln())))
}
