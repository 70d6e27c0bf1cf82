// SPDX-License-Identifier: MIT OR Apache-2.0

//! Laplace noise, Report Noisy Max and Above Noisy Threshold.

use rand::Rng;

use crate::error::{Error, Result};

/// `(ε, δ)` privacy budget. `ε = ∞` disables all noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrivacyParams {
    epsilon: f64,
    delta: f64,
}

impl PrivacyParams {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        if epsilon.is_nan() || epsilon <= 0.0 {
            return Err(Error::param(format!("epsilon must be positive, got {epsilon}")));
        }
        if !(0.0..1.0).contains(&delta) {
            return Err(Error::param(format!("delta must lie in [0, 1), got {delta}")));
        }
        Ok(Self { epsilon, delta })
    }

    /// Pure `ε`-DP (`δ = 0`).
    pub fn pure(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, 0.0)
    }

    /// The non-private baseline, `ε = ∞`.
    pub fn non_private() -> Self {
        Self { epsilon: f64::INFINITY, delta: 0.0 }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn is_private(&self) -> bool {
        self.epsilon.is_finite()
    }

    /// Same `δ`, half the `ε`.
    pub fn half_epsilon(&self) -> Self {
        Self { epsilon: self.epsilon / 2.0, delta: self.delta }
    }

    /// Laplace scale `multiplier · sensitivity / ε`; zero when `ε = ∞`.
    pub fn scale_for(&self, sensitivity: f64, multiplier: f64) -> Result<LaplaceScale> {
        check_sensitivity(sensitivity)?;
        if self.is_private() {
            LaplaceScale::new(multiplier * sensitivity / self.epsilon)
        } else {
            Ok(LaplaceScale::ZERO)
        }
    }
}

/// Scale `b` of a centred Laplace distribution.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LaplaceScale(f64);

impl LaplaceScale {
    pub const ZERO: LaplaceScale = LaplaceScale(0.0);

    pub fn new(b: f64) -> Result<Self> {
        if b.is_nan() || b < 0.0 {
            return Err(Error::param(format!("Laplace scale must be non-negative, got {b}")));
        }
        if b.is_infinite() {
            return Err(Error::param("Laplace scale must be finite"));
        }
        Ok(Self(b))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// One draw from `Lap(0, b)` by inverse CDF. `b = 0` returns `0.0` without
/// touching `rng`.
pub fn sample_laplace<R: Rng + ?Sized>(scale: LaplaceScale, rng: &mut R) -> f64 {
    let b = scale.0;
    if b == 0.0 {
        return 0.0;
    }
    loop {
        // u in [-1/2, 1/2); the closed endpoint would map to an infinite draw.
        let u = rng.random::<f64>() - 0.5;
        if u == -0.5 {
            continue;
        }
        return -b * u.signum() * (1.0 - 2.0 * u.abs()).ln();
    }
}

fn check_sensitivity(sensitivity: f64) -> Result<()> {
    if sensitivity.is_finite() && sensitivity >= 0.0 {
        Ok(())
    } else if sensitivity == f64::INFINITY {
        Err(Error::InfiniteSensitivity)
    } else {
        Err(Error::param(format!("sensitivity must be non-negative, got {sensitivity}")))
    }
}

/// Index of the largest `values[i] + Lap(Δ/ε)`; ties go to the smallest index.
pub fn report_noisy_max<R: Rng + ?Sized>(
    values: &[f64],
    sensitivity: f64,
    privacy: PrivacyParams,
    rng: &mut R,
) -> Result<usize> {
    if values.is_empty() {
        return Err(Error::InvalidInput("report_noisy_max needs at least one value".into()));
    }
    if let Some(i) = values.iter().position(|v| v.is_nan()) {
        return Err(Error::InvalidInput(format!("value at index {i} is NaN")));
    }
    let scale = privacy.scale_for(sensitivity, 1.0)?;
    let mut best = 0;
    let mut best_value = f64::NEG_INFINITY;
    for (i, &v) in values.iter().enumerate() {
        let noisy = v + sample_laplace(scale, rng);
        if i == 0 || noisy > best_value {
            best = i;
            best_value = noisy;
        }
    }
    Ok(best)
}

/// Sparse-vector test: halts at the first query whose noisy value exceeds
/// the noisy threshold and returns its index.
///
/// The threshold is perturbed once with `Lap(2Δ/ε)`, each query with a fresh
/// `Lap(4Δ/ε)`. Queries are pulled lazily and none is read after the halt.
pub fn above_noisy_threshold<I, R>(
    queries: I,
    sensitivity: f64,
    threshold: f64,
    privacy: PrivacyParams,
    rng: &mut R,
) -> Result<Option<usize>>
where
    I: IntoIterator<Item = f64>,
    R: Rng + ?Sized,
{
    let threshold_scale = privacy.scale_for(sensitivity, 2.0)?;
    let query_scale = privacy.scale_for(sensitivity, 4.0)?;
    let noisy_threshold = threshold + sample_laplace(threshold_scale, rng);
    for (i, q) in queries.into_iter().enumerate() {
        if q + sample_laplace(query_scale, rng) > noisy_threshold {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Accuracy width `8Δ ln(2m/β)/ε` of [`above_noisy_threshold`] over `m` queries.
pub fn abovethresh_alpha(m: usize, sensitivity: f64, beta: f64, epsilon: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::param("m must be at least 1"));
    }
    check_sensitivity(sensitivity)?;
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::param(format!("beta must lie in (0, 1), got {beta}")));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::param(format!("epsilon must be positive, got {epsilon}")));
    }
    Ok(8.0 * sensitivity * (2.0 * m as f64 / beta).ln() / epsilon)
}
