// SPDX-License-Identifier: MIT OR Apache-2.0

//! Offline change-point estimation over a fixed dataset.
//!
//! The partial log-likelihood ratio `ℓ(k) = Σ_{i≥k} log(P1(x_i)/P0(x_i))`
//! scores the hypothesis that the change happened at `k`. The MLE takes the
//! exact argmax. The private detector perturbs every `ℓ(k)` with
//! `Lap(A/ε)` and reports the noisy argmax, where `A` is `Δℓ` under pure
//! privacy and `A_δ` when `δ > 0`.
//!
//! Indices at this API boundary are 1-based.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact_sum::ExactSum;
use crate::hypothesis::HypothesisPair;
use crate::mechanisms::{report_noisy_max, PrivacyParams};

/// `ℓ(1), …, ℓ(n)` for one dataset. Each entry is the correctly rounded
/// exact suffix sum of the per-point log ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct LlrProfile {
    values: Vec<f64>,
}

impl LlrProfile {
    /// `ℓ(k)` for `1 ≤ k ≤ n`.
    pub fn at(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    /// 1-based argmax, smallest index on ties.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate().skip(1) {
            if v > self.values[best] {
                best = i;
            }
        }
        best + 1
    }
}

/// How the noise scale was calibrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseMode {
    /// `δ = 0`, `A = Δℓ`.
    BoundedSensitivity,
    /// `δ > 0`, `A = A_δ`.
    TailBound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionResult {
    /// Estimated change point, in `[1, n]`.
    pub k_tilde: usize,
    /// Laplace scale `A/ε` added to each `ℓ(k)`; zero when `ε = ∞`.
    pub noise_scale: f64,
    pub mode: NoiseMode,
}

pub fn llr_profile(pair: &HypothesisPair, data: &[f64]) -> Result<LlrProfile> {
    if data.is_empty() {
        return Err(Error::InvalidInput("data must contain at least one observation".into()));
    }
    let mut values = vec![0.0; data.len()];
    let mut acc = ExactSum::new();
    for (i, &x) in data.iter().enumerate().rev() {
        acc.add(pair.log_ratio_at(i, x)?);
        values[i] = acc.value();
    }
    Ok(LlrProfile { values })
}

/// Non-private maximum-likelihood change point.
pub fn mle(pair: &HypothesisPair, data: &[f64]) -> Result<usize> {
    Ok(llr_profile(pair, data)?.argmax())
}

/// Private offline detector: Report Noisy Max over `ℓ(1..n)`.
///
/// With `δ = 0` the pair must have finite `Δℓ`; an infinite sensitivity is
/// an error rather than an infinitely noisy (uniform) answer. With `ε = ∞`
/// no noise is drawn and the result equals [`mle`].
pub fn detect_offline<R: Rng + ?Sized>(
    pair: &HypothesisPair,
    data: &[f64],
    privacy: PrivacyParams,
    rng: &mut R,
) -> Result<DetectionResult> {
    let mode = if privacy.delta() == 0.0 {
        NoiseMode::BoundedSensitivity
    } else {
        NoiseMode::TailBound
    };
    let profile = llr_profile(pair, data)?;
    if !privacy.is_private() {
        return Ok(DetectionResult { k_tilde: profile.argmax(), noise_scale: 0.0, mode });
    }
    let a = pair.sensitivity(privacy.delta())?;
    let idx = report_noisy_max(profile.as_slice(), a, privacy, rng)?;
    Ok(DetectionResult { k_tilde: idx + 1, noise_scale: a / privacy.epsilon(), mode })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bern() -> HypothesisPair {
        HypothesisPair::bernoulli(0.2, 0.8).unwrap()
    }

    #[test]
    fn profile_hand_example() {
        let l4 = 4f64.ln();
        let p = llr_profile(&bern(), &[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]).unwrap();
        let expected = [0.0, l4, 2.0 * l4, 3.0 * l4, 2.0 * l4, l4];
        for (got, want) in p.as_slice().iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!((p.at(4) - 4.158_883).abs() < 1e-6);
    }

    #[test]
    fn profile_single_point() {
        let pair = HypothesisPair::gaussian(0.0, 2.0).unwrap();
        let p = llr_profile(&pair, &[3.0]).unwrap();
        assert_eq!(p.as_slice(), &[pair.log_ratio(3.0).unwrap()]);
    }

    #[test]
    fn profile_midpoint_is_zero() {
        let pair = HypothesisPair::gaussian(0.0, 1.0).unwrap();
        let p = llr_profile(&pair, &[0.5; 9]).unwrap();
        assert!(p.as_slice().iter().all(|&v| v == 0.0));
        assert_eq!(p.argmax(), 1);
    }

    #[test]
    fn profile_errors() {
        assert!(matches!(llr_profile(&bern(), &[]), Err(Error::InvalidInput(_))));
        assert_eq!(
            llr_profile(&bern(), &[0.0, 1.0, 2.0]).unwrap_err(),
            Error::InvalidObservation { index: 2, value: 2.0 }
        );
    }

    #[test]
    fn mle_examples() {
        assert_eq!(mle(&bern(), &[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]).unwrap(), 4);
        assert_eq!(mle(&bern(), &[1.0, 1.0, 1.0, 1.0]).unwrap(), 1);
    }

    #[test]
    fn detect_offline_non_private_is_mle() {
        let data = [0.0, 0.0, 0.0, 1.0, 1.0, 1.0];
        let r = detect_offline(&bern(), &data, PrivacyParams::non_private(), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(r.k_tilde, 4);
        assert_eq!(r.noise_scale, 0.0);
        assert_eq!(r.mode, NoiseMode::BoundedSensitivity);
    }

    #[test]
    fn gaussian_pure_dp_is_rejected() {
        let pair = HypothesisPair::gaussian(0.0, 1.0).unwrap();
        let err = detect_offline(&pair, &[0.1, 0.2], PrivacyParams::pure(1.0).unwrap(), &mut ChaCha8Rng::seed_from_u64(0))
            .unwrap_err();
        assert_eq!(err, Error::InfiniteSensitivity);
    }

    #[test]
    fn gaussian_tail_mode_noise_scale() {
        let pair = HypothesisPair::gaussian(0.0, 1.0).unwrap();
        let p = PrivacyParams::new(2.0, 0.05).unwrap();
        let r = detect_offline(&pair, &[0.1, 0.2, 1.4], p, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(r.mode, NoiseMode::TailBound);
        assert!((r.noise_scale - pair.a_delta(0.05).unwrap() / 2.0).abs() < 1e-12);
        assert!((1..=3).contains(&r.k_tilde));
    }

    #[test]
    fn deterministic_given_seed() {
        let data: Vec<f64> = (0..50).map(|i| if i % 3 == 0 { 1.0 } else { 0.0 }).collect();
        let p = PrivacyParams::pure(0.5).unwrap();
        let run = |s| detect_offline(&bern(), &data, p, &mut ChaCha8Rng::seed_from_u64(s)).unwrap().k_tilde;
        assert_eq!(run(42), run(42));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn suffix_difference_identity(xs in proptest::collection::vec(-4.0f64..4.0, 1..300), mu in 0.1f64..3.0) {
                let pair = HypothesisPair::gaussian(0.0, mu).unwrap();
                let p = llr_profile(&pair, &xs).unwrap();
                let n = xs.len();
                for k in 1..n {
                    let d = p.at(k) - p.at(k + 1) - pair.log_ratio(xs[k - 1]).unwrap();
                    prop_assert!(d.abs() < 1e-10);
                }
                prop_assert_eq!(p.at(n), pair.log_ratio(xs[n - 1]).unwrap());
            }

            #[test]
            fn private_output_in_range(bits in proptest::collection::vec(any::<bool>(), 1..100), seed in any::<u64>(), eps in 0.05f64..5.0) {
                let data: Vec<f64> = bits.iter().map(|&b| b as u8 as f64).collect();
                let r = detect_offline(&bern(), &data, PrivacyParams::pure(eps).unwrap(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
                prop_assert!(r.k_tilde >= 1 && r.k_tilde <= data.len());
            }
        }
    }
}
