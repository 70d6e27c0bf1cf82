// SPDX-License-Identifier: MIT OR Apache-2.0

//! Differentially private change-point detection.
//!
//! A stream `x_1, x_2, …` is drawn from `P0` up to an unknown index `k*`
//! and from `P1` afterwards. This crate estimates `k*` while protecting
//! every individual observation with differential privacy.
//!
//! * [`offline`] estimates `k*` in a fixed dataset with Report Noisy Max
//!   over the partial log-likelihood ratios.
//! * [`online`] watches a stream with a sliding-window CUSUM and Above
//!   Noisy Threshold, then localizes the change inside the alarmed window.
//! * [`hypothesis`] holds the Bernoulli and unit-variance Gaussian models
//!   with their sensitivities and divergence constants.
//! * [`mechanisms`] has the Laplace primitives both detectors build on.
//! * [`bounds`] evaluates the closed-form accuracy guarantees.
//! * [`simulation`] runs reproducible Monte Carlo experiments and writes
//!   their accuracy curves as CSV.
//! * [`cli`] is the command-line frontend behind the `dpcpd` binary.
//!
//! ```
//! use dpcpd::{detect_offline, HypothesisPair, PrivacyParams};
//! use rand::SeedableRng;
//!
//! let pair = HypothesisPair::bernoulli(0.2, 0.8)?;
//! let data = [0.0, 0.0, 0.0, 1.0, 1.0, 1.0];
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
//! let r = detect_offline(&pair, &data, PrivacyParams::non_private(), &mut rng)?;
//! assert_eq!(r.k_tilde, 4);
//! # Ok::<(), dpcpd::Error>(())
//! ```

pub mod bounds;
pub mod cli;
mod error;
pub mod exact_sum;
pub mod hypothesis;
pub mod mechanisms;
pub mod normal;
pub mod offline;
pub mod online;
pub mod quadrature;
pub mod simulation;

pub use bounds::{AccuracyBound, BoundInputs, BoundKind, ThresholdRange};
pub use error::{Error, Result};
pub use hypothesis::{HypothesisPair, KlConstants, PairKind, Regime};
pub use mechanisms::{LaplaceScale, PrivacyParams};
pub use offline::{detect_offline, llr_profile, mle, DetectionResult, LlrProfile, NoiseMode};
pub use online::{detect_online, Alarm, CusumWindow, OnlineConfig, OnlineResult};
pub use simulation::{AccuracyCurve, OfflineScenario, OnlineCurves, OnlineScenario};
