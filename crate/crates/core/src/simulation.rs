// SPDX-License-Identifier: MIT OR Apache-2.0

//! Monte Carlo harness for the offline and online detectors.
//!
//! Each trial draws its randomness from a seed derived from
//! `(master_seed, epsilon index, trial index)`, so trials can run in any
//! order (or in parallel) and still merge into identical curves.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tracing::warn;

use crate::bounds::ThresholdRange;
use crate::error::{Error, Result};
use crate::hypothesis::{HypothesisPair, Regime};
use crate::mechanisms::{sample_laplace, PrivacyParams};
use crate::offline::detect_offline;
use crate::online::{cusum_step, detect_online, OnlineConfig};

/// Default `δ` for tail-bounded (Gaussian) experiments.
pub const DEFAULT_TAIL_DELTA: f64 = 0.05;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial` under epsilon index `epsilon_index`.
pub fn derive_seed(master: u64, epsilon_index: usize, trial: usize) -> u64 {
    let a = splitmix64(master);
    let b = splitmix64(a ^ (epsilon_index as u64).wrapping_mul(0xD1B5_4A32_D192_ED03));
    splitmix64(b ^ (trial as u64).wrapping_mul(0x8CB9_2BA7_2F3D_8DD7))
}

fn trial_rngs(seed: u64) -> (ChaCha8Rng, ChaCha8Rng) {
    (ChaCha8Rng::seed_from_u64(seed), ChaCha8Rng::seed_from_u64(splitmix64(seed ^ 0xA5A5_A5A5_A5A5_A5A5)))
}

/// `x_i ~ P0` for `i < k_star`, `x_i ~ P1` for `i ≥ k_star` (1-based).
/// `k_star = length + 1` yields a stream with no change.
pub fn generate_stream<R: Rng + ?Sized>(
    pair: &HypothesisPair,
    k_star: usize,
    length: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if k_star < 1 || k_star > length + 1 {
        return Err(Error::param(format!("k_star must lie in [1, {}], got {k_star}", length + 1)));
    }
    Ok((1..=length)
        .map(|i| pair.sample(if i < k_star { Regime::Pre } else { Regime::Post }, rng))
        .collect())
}

/// Model family of the preset scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Bernoulli,
    Gaussian,
}

/// Preset change scenarios: large, small, and a large true change tested
/// against a small hypothesized one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioId {
    A,
    B,
    C,
}

impl ScenarioId {
    pub fn letter(self) -> char {
        match self {
            ScenarioId::A => 'A',
            ScenarioId::B => 'B',
            ScenarioId::C => 'C',
        }
    }
}

/// `(true pair, hypothesized pair)` of a preset.
pub fn preset_pairs(family: Family, id: ScenarioId) -> (HypothesisPair, HypothesisPair) {
    let make = |lo: f64, hi: f64| match family {
        Family::Bernoulli => HypothesisPair::bernoulli(lo, hi),
        Family::Gaussian => HypothesisPair::gaussian(lo, hi),
    }
    .expect("preset parameters are valid");
    let (large, small) = match family {
        Family::Bernoulli => (make(0.2, 0.8), make(0.2, 0.4)),
        Family::Gaussian => (make(0.0, 1.0), make(0.0, 0.5)),
    };
    match id {
        ScenarioId::A => (large, large),
        ScenarioId::B => (small, small),
        ScenarioId::C => (large, small),
    }
}

fn preset_label(family: Family, id: ScenarioId) -> String {
    let f = match family {
        Family::Bernoulli => "bernoulli",
        Family::Gaussian => "gaussian",
    };
    format!("{f}-{}", id.letter())
}

fn preset_tail_delta(family: Family) -> f64 {
    match family {
        Family::Bernoulli => 0.0,
        Family::Gaussian => DEFAULT_TAIL_DELTA,
    }
}

/// `β(α)` on an integer grid for one `(scenario, ε)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyCurve {
    pub label: String,
    pub epsilon: f64,
    pub alphas: Vec<usize>,
    pub betas: Vec<f64>,
    /// Size of the sample behind each `β`.
    pub trials: usize,
}

impl AccuracyCurve {
    /// `β(α)`, for `α` on the grid.
    pub fn beta_at(&self, alpha: usize) -> Option<f64> {
        self.alphas.iter().position(|&a| a == alpha).map(|i| self.betas[i])
    }

    /// Builds `β(α) = #{err > α} / total` for `α = 0..=max_alpha`.
    fn from_errors(label: &str, epsilon: f64, errors: &[usize], total: usize, max_alpha: usize) -> Self {
        let mut hist = vec![0usize; max_alpha + 2];
        for &e in errors {
            hist[e.min(max_alpha + 1)] += 1;
        }
        let mut above = errors.len();
        let mut betas = Vec::with_capacity(max_alpha + 1);
        for count in hist.iter().take(max_alpha + 1) {
            above -= count;
            betas.push(above as f64 / total as f64);
        }
        Self { label: label.to_string(), epsilon, alphas: (0..=max_alpha).collect(), betas, trials: total }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OfflineScenario {
    pub label: String,
    pub true_pair: HypothesisPair,
    pub hypothesized_pair: HypothesisPair,
    pub n: usize,
    pub k_star: usize,
    pub epsilons: Vec<f64>,
    pub trials: usize,
    pub tail_delta: f64,
    pub master_seed: u64,
}

impl OfflineScenario {
    /// `n = 200`, `k* = 100`, `ε ∈ {0.1, 0.5, 1, ∞}`, 1000 trials.
    pub fn preset(family: Family, id: ScenarioId) -> Self {
        let (true_pair, hypothesized_pair) = preset_pairs(family, id);
        Self {
            label: preset_label(family, id),
            true_pair,
            hypothesized_pair,
            n: 200,
            k_star: 100,
            epsilons: vec![0.1, 0.5, 1.0, f64::INFINITY],
            trials: 1000,
            tail_delta: preset_tail_delta(family),
            master_seed: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k_star <= 1 || self.k_star > self.n {
            return Err(Error::param(format!("k_star must lie in (1, n={}], got {}", self.n, self.k_star)));
        }
        if self.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        if self.epsilons.is_empty() {
            return Err(Error::param("at least one epsilon is required"));
        }
        for &eps in &self.epsilons {
            PrivacyParams::new(eps, self.tail_delta)?;
        }
        if self.tail_delta == 0.0
            && !self.hypothesized_pair.delta_ell().is_finite()
            && self.epsilons.iter().any(|e| e.is_finite())
        {
            return Err(Error::InfiniteSensitivity);
        }
        Ok(())
    }
}

/// One curve per `ε`, in the scenario's `ε` order.
pub fn run_offline(scenario: &OfflineScenario) -> Result<Vec<AccuracyCurve>> {
    scenario.validate()?;
    let s = scenario;
    s.epsilons
        .iter()
        .enumerate()
        .map(|(ei, &eps)| {
            let privacy = PrivacyParams::new(eps, s.tail_delta)?;
            let errors = (0..s.trials)
                .into_par_iter()
                .map(|t| {
                    let (mut data_rng, mut noise_rng) = trial_rngs(derive_seed(s.master_seed, ei, t));
                    let mut run = || -> Result<usize> {
                        let data = generate_stream(&s.true_pair, s.k_star, s.n, &mut data_rng)?;
                        let r = detect_offline(&s.hypothesized_pair, &data, privacy, &mut noise_rng)?;
                        Ok(r.k_tilde.abs_diff(s.k_star))
                    };
                    run().map_err(|e| Error::Trial { epsilon_index: ei, trial: t, source: Box::new(e) })
                })
                .collect::<Result<Vec<usize>>>()?;
            Ok(AccuracyCurve::from_errors(&s.label, eps, &errors, s.trials, s.n))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OnlineScenario {
    pub label: String,
    pub true_pair: HypothesisPair,
    pub hypothesized_pair: HypothesisPair,
    pub window_n: usize,
    pub k_star: usize,
    pub threshold: f64,
    pub epsilons: Vec<f64>,
    pub trials: usize,
    pub tail_delta: f64,
    pub master_seed: u64,
    pub max_stream_len: usize,
}

impl OnlineScenario {
    /// `n = 700`, `k* = 5000`, `ε ∈ {0.5, 1, ∞}`, 1000 trials. The Bernoulli
    /// threshold is 220; the Gaussian default of 100 is the non-private
    /// choice and should be recalibrated per `ε`.
    pub fn preset(family: Family, id: ScenarioId) -> Self {
        let (true_pair, hypothesized_pair) = preset_pairs(family, id);
        let threshold = match family {
            Family::Bernoulli => 220.0,
            Family::Gaussian => 100.0,
        };
        Self {
            label: preset_label(family, id),
            true_pair,
            hypothesized_pair,
            window_n: 700,
            k_star: 5000,
            threshold,
            epsilons: vec![0.5, 1.0, f64::INFINITY],
            trials: 1000,
            tail_delta: preset_tail_delta(family),
            master_seed: 0,
            max_stream_len: 5700,
        }
    }

    fn validate(&self) -> Result<()> {
        if 2 * self.k_star < self.window_n {
            return Err(Error::Precondition(format!(
                "k_star={} must be at least window/2={}",
                self.k_star,
                self.window_n as f64 / 2.0
            )));
        }
        if self.max_stream_len < self.k_star + self.window_n {
            return Err(Error::param(format!(
                "max_stream_len={} must be at least k_star + window = {}",
                self.max_stream_len,
                self.k_star + self.window_n
            )));
        }
        if self.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        if self.epsilons.is_empty() {
            return Err(Error::param("at least one epsilon is required"));
        }
        for &eps in &self.epsilons {
            let cfg = OnlineConfig::new(self.window_n, self.threshold, eps, self.tail_delta)?;
            if cfg.half_privacy().is_private() {
                self.hypothesized_pair.sensitivity(self.tail_delta)?;
            }
        }
        Ok(())
    }
}

/// `β₁`, `β₂` and alarm statistics for one `ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct OnlineCurves {
    pub label: String,
    pub epsilon: f64,
    /// Wrong estimate, false alarm, or no alarm.
    pub beta1: AccuracyCurve,
    /// Wrong estimate given an alarm whose window contains `k*`; `None`
    /// when no trial alarmed in a correct window.
    pub beta2: Option<AccuracyCurve>,
    pub trials: usize,
    pub no_alarm: usize,
    pub correct_window: usize,
}

impl OnlineCurves {
    pub fn no_alarm_fraction(&self) -> f64 {
        self.no_alarm as f64 / self.trials as f64
    }

    pub fn correct_window_fraction(&self) -> f64 {
        self.correct_window as f64 / self.trials as f64
    }
}

#[derive(Debug, Clone, Copy)]
enum TrialOutcome {
    NoAlarm,
    WrongWindow,
    Correct(usize),
}

pub fn run_online(scenario: &OnlineScenario) -> Result<Vec<OnlineCurves>> {
    scenario.validate()?;
    let s = scenario;
    s.epsilons
        .iter()
        .enumerate()
        .map(|(ei, &eps)| {
            let cfg = OnlineConfig::new(s.window_n, s.threshold, eps, s.tail_delta)?;
            let outcomes = (0..s.trials)
                .into_par_iter()
                .map(|t| {
                    let (mut data_rng, mut noise_rng) = trial_rngs(derive_seed(s.master_seed, ei, t));
                    let pair = s.true_pair;
                    let k_star = s.k_star;
                    let stream = (1..=s.max_stream_len)
                        .map(move |i| pair.sample(if i < k_star { Regime::Pre } else { Regime::Post }, &mut data_rng));
                    let res = detect_online(&s.hypothesized_pair, stream, &cfg, &mut noise_rng)
                        .map_err(|e| Error::Trial { epsilon_index: ei, trial: t, source: Box::new(e) })?;
                    Ok(match res.alarm {
                        None => TrialOutcome::NoAlarm,
                        Some(a) if a.window_start <= k_star && k_star <= a.time => {
                            TrialOutcome::Correct(a.k_tilde.abs_diff(k_star))
                        }
                        Some(_) => TrialOutcome::WrongWindow,
                    })
                })
                .collect::<Result<Vec<_>>>()?;

            let no_alarm = outcomes.iter().filter(|o| matches!(o, TrialOutcome::NoAlarm)).count();
            let correct: Vec<usize> = outcomes
                .iter()
                .filter_map(|o| if let TrialOutcome::Correct(e) = o { Some(*e) } else { None })
                .collect();
            // Failed trials count as an error larger than every alpha.
            let beta1_errors: Vec<usize> = outcomes
                .iter()
                .map(|o| match o {
                    TrialOutcome::Correct(e) => *e,
                    _ => usize::MAX,
                })
                .collect();
            let beta1 = AccuracyCurve::from_errors(&s.label, eps, &beta1_errors, s.trials, s.window_n);
            let beta2 = (!correct.is_empty())
                .then(|| AccuracyCurve::from_errors(&s.label, eps, &correct, correct.len(), s.window_n));
            Ok(OnlineCurves {
                label: s.label.clone(),
                epsilon: eps,
                beta1,
                beta2,
                trials: s.trials,
                no_alarm,
                correct_window: correct.len(),
            })
        })
        .collect()
}

/// Nearest-rank empirical quantile of an ascending sample.
pub fn nearest_rank(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let rank = ((q * n as f64).ceil() as usize).clamp(1, n);
    sorted[rank - 1]
}

/// Empirical threshold range for the online detector.
///
/// `t_low` is the `(1 − fa_rate/k_star)` quantile of the noisy CUSUM
/// statistic `W_n + Z` on pure pre-change streams of length `n`; `t_high`
/// is the `miss_rate` quantile of `W_n + Z` when the change sits at `n/2`.
/// `Z ~ Lap(8A/ε)` matches the per-step noise of the online detector and
/// vanishes at `ε = ∞`.
#[allow(clippy::too_many_arguments)]
pub fn empirical_threshold_range<R: Rng + ?Sized>(
    pair: &HypothesisPair,
    privacy: PrivacyParams,
    n: usize,
    k_star: usize,
    fa_rate: f64,
    miss_rate: f64,
    realizations: usize,
    rng: &mut R,
) -> Result<ThresholdRange> {
    for (name, rate) in [("fa_rate", fa_rate), ("miss_rate", miss_rate)] {
        if !(rate > 0.0 && rate < 1.0) {
            return Err(Error::param(format!("{name} must lie in (0, 1), got {rate}")));
        }
    }
    if realizations < 1000 {
        return Err(Error::param(format!("need at least 1000 realizations, got {realizations}")));
    }
    if n < 2 {
        return Err(Error::param(format!("window must be at least 2, got {n}")));
    }
    if k_star == 0 {
        return Err(Error::param("k_star must be positive"));
    }
    let scale = if privacy.is_private() {
        privacy.scale_for(pair.sensitivity(privacy.delta())?, 8.0)?
    } else {
        crate::mechanisms::LaplaceScale::ZERO
    };
    let q_low = 1.0 - fa_rate / k_star as f64;
    let q_high = miss_rate;
    for q in [q_low, q_high] {
        let tail = realizations as f64 * q.min(1.0 - q);
        if tail < 10.0 {
            warn!(quantile = q, realizations, "fewer than 10 samples beyond the requested quantile");
        }
    }

    let base = rng.random::<u64>();
    let sample = |change_at: usize, stream_id: usize| -> Result<Vec<f64>> {
        let mut out: Vec<f64> = (0..realizations)
            .into_par_iter()
            .map(|r| {
                let mut g = ChaCha8Rng::seed_from_u64(derive_seed(base, stream_id, r));
                let mut w = 0.0;
                for i in 1..=n {
                    let regime = if i < change_at { Regime::Pre } else { Regime::Post };
                    let x = pair.sample(regime, &mut g);
                    w = cusum_step(w, pair.log_ratio(x)?);
                }
                Ok(w + sample_laplace(scale, &mut g))
            })
            .collect::<Result<_>>()?;
        out.sort_by(f64::total_cmp);
        Ok(out)
    };
    let pre = sample(n + 1, 0)?;
    let post = sample((n / 2).max(1), 1)?;
    Ok(ThresholdRange::new(nearest_rank(&pre, q_low), nearest_rank(&post, q_high)))
}

/// `%g`-style formatting with 6 significant digits; `inf` for +∞.
pub fn format_sig6(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub const OFFLINE_CSV_HEADER: &str = "scenario,epsilon,alpha,beta";
pub const ONLINE_CSV_HEADER: &str = "scenario,epsilon,alpha,beta1,beta2,no_alarm_fraction";

pub fn write_offline_csv<W: Write>(curves: &[AccuracyCurve], mut out: W) -> io::Result<()> {
    writeln!(out, "{OFFLINE_CSV_HEADER}")?;
    for c in curves {
        let eps = format_sig6(c.epsilon);
        for (a, b) in c.alphas.iter().zip(&c.betas) {
            writeln!(out, "{},{eps},{a},{}", c.label, format_sig6(*b))?;
        }
    }
    Ok(())
}

/// `beta2` is written as `nan` when its conditioning set is empty.
pub fn write_online_csv<W: Write>(reports: &[OnlineCurves], mut out: W) -> io::Result<()> {
    writeln!(out, "{ONLINE_CSV_HEADER}")?;
    for r in reports {
        let eps = format_sig6(r.epsilon);
        let nf = format_sig6(r.no_alarm_fraction());
        for (i, a) in r.beta1.alphas.iter().enumerate() {
            let b2 = r.beta2.as_ref().map_or(f64::NAN, |c| c.betas[i]);
            writeln!(out, "{},{eps},{a},{},{},{nf}", r.label, format_sig6(r.beta1.betas[i]), format_sig6(b2))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig6_formatting() {
        assert_eq!(format_sig6(0.1), "0.1");
        assert_eq!(format_sig6(1.0), "1");
        assert_eq!(format_sig6(0.0), "0");
        assert_eq!(format_sig6(f64::INFINITY), "inf");
        assert_eq!(format_sig6(476.698_123), "476.698");
        assert_eq!(format_sig6(0.123_456_789), "0.123457");
        assert_eq!(format_sig6(1e-5), "1e-05");
        assert_eq!(format_sig6(1_234_567.0), "1.23457e+06");
        assert_eq!(format_sig6(999_999.7), "1e+06");
        assert_eq!(format_sig6(-2.5), "-2.5");
        assert_eq!(format_sig6(f64::NAN), "nan");
    }

    #[test]
    fn seeds_are_distinct_and_stable() {
        assert_eq!(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
        assert_ne!(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
        assert_ne!(derive_seed(0, 0, 0), derive_seed(0, 0, 1));
    }

    #[test]
    fn stream_boundaries() {
        let pair = HypothesisPair::bernoulli(0.01, 0.99).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let all_post = generate_stream(&pair, 1, 500, &mut rng).unwrap();
        assert!(all_post.iter().sum::<f64>() > 450.0);
        let all_pre = generate_stream(&pair, 501, 500, &mut rng).unwrap();
        assert!(all_pre.iter().sum::<f64>() < 50.0);
        assert!(generate_stream(&pair, 0, 10, &mut rng).is_err());
        assert!(generate_stream(&pair, 12, 10, &mut rng).is_err());
    }

    #[test]
    fn stream_segment_means() {
        let pair = HypothesisPair::bernoulli(0.2, 0.8).unwrap();
        let xs = generate_stream(&pair, 100, 200, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let pre = xs[..99].iter().sum::<f64>() / 99.0;
        let post = xs[99..].iter().sum::<f64>() / 101.0;
        assert!((pre - 0.2).abs() < 0.12 && (post - 0.8).abs() < 0.12);
    }

    #[test]
    fn curve_from_errors() {
        let c = AccuracyCurve::from_errors("x", 1.0, &[0, 2, 2, 5, usize::MAX], 5, 4);
        assert_eq!(c.alphas, vec![0, 1, 2, 3, 4]);
        assert_eq!(c.betas, vec![0.8, 0.8, 0.4, 0.4, 0.4]);
    }

    #[test]
    fn nearest_rank_quantiles() {
        let xs: Vec<f64> = (1..=10).map(f64::from).collect();
        assert_eq!(nearest_rank(&xs, 0.1), 1.0);
        assert_eq!(nearest_rank(&xs, 0.11), 2.0);
        assert_eq!(nearest_rank(&xs, 0.99998), 10.0);
        assert_eq!(nearest_rank(&xs, 0.0), 1.0);
    }

    #[test]
    fn single_exact_trial() {
        // Extreme probabilities make the MLE land on k* for this seed.
        let pair = HypothesisPair::bernoulli(0.001, 0.999).unwrap();
        let s = OfflineScenario {
            label: "exact".into(),
            true_pair: pair,
            hypothesized_pair: pair,
            n: 50,
            k_star: 20,
            epsilons: vec![f64::INFINITY],
            trials: 1,
            tail_delta: 0.0,
            master_seed: 9,
        };
        let curves = run_offline(&s).unwrap();
        assert_eq!(curves.len(), 1);
        assert!(curves[0].betas.iter().all(|&b| b == 0.0));
    }

    #[test]
    fn offline_validation() {
        let mut s = OfflineScenario::preset(Family::Gaussian, ScenarioId::A);
        s.tail_delta = 0.0;
        assert_eq!(run_offline(&s).unwrap_err(), Error::InfiniteSensitivity);
        let mut s = OfflineScenario::preset(Family::Bernoulli, ScenarioId::A);
        s.k_star = 1;
        assert!(run_offline(&s).is_err());
    }

    #[test]
    fn degenerate_threshold_never_alarms() {
        let mut s = OnlineScenario::preset(Family::Bernoulli, ScenarioId::A);
        s.window_n = 50;
        s.k_star = 200;
        s.max_stream_len = 250;
        s.threshold = 1e9;
        s.epsilons = vec![f64::INFINITY];
        s.trials = 20;
        let out = run_online(&s).unwrap();
        assert_eq!(out[0].no_alarm, 20);
        assert!(out[0].beta1.betas.iter().all(|&b| b == 1.0));
        assert!(out[0].beta2.is_none());
    }

    #[test]
    fn threshold_range_nonpositive_cusum() {
        // Every observation from P0 = Bernoulli(0.001) is almost surely 0.
        let pair = HypothesisPair::bernoulli(1e-9, 0.5).unwrap();
        let r = empirical_threshold_range(&pair, PrivacyParams::non_private(), 50, 100, 0.1, 0.1, 1000, &mut ChaCha8Rng::seed_from_u64(0))
            .unwrap();
        assert!(r.t_low <= 0.0);
    }

    #[test]
    fn threshold_range_validation() {
        let pair = HypothesisPair::bernoulli(0.2, 0.8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let np = PrivacyParams::non_private();
        assert!(empirical_threshold_range(&pair, np, 50, 100, 0.0, 0.1, 1000, &mut rng).is_err());
        assert!(empirical_threshold_range(&pair, np, 50, 100, 0.1, 1.0, 1000, &mut rng).is_err());
        assert!(empirical_threshold_range(&pair, np, 50, 100, 0.1, 0.1, 999, &mut rng).is_err());
        let g = HypothesisPair::gaussian(0.0, 1.0).unwrap();
        assert_eq!(
            empirical_threshold_range(&g, PrivacyParams::pure(1.0).unwrap(), 50, 100, 0.1, 0.1, 1000, &mut rng).unwrap_err(),
            Error::InfiniteSensitivity
        );
    }

    #[test]
    fn csv_shapes() {
        let c = AccuracyCurve::from_errors("bernoulli-A", f64::INFINITY, &[0, 1], 2, 2);
        let mut buf = Vec::new();
        write_offline_csv(std::slice::from_ref(&c), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "scenario,epsilon,alpha,beta\nbernoulli-A,inf,0,0.5\nbernoulli-A,inf,1,0\nbernoulli-A,inf,2,0\n");

        let r = OnlineCurves {
            label: "bernoulli-A".into(),
            epsilon: 0.5,
            beta1: c,
            beta2: None,
            trials: 2,
            no_alarm: 1,
            correct_window: 0,
        };
        let mut buf = Vec::new();
        write_online_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(ONLINE_CSV_HEADER));
        assert_eq!(lines.next(), Some("bernoulli-A,0.5,0,0.5,nan,0.5"));
    }
}
