// SPDX-License-Identifier: MIT OR Apache-2.0

//! Streaming detection over a sliding window.
//!
//! After the first `n` points, every new point `x_j` yields the windowed
//! statistic `ℓ_j = max_{j-n+1 ≤ k ≤ j} Σ_{i=k}^{j} log ratio(x_i)`. The
//! statistic is fed to Above Noisy Threshold at budget `ε/2`; at the first
//! noisy crossing the offline detector runs on the current window at the
//! remaining `ε/2` and its estimate is shifted back to stream coordinates.
//!
//! `ℓ_j` is computed as `S_j − min_{j-n ≤ k ≤ j-1} S_k` over exact prefix
//! sums `S_k`, with a monotone deque holding the sliding minimum, so each
//! step costs O(1) amortized and memory stays O(n).

use std::cmp::Ordering;
use std::collections::VecDeque;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact_sum::ExactSum;
use crate::hypothesis::HypothesisPair;
use crate::mechanisms::{above_noisy_threshold, PrivacyParams};
use crate::offline::detect_offline;

/// One step of the unwindowed CUSUM recursion `W_i = max(W_{i-1}, 0) + r_i`.
/// Seeding with `W_0 = 0` gives `W_1 = r_1`.
pub fn cusum_step(w_prev: f64, ratio: f64) -> f64 {
    w_prev.max(0.0) + ratio
}

/// `W_1, …, W_m` for a ratio sequence.
pub fn cusum_trace(ratios: &[f64]) -> Vec<f64> {
    let mut w = 0.0;
    ratios
        .iter()
        .map(|&r| {
            w = cusum_step(w, r);
            w
        })
        .collect()
}

/// Sliding-window maximum of suffix sums of log ratios.
#[derive(Debug, Clone)]
pub struct CusumWindow {
    window: usize,
    consumed: usize,
    prefix: ExactSum,
    // (k, S_k) with strictly increasing S_k, k in [j-n, j-1].
    minima: VecDeque<(usize, ExactSum)>,
}

impl CusumWindow {
    pub fn new(window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::param("window must be at least 1"));
        }
        Ok(Self { window, consumed: 0, prefix: ExactSum::new(), minima: VecDeque::with_capacity(window + 1) })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Number of ratios pushed so far (the current time `j`).
    pub fn consumed(&self) -> usize {
        self.consumed
    }

    pub fn push(&mut self, ratio: f64) {
        let j = self.consumed;
        // S_{j} becomes a candidate start for suffixes ending at j+1 onward.
        while let Some((_, back)) = self.minima.back() {
            if back.cmp_exact(&self.prefix) != Ordering::Less {
                self.minima.pop_back();
            } else {
                break;
            }
        }
        self.minima.push_back((j, self.prefix.clone()));
        self.prefix.add(ratio);
        self.consumed = j + 1;
        let oldest = self.consumed.saturating_sub(self.window);
        while self.minima.front().is_some_and(|(k, _)| *k < oldest) {
            self.minima.pop_front();
        }
    }

    /// `ℓ_j` for the current `j`; errors until `window` ratios were pushed.
    pub fn windowed_max(&self) -> Result<f64> {
        if self.consumed < self.window {
            return Err(Error::NotReady { needed: self.window, consumed: self.consumed });
        }
        let (_, min) = self.minima.front().expect("non-empty once ready");
        Ok(self.prefix.diff(min))
    }

    /// Pushes one ratio and returns the new windowed maximum.
    pub fn push_and_query(&mut self, ratio: f64) -> Result<f64> {
        self.push(ratio);
        self.windowed_max()
    }

    /// Number of prefix sums currently held.
    pub fn held(&self) -> usize {
        self.minima.len()
    }
}

/// Parameters of the online detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnlineConfig {
    window: usize,
    threshold: f64,
    epsilon: f64,
    tail_delta: f64,
}

impl OnlineConfig {
    /// `tail_delta = 0` calibrates noise to `Δℓ`; `tail_delta > 0` uses
    /// `A_δ` instead, which admits Gaussian pairs at a weaker guarantee.
    pub fn new(window: usize, threshold: f64, epsilon: f64, tail_delta: f64) -> Result<Self> {
        if window < 2 {
            return Err(Error::param(format!("window must be at least 2, got {window}")));
        }
        if !threshold.is_finite() {
            return Err(Error::param(format!("threshold must be finite, got {threshold}")));
        }
        PrivacyParams::new(epsilon, tail_delta)?;
        Ok(Self { window, threshold, epsilon, tail_delta })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn tail_delta(&self) -> f64 {
        self.tail_delta
    }

    /// Budget of each half: the threshold test and the offline call.
    pub fn half_privacy(&self) -> PrivacyParams {
        PrivacyParams::new(self.epsilon, self.tail_delta).expect("validated").half_epsilon()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alarm {
    /// Time `j` of the first noisy crossing.
    pub time: usize,
    /// First index of the alarmed window, `j - n + 1`.
    pub window_start: usize,
    /// Estimated change point in stream coordinates.
    pub k_tilde: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OnlineResult {
    pub alarm: Option<Alarm>,
    /// Points read from the stream.
    pub consumed: usize,
}

struct WindowedQueries<'a, I> {
    stream: I,
    pair: &'a HypothesisPair,
    cusum: CusumWindow,
    recent: VecDeque<f64>,
    failure: Option<Error>,
}

impl<I: Iterator<Item = f64>> WindowedQueries<'_, I> {
    fn ingest(&mut self) -> Option<()> {
        let x = self.stream.next()?;
        match self.pair.log_ratio_at(self.cusum.consumed(), x) {
            Ok(r) => {
                self.cusum.push(r);
                if self.recent.len() == self.cusum.window() {
                    self.recent.pop_front();
                }
                self.recent.push_back(x);
                Some(())
            }
            Err(e) => {
                self.failure = Some(e);
                None
            }
        }
    }
}

impl<I: Iterator<Item = f64>> Iterator for WindowedQueries<'_, I> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        if self.failure.is_some() {
            return None;
        }
        let n = self.cusum.window();
        if self.cusum.consumed() < n {
            while self.cusum.consumed() < n {
                if self.ingest().is_none() {
                    if self.failure.is_none() {
                        self.failure =
                            Some(Error::InsufficientData { needed: n, got: self.cusum.consumed() });
                    }
                    return None;
                }
            }
        } else {
            self.ingest()?;
        }
        Some(self.cusum.windowed_max().expect("window is full"))
    }
}

/// Runs the online detector over `stream` until the first alarm or the end
/// of the stream.
pub fn detect_online<S, R>(
    pair: &HypothesisPair,
    stream: S,
    config: &OnlineConfig,
    rng: &mut R,
) -> Result<OnlineResult>
where
    S: IntoIterator<Item = f64>,
    R: Rng + ?Sized,
{
    let half = config.half_privacy();
    let sensitivity = if half.is_private() { pair.sensitivity(config.tail_delta)? } else { 0.0 };
    let n = config.window;
    let mut queries = WindowedQueries {
        stream: stream.into_iter(),
        pair,
        cusum: CusumWindow::new(n)?,
        recent: VecDeque::with_capacity(n),
        failure: None,
    };
    let hit = above_noisy_threshold(&mut queries, sensitivity, config.threshold, half, rng)?;
    if let Some(e) = queries.failure.take() {
        return Err(e);
    }
    let consumed = queries.cusum.consumed();
    let Some(i) = hit else {
        return Ok(OnlineResult { alarm: None, consumed });
    };
    let time = n + i;
    let window: Vec<f64> = queries.recent.iter().copied().collect();
    let local = detect_offline(pair, &window, half, rng)?;
    Ok(OnlineResult {
        alarm: Some(Alarm { time, window_start: time - n + 1, k_tilde: local.k_tilde + (time - n) }),
        consumed,
    })
}
