// SPDX-License-Identifier: MIT OR Apache-2.0

// Watch a stream for a change with the sliding-window detector. The
// stream is consumed lazily and stops at the first alarm.

use std::error::Error;

use dpcpd::{detect_online, HypothesisPair, OnlineConfig, Regime};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let pair = HypothesisPair::bernoulli(0.2, 0.8)?;
    let k_star = 5000;

    for eps in [f64::INFINITY, 1.0, 0.5] {
        let config = OnlineConfig::new(700, 220.0, eps, 0.0)?;
        let mut data_rng = ChaCha8Rng::seed_from_u64(11);
        let stream = (1..=6000usize).map(move |i| {
            let regime = if i < k_star { Regime::Pre } else { Regime::Post };
            pair.sample(regime, &mut data_rng)
        });
        let mut noise_rng = ChaCha8Rng::seed_from_u64(12);
        let result = detect_online(&pair, stream, &config, &mut noise_rng)?;
        match result.alarm {
            Some(a) => println!(
                "eps = {eps:<4} alarm at {} (window {}..={}), k_tilde = {}, k* = {k_star}",
                a.time, a.window_start, a.time, a.k_tilde
            ),
            None => println!("eps = {eps:<4} no alarm after {} points", result.consumed),
        }
    }

    // A constant pre-change stream never alarms without noise.
    let quiet = OnlineConfig::new(50, 10.0, f64::INFINITY, 0.0)?;
    let r = detect_online(&pair, vec![0.0; 500], &quiet, &mut ChaCha8Rng::seed_from_u64(0))?;
    println!("all-zero stream: alarm = {:?}, consumed = {}", r.alarm, r.consumed);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
