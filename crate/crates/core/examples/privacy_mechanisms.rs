// SPDX-License-Identifier: MIT OR Apache-2.0

// The Laplace building blocks: raw noise, Report Noisy Max and Above
// Noisy Threshold, with the sensitivities the detectors feed them.

use std::error::Error;

use dpcpd::mechanisms::{above_noisy_threshold, report_noisy_max, sample_laplace};
use dpcpd::{HypothesisPair, LaplaceScale, PrivacyParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    let scale = LaplaceScale::new(2.0)?;
    let draws: Vec<f64> = (0..5).map(|_| sample_laplace(scale, &mut rng)).collect();
    println!("Lap(2) draws: {draws:.3?}");

    let scores = [1.0, 4.0, 3.5, 0.0];
    let p = PrivacyParams::pure(1.0)?;
    let picks: Vec<usize> = (0..10).map(|_| report_noisy_max(&scores, 1.0, p, &mut rng)).collect::<Result<_, _>>()?;
    println!("noisy argmax of {scores:?}: {picks:?}");

    let queries = [0.0, 1.0, 2.0, 8.0, 9.0, 20.0];
    let hit = above_noisy_threshold(queries, 1.0, 5.0, PrivacyParams::non_private(), &mut rng)?;
    println!("first query above 5 without noise: {hit:?}");
    let hit = above_noisy_threshold(queries, 1.0, 5.0, p, &mut rng)?;
    println!("first query above 5 at eps = 1: {hit:?}");

    let bern = HypothesisPair::bernoulli(0.2, 0.8)?;
    let gauss = HypothesisPair::gaussian(0.0, 1.0)?;
    println!("sensitivity, bernoulli(0.2 -> 0.8): {:.6}", bern.sensitivity(0.0)?);
    println!("sensitivity, gaussian(0 -> 1), delta = 0.05: {:.6}", gauss.sensitivity(0.05)?);
    println!("same, by bisection on the tail: {:.6}", gauss.a_delta_bisection(0.05)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
