// SPDX-License-Identifier: MIT OR Apache-2.0

// Locate a single change in a recorded Bernoulli sequence, first with the
// exact MLE and then privately at a few budgets. A Gaussian pair follows,
// which needs a tail probability `delta > 0` because its log ratio is
// unbounded.

use std::error::Error;

use dpcpd::{detect_offline, llr_profile, mle, HypothesisPair, PrivacyParams};
use dpcpd::simulation::generate_stream;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pair = HypothesisPair::bernoulli(0.2, 0.8)?;
    let k_star = 100;
    let data = generate_stream(&pair, k_star, 200, &mut rng)?;

    let profile = llr_profile(&pair, &data)?;
    let k_hat = mle(&pair, &data)?;
    println!("bernoulli(0.2 -> 0.8), k* = {k_star}");
    println!("  mle = {k_hat}, l(mle) = {:.3}", profile.at(k_hat));

    for eps in [0.1, 0.5, 1.0, f64::INFINITY] {
        let r = detect_offline(&pair, &data, PrivacyParams::pure(eps)?, &mut rng)?;
        println!("  eps = {eps:<4} k_tilde = {:>3}  noise scale = {:.3}", r.k_tilde, r.noise_scale);
    }

    let gauss = HypothesisPair::gaussian(0.0, 1.0)?;
    let data = generate_stream(&gauss, k_star, 200, &mut rng)?;
    let privacy = PrivacyParams::new(1.0, 0.05)?;
    let r = detect_offline(&gauss, &data, privacy, &mut rng)?;
    println!("gaussian(0 -> 1), delta = 0.05");
    println!("  mle = {}, k_tilde = {} ({:?}, scale {:.3})", mle(&gauss, &data)?, r.k_tilde, r.mode, r.noise_scale);

    match detect_offline(&gauss, &data, PrivacyParams::pure(1.0)?, &mut rng) {
        Err(e) => println!("  delta = 0 is refused: {e}"),
        Ok(_) => return Err("a Gaussian pair must not run with delta = 0".into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
