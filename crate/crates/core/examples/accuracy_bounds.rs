// SPDX-License-Identifier: MIT OR Apache-2.0

// Closed-form accuracy guarantees for both model families, plus the
// analytic threshold window of the online detector.

use std::error::Error;

use dpcpd::bounds::{alpha_mle_bounded, alpha_mle_relaxed, online_alpha, online_threshold_range};
use dpcpd::{AccuracyBound, BoundInputs, BoundKind, HypothesisPair};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let beta = 0.1;

    let bern = HypothesisPair::bernoulli(0.2, 0.8)?;
    let a = bern.delta_ell();
    let kl = bern.kl_constants()?;
    println!("bernoulli(0.2 -> 0.8): A = {a:.6}, C = {:.6}, C_M = {:.6}", kl.c, kl.c_m);
    println!("  MLE alpha = {:.2}", alpha_mle_bounded(a, kl.c, beta)?);
    for eps in [0.1, 0.5, 1.0, f64::INFINITY] {
        let inputs = BoundInputs { a, divergence: kl.c, beta, epsilon: eps, window: 0 };
        let b = AccuracyBound::compute(BoundKind::PrivateBounded, inputs)?;
        println!("  private alpha at eps = {eps:<4} : {:.2}", b.alpha);
    }

    let gauss = HypothesisPair::gaussian(0.0, 1.0)?;
    let a_delta = gauss.a_delta(0.05)?;
    let kl = gauss.kl_constants()?;
    println!("gaussian(0 -> 1): A_0.05 = {a_delta:.6}, C = {:.6}, C_M = {:.6}", kl.c, kl.c_m);
    println!("  relaxed MLE alpha = {:.1}", alpha_mle_relaxed(kl.c_m, beta)?);
    let inputs = BoundInputs { a: a_delta, divergence: kl.c_m, beta, epsilon: 1.0, window: 0 };
    println!("  relaxed private alpha (eps = 1) = {:.1}", AccuracyBound::compute(BoundKind::PrivateRelaxed, inputs)?.alpha);

    let kl = bern.kl_constants()?;
    let r = online_threshold_range(a, kl.c, 700, 5000, beta, f64::INFINITY)?;
    println!("online, n = 700, k* = 5000: T in [{:.1}, {:.1}] feasible = {}", r.t_low, r.t_high, r.feasible);
    println!("  online alpha (eps = 1) = {:.1}", online_alpha(a, kl.c, 700, beta, 1.0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
