// SPDX-License-Identifier: MIT OR Apache-2.0

// Pick an online threshold by simulation: the lower end keeps false
// alarms rare on pre-change data, the upper end keeps misses rare when
// the change sits mid-window.

use std::error::Error;

use dpcpd::bounds::online_threshold_range;
use dpcpd::simulation::empirical_threshold_range;
use dpcpd::{HypothesisPair, PrivacyParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let pair = HypothesisPair::bernoulli(0.2, 0.8)?;
    let (n, k_star) = (700, 5000);
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    for eps in [f64::INFINITY, 1.0] {
        let r = empirical_threshold_range(&pair, PrivacyParams::pure(eps)?, n, k_star, 0.1, 0.1, 2000, &mut rng)?;
        println!(
            "eps = {eps:<4} empirical T in [{:.1}, {:.1}] feasible = {}, contains 220: {}",
            r.t_low,
            r.t_high,
            r.feasible,
            r.contains(220.0)
        );
    }
    let analytic = online_threshold_range(pair.delta_ell(), pair.kl_constants()?.c, n, k_star, 0.1, f64::INFINITY)?;
    println!("analytic (eps = inf) T in [{:.1}, {:.1}]", analytic.t_low, analytic.t_high);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
