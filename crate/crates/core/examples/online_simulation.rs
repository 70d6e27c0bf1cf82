// SPDX-License-Identifier: MIT OR Apache-2.0

// Online accuracy curves: `beta1` counts misses and false alarms as
// failures, `beta2` conditions on an alarm whose window contains the
// change.

use std::error::Error;
use std::fs::File;
use std::io::BufWriter;

use dpcpd::simulation::{run_online, write_online_csv, Family, OnlineScenario, ScenarioId};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut s = OnlineScenario::preset(Family::Bernoulli, ScenarioId::A);
    s.trials = 200;
    let reports = run_online(&s)?;
    for r in &reports {
        println!(
            "eps = {:<4} correct window {:>3}/{}, no alarm {:>3}, beta1(50) = {:.2}, beta2(50) = {}",
            r.epsilon,
            r.correct_window,
            r.trials,
            r.no_alarm,
            r.beta1.beta_at(50).unwrap_or(f64::NAN),
            r.beta2.as_ref().and_then(|c| c.beta_at(50)).map_or("undefined".to_string(), |b| format!("{b:.2}"))
        );
    }
    let path = std::env::temp_dir().join("dpcpd_online_example.csv");
    write_online_csv(&reports, BufWriter::new(File::create(&path)?))?;
    println!("wrote {}", path.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
