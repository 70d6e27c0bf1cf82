// SPDX-License-Identifier: MIT OR Apache-2.0

// Empirical accuracy curves `beta(alpha)` for the preset offline
// scenarios, written as CSV.

use std::error::Error;
use std::fs::File;
use std::io::BufWriter;

use dpcpd::simulation::{run_offline, write_offline_csv, Family, OfflineScenario, ScenarioId};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut curves = Vec::new();
    for id in [ScenarioId::A, ScenarioId::B, ScenarioId::C] {
        let mut s = OfflineScenario::preset(Family::Bernoulli, id);
        s.trials = 200;
        s.master_seed = 1;
        let out = run_offline(&s)?;
        for c in &out {
            println!("{} eps = {:<4} beta(10) = {:.3}", c.label, c.epsilon, c.beta_at(10).unwrap_or(f64::NAN));
        }
        curves.extend(out);
    }
    let path = std::env::temp_dir().join("dpcpd_offline_example.csv");
    write_offline_csv(&curves, BufWriter::new(File::create(&path)?))?;
    println!("wrote {}", path.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
