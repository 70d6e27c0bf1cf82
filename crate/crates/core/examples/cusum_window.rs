// SPDX-License-Identifier: MIT OR Apache-2.0

// The windowed CUSUM statistic on its own: `max` over the last `n`
// suffix sums, maintained in amortized constant time per point.

use std::error::Error;

use dpcpd::online::{cusum_trace, CusumWindow};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ratios = [-1.0, -1.0, 3.0, 3.0, -0.5, -4.0, 2.0];

    println!("unwindowed CUSUM: {:?}", cusum_trace(&ratios));

    let mut w = CusumWindow::new(3)?;
    for (j, &r) in ratios.iter().enumerate() {
        w.push(r);
        match w.windowed_max() {
            Ok(m) => println!("j = {} ratio = {r:>4}  windowed max = {m}", j + 1),
            Err(e) => println!("j = {} ratio = {r:>4}  ({e})", j + 1),
        }
    }
    println!("deque holds {} prefix sums", w.held());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
