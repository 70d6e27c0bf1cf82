// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact floating-point summation.
//!
//! Sums are kept as a non-overlapping expansion of `f64` partials (Shewchuk's
//! grow-expansion), so the represented value is the exact real sum of every
//! term added. [`ExactSum::value`] rounds that exact value to the nearest
//! `f64` (ties to even). Two mathematically equal sums therefore always round
//! to the same float, independent of the order the terms arrived in. The
//! likelihood profiles and the windowed CUSUM rely on this to make argmax
//! ties and sliding-window maxima reproducible bit for bit.

use std::cmp::Ordering;

use smallvec::SmallVec;

type Partials = SmallVec<[f64; 4]>;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExactSum {
    // Increasing magnitude, non-overlapping, no zeros except possibly the last.
    partials: Partials,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        grow(&mut self.partials, x);
    }

    /// Correctly rounded value of the exact sum.
    pub fn value(&self) -> f64 {
        round_partials(&self.partials)
    }

    /// Correctly rounded value of `self - other`.
    pub fn diff(&self, other: &ExactSum) -> f64 {
        let mut acc = self.partials.clone();
        for &p in &other.partials {
            grow(&mut acc, -p);
        }
        round_partials(&acc)
    }

    /// Exact comparison of the two represented sums.
    pub fn cmp_exact(&self, other: &ExactSum) -> Ordering {
        // Rounding to nearest preserves the sign of any nonzero exact sum of
        // doubles, so the sign of the rounded difference is exact.
        self.diff(other).partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }
}

impl Extend<f64> for ExactSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for ExactSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = ExactSum::new();
        s.extend(iter);
        s
    }
}

fn grow(partials: &mut Partials, mut x: f64) {
    let mut i = 0;
    for j in 0..partials.len() {
        let mut y = partials[j];
        if x.abs() < y.abs() {
            std::mem::swap(&mut x, &mut y);
        }
        let hi = x + y;
        let lo = y - (hi - x);
        if lo != 0.0 {
            partials[i] = lo;
            i += 1;
        }
        x = hi;
    }
    partials.truncate(i);
    partials.push(x);
}

fn round_partials(partials: &[f64]) -> f64 {
    let mut n = partials.len();
    if n == 0 {
        return 0.0;
    }
    n -= 1;
    let mut hi = partials[n];
    let mut lo = 0.0;
    while n > 0 {
        let x = hi;
        n -= 1;
        let y = partials[n];
        hi = x + y;
        let yr = hi - x;
        lo = y - yr;
        if lo != 0.0 {
            break;
        }
    }
    // Half-way case: the remaining partials push the tie one way or the other.
    if n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0)) {
        let y = lo * 2.0;
        let x = hi + y;
        let yr = x - hi;
        if y == yr {
            hi = x;
        }
    }
    hi
}
