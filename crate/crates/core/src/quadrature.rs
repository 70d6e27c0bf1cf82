// SPDX-License-Identifier: MIT OR Apache-2.0

//! Adaptive Gauss–Kronrod (7/15) quadrature on a finite interval.

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd Kronrod nodes (1, 3, 5) and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_SEGMENTS: usize = 2000;

#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub segments: usize,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(centre - dx) + f(centre + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * half, ((k - g) * half).abs())
}

/// Integrates `f` over `[a, b]`, bisecting the worst segment until the
/// summed error estimate drops below `abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::param(format!("bad integration interval [{a}, {b}]")));
    }
    let (v, e) = kronrod(&f, a, b);
    let mut segments = vec![(a, b, v, e)];
    loop {
        let value: f64 = segments.iter().map(|s| s.2).sum();
        let error: f64 = segments.iter().map(|s| s.3).sum();
        if !value.is_finite() {
            return Err(Error::Numeric(format!(
                "non-finite integrand on [{a}, {b}] after {} segments",
                segments.len()
            )));
        }
        if error <= abs_tol {
            return Ok(Estimate { value, error, segments: segments.len() });
        }
        if segments.len() >= MAX_SEGMENTS {
            return Err(Error::Numeric(format!(
                "quadrature did not converge on [{a}, {b}]: error estimate {error:e} > {abs_tol:e} with {} segments",
                segments.len()
            )));
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _, _) = segments.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = kronrod(&f, lo, mid);
        let (v2, e2) = kronrod(&f, mid, hi);
        segments.push((lo, mid, v1, e1));
        segments.push((mid, hi, v2, e2));
    }
}
