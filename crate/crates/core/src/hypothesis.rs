// SPDX-License-Identifier: MIT OR Apache-2.0

//! Pre-/post-change distribution pairs.
//!
//! A [`HypothesisPair`] fixes the pre-change law `P0` and the post-change law
//! `P1`. Everything the detectors need is derived from it: the per-point
//! log-likelihood ratio `log(P1(x)/P0(x))`, the sensitivity of the partial
//! sums (`Δℓ`, finite only for bounded ratios), the tail bound `A_δ` used when
//! `Δℓ` is infinite, and the divergence constants `C` and `C_M` that drive the
//! accuracy bounds.

use std::f64::consts::LN_2;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::{normal, quadrature};

const BISECTION_TOL: f64 = 1e-9;
const CM_QUAD_TOL: f64 = 1e-8;
const CM_TRUNCATION_SD: f64 = 12.0;

/// Which distribution generates a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Pre,
    Post,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairKind {
    /// `P0 = Bernoulli(p0)`, `P1 = Bernoulli(p1)`; observations are 0 or 1.
    Bernoulli { p0: f64, p1: f64 },
    /// `P0 = N(mu0, 1)`, `P1 = N(mu1, 1)`.
    GaussianUnitVar { mu0: f64, mu1: f64 },
}

/// An immutable `(P0, P1)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisPair {
    kind: PairKind,
    // Bernoulli: log ratios at x = 1 and x = 0. Gaussian: unused.
    ratio_one: f64,
    ratio_zero: f64,
}

/// Divergence constants of a pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KlConstants {
    /// `min{KL(P0||P1), KL(P1||P0)}`.
    pub c: f64,
    /// `min_i KL(P_i || (P0+P1)/2)`, always in `[0, ln 2]`.
    pub c_m: f64,
}

impl HypothesisPair {
    pub fn bernoulli(p0: f64, p1: f64) -> Result<Self> {
        let open_unit = |p: f64| p > 0.0 && p < 1.0;
        if !open_unit(p0) || !open_unit(p1) {
            return Err(Error::param(format!(
                "Bernoulli probabilities must lie in (0, 1), got p0={p0}, p1={p1}"
            )));
        }
        if p0 == p1 {
            return Err(Error::param(format!("p0 and p1 must differ, both are {p0}")));
        }
        Ok(Self {
            kind: PairKind::Bernoulli { p0, p1 },
            ratio_one: (p1 / p0).ln(),
            ratio_zero: ((1.0 - p1) / (1.0 - p0)).ln(),
        })
    }

    pub fn gaussian(mu0: f64, mu1: f64) -> Result<Self> {
        if !mu0.is_finite() || !mu1.is_finite() {
            return Err(Error::param(format!("means must be finite, got mu0={mu0}, mu1={mu1}")));
        }
        if mu0 == mu1 {
            return Err(Error::param(format!("mu0 and mu1 must differ, both are {mu0}")));
        }
        Ok(Self { kind: PairKind::GaussianUnitVar { mu0, mu1 }, ratio_one: 0.0, ratio_zero: 0.0 })
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    /// The pair with `P0` and `P1` exchanged.
    pub fn swapped(&self) -> Self {
        match self.kind {
            PairKind::Bernoulli { p0, p1 } => Self::bernoulli(p1, p0),
            PairKind::GaussianUnitVar { mu0, mu1 } => Self::gaussian(mu1, mu0),
        }
        .expect("swapping preserves the invariants")
    }

    /// `log(P1(x)/P0(x))`.
    pub fn log_ratio(&self, x: f64) -> Result<f64> {
        self.log_ratio_at(0, x)
    }

    /// Like [`log_ratio`](Self::log_ratio) but reports `index` on failure.
    pub fn log_ratio_at(&self, index: usize, x: f64) -> Result<f64> {
        match self.kind {
            PairKind::Bernoulli { .. } => {
                if x == 1.0 {
                    Ok(self.ratio_one)
                } else if x == 0.0 {
                    Ok(self.ratio_zero)
                } else {
                    Err(Error::InvalidObservation { index, value: x })
                }
            }
            PairKind::GaussianUnitVar { mu0, mu1 } => {
                if !x.is_finite() {
                    return Err(Error::InvalidObservation { index, value: x });
                }
                Ok((mu1 - mu0) * (x - 0.5 * (mu0 + mu1)))
            }
        }
    }

    /// `Δℓ = max_x log ratio − min_x log ratio`; infinite for Gaussians.
    pub fn delta_ell(&self) -> f64 {
        match self.kind {
            PairKind::Bernoulli { .. } => (self.ratio_one - self.ratio_zero).abs(),
            PairKind::GaussianUnitVar { .. } => f64::INFINITY,
        }
    }

    /// Tail function whose crossing of `δ/2` defines `A_δ`.
    ///
    /// Bernoulli: `max_i Pr_{x~P_i}[2|log ratio| > t]` by enumerating the
    /// support. Gaussian: the adverse one-sided tail
    /// `max(Pr_{P0}[2 log ratio < -t], Pr_{P1}[2 log ratio > t])`, which is
    /// the tail the closed form `2μ(Φ⁻¹(1-δ/2) + μ/2)` inverts.
    pub fn ratio_tail(&self, t: f64) -> f64 {
        match self.kind {
            PairKind::Bernoulli { p0, p1 } => {
                let mass = |p: f64| {
                    let mut m = 0.0;
                    if 2.0 * self.ratio_one.abs() > t {
                        m += p;
                    }
                    if 2.0 * self.ratio_zero.abs() > t {
                        m += 1.0 - p;
                    }
                    m
                };
                mass(p0).max(mass(p1))
            }
            PairKind::GaussianUnitVar { mu0, mu1 } => {
                // Both regimes give the same value by symmetry.
                let mu = (mu1 - mu0).abs();
                normal::upper_tail(t / (2.0 * mu) - 0.5 * mu)
            }
        }
    }

    /// `A_δ = min{t : tail(t) < δ/2}`.
    pub fn a_delta(&self, delta: f64) -> Result<f64> {
        check_delta(delta)?;
        match self.kind {
            PairKind::Bernoulli { .. } => {
                let mut candidates =
                    [0.0, 2.0 * self.ratio_one.abs(), 2.0 * self.ratio_zero.abs()];
                candidates.sort_by(f64::total_cmp);
                candidates
                    .into_iter()
                    .find(|&t| self.ratio_tail(t) < 0.5 * delta)
                    .ok_or_else(|| Error::Numeric("no finite A_delta on a finite support".into()))
            }
            PairKind::GaussianUnitVar { mu0, mu1 } => {
                let mu = (mu1 - mu0).abs();
                Ok(2.0 * mu * (normal::quantile(1.0 - 0.5 * delta) + 0.5 * mu))
            }
        }
    }

    /// `A_δ` by bisection on [`ratio_tail`](Self::ratio_tail), for any model.
    pub fn a_delta_bisection(&self, delta: f64) -> Result<f64> {
        check_delta(delta)?;
        bisect_tail(|t| self.ratio_tail(t), delta)
    }

    /// Noise calibration constant `A`: `Δℓ` when `delta == 0`, else `A_δ`.
    pub fn sensitivity(&self, delta: f64) -> Result<f64> {
        if delta == 0.0 {
            let a = self.delta_ell();
            if a.is_finite() {
                Ok(a)
            } else {
                Err(Error::InfiniteSensitivity)
            }
        } else {
            self.a_delta(delta)
        }
    }

    /// `(KL(P0||P1), KL(P1||P0))`.
    pub fn kl_divergences(&self) -> (f64, f64) {
        match self.kind {
            PairKind::Bernoulli { p0, p1 } => (bernoulli_kl(p0, p1), bernoulli_kl(p1, p0)),
            PairKind::GaussianUnitVar { mu0, mu1 } => {
                let d = 0.5 * (mu1 - mu0) * (mu1 - mu0);
                (d, d)
            }
        }
    }

    pub fn kl_constants(&self) -> Result<KlConstants> {
        let (d01, d10) = self.kl_divergences();
        let c = d01.min(d10);
        let c_m = match self.kind {
            PairKind::Bernoulli { p0, p1 } => {
                let m = 0.5 * (p0 + p1);
                bernoulli_kl(p0, m).min(bernoulli_kl(p1, m))
            }
            PairKind::GaussianUnitVar { mu0, mu1 } => {
                let lo = mu0.min(mu1) - CM_TRUNCATION_SD;
                let hi = mu0.max(mu1) + CM_TRUNCATION_SD;
                let mut best = f64::INFINITY;
                for (mean, sign) in [(mu0, 1.0), (mu1, -1.0)] {
                    // KL(P_i || M) = E_i[ln 2 - softplus(log P_other/P_i)].
                    let integrand = |x: f64| {
                        let z = x - mean;
                        let density = (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
                        let other_vs_self = sign * (mu1 - mu0) * (x - 0.5 * (mu0 + mu1));
                        density * (LN_2 - softplus(other_vs_self))
                    };
                    let est = quadrature::integrate(integrand, lo, hi, CM_QUAD_TOL)?;
                    best = best.min(est.value);
                }
                best
            }
        };
        Ok(KlConstants { c, c_m: c_m.clamp(0.0, LN_2) })
    }

    /// One draw from `P0` (`Pre`) or `P1` (`Post`).
    pub fn sample<R: Rng + ?Sized>(&self, regime: Regime, rng: &mut R) -> f64 {
        match self.kind {
            PairKind::Bernoulli { p0, p1 } => {
                let p = if regime == Regime::Pre { p0 } else { p1 };
                if rng.random::<f64>() < p {
                    1.0
                } else {
                    0.0
                }
            }
            PairKind::GaussianUnitVar { mu0, mu1 } => {
                let mean = if regime == Regime::Pre { mu0 } else { mu1 };
                let z: f64 = rng.sample(StandardNormal);
                mean + z
            }
        }
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("delta must lie in (0, 1), got {delta}")))
    }
}

fn bernoulli_kl(p: f64, q: f64) -> f64 {
    p * (p / q).ln() + (1.0 - p) * ((1.0 - p) / (1.0 - q)).ln()
}

fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Smallest `t ≥ 0` with `tail(t) < δ/2` for a non-increasing `tail`,
/// located to within `1e-9`.
pub fn bisect_tail<F: Fn(f64) -> f64>(tail: F, delta: f64) -> Result<f64> {
    let target = 0.5 * delta;
    if tail(0.0) < target {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while tail(hi) >= target {
        hi *= 2.0;
        if !hi.is_finite() || hi > 1e300 {
            return Err(Error::Numeric(format!("tail never drops below {target}")));
        }
    }
    let mut lo = 0.0;
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if tail(mid) < target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bern(p0: f64, p1: f64) -> HypothesisPair {
        HypothesisPair::bernoulli(p0, p1).unwrap()
    }

    fn gauss(m0: f64, m1: f64) -> HypothesisPair {
        HypothesisPair::gaussian(m0, m1).unwrap()
    }

    #[test]
    fn log_ratio_examples() {
        let b = bern(0.2, 0.8);
        assert!((b.log_ratio(1.0).unwrap() - 4f64.ln()).abs() < 1e-12);
        assert!((b.log_ratio(0.0).unwrap() + 4f64.ln()).abs() < 1e-12);
        assert_eq!(gauss(0.0, 1.0).log_ratio(0.5).unwrap(), 0.0);
    }

    #[test]
    fn bernoulli_rejects_off_support() {
        let err = bern(0.2, 0.8).log_ratio_at(7, 0.5).unwrap_err();
        assert_eq!(err, Error::InvalidObservation { index: 7, value: 0.5 });
    }

    #[test]
    fn constructor_invariants() {
        assert!(HypothesisPair::bernoulli(0.3, 0.3).is_err());
        assert!(HypothesisPair::bernoulli(0.0, 0.3).is_err());
        assert!(HypothesisPair::bernoulli(0.3, 1.0).is_err());
        assert!(HypothesisPair::gaussian(0.0, 0.0).is_err());
        assert!(HypothesisPair::gaussian(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn delta_ell_examples() {
        assert!((bern(0.2, 0.8).delta_ell() - 16f64.ln()).abs() < 1e-12);
        assert!((bern(0.2, 0.4).delta_ell() - (2f64.ln() + (4.0f64 / 3.0).ln())).abs() < 1e-12);
        assert!((bern(0.2, 0.4).delta_ell() - 0.980_829).abs() < 1e-6);
        assert_eq!(gauss(0.0, 1.0).delta_ell(), f64::INFINITY);
    }

    #[test]
    fn a_delta_examples() {
        // 2(Φ⁻¹(0.975) + 0.5) with Φ⁻¹(0.975) = 1.959963984540054.
        let expected = 2.0 * (1.959_963_984_540_054 + 0.5);
        let a = gauss(0.0, 1.0).a_delta(0.05).unwrap();
        assert!((a - expected).abs() < 1e-10);
        assert!((a - 4.919_928).abs() < 1e-5);
        assert!((bern(0.2, 0.8).a_delta(0.05).unwrap() - 2.0 * 4f64.ln()).abs() < 1e-12);
        // Shift invariance.
        let shifted = gauss(3.0, 4.0).a_delta(0.05).unwrap();
        assert!((shifted - a).abs() < 1e-9);
    }

    #[test]
    fn a_delta_matches_bisection() {
        for pair in [gauss(0.0, 1.0), gauss(0.0, 0.5), gauss(2.0, -1.0), bern(0.2, 0.8), bern(0.2, 0.4)] {
            for delta in [0.01, 0.05, 0.2, 0.5] {
                let closed = pair.a_delta(delta).unwrap();
                let bis = pair.a_delta_bisection(delta).unwrap();
                assert!((closed - bis).abs() < 1e-6, "{pair:?} δ={delta}: {closed} vs {bis}");
            }
        }
    }

    #[test]
    fn a_delta_rejects_bad_delta() {
        for d in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(gauss(0.0, 1.0).a_delta(d).is_err());
        }
    }

    #[test]
    fn sensitivity_modes() {
        assert_eq!(gauss(0.0, 1.0).sensitivity(0.0), Err(Error::InfiniteSensitivity));
        assert!((bern(0.2, 0.8).sensitivity(0.0).unwrap() - 16f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn kl_constant_examples() {
        let k = bern(0.2, 0.8).kl_constants().unwrap();
        assert!((k.c - 0.6 * 4f64.ln()).abs() < 1e-12);
        assert!((k.c - 0.831_777).abs() < 1e-6);
        assert!((k.c_m - 0.192_745).abs() < 1e-6);
        let g = gauss(0.0, 1.0).kl_constants().unwrap();
        assert!((g.c - 0.5).abs() < 1e-9);
    }

    #[test]
    fn bernoulli_kl_matches_two_point_sum() {
        for (p0, p1) in [(0.2, 0.8), (0.2, 0.4), (0.05, 0.6), (0.9, 0.1)] {
            let pmf = |p: f64, x: u8| if x == 1 { p } else { 1.0 - p };
            let kl = |a: f64, b: f64| (0..2).map(|x| pmf(a, x) * (pmf(a, x) / pmf(b, x)).ln()).sum::<f64>();
            let mix = |x: u8| 0.5 * (pmf(p0, x) + pmf(p1, x));
            let klm = |a: f64| (0..2).map(|x| pmf(a, x) * (pmf(a, x) / mix(x)).ln()).sum::<f64>();
            let k = bern(p0, p1).kl_constants().unwrap();
            assert!((k.c - kl(p0, p1).min(kl(p1, p0))).abs() < 1e-12);
            assert!((k.c_m - klm(p0).min(klm(p1))).abs() < 1e-12);
        }
    }

    #[test]
    fn gaussian_cm_matches_trapezoid() {
        for mu in [0.25, 0.5, 1.0, 3.0] {
            let pair = gauss(0.0, mu);
            let h = 1e-3;
            let steps = ((mu + 24.0) / h) as usize;
            let mut acc = 0.0;
            for i in 0..=steps {
                let x = -12.0 + i as f64 * h;
                let p0 = (-0.5 * x * x).exp();
                let p1 = (-0.5 * (x - mu) * (x - mu)).exp();
                let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
                acc += w * p0 * (2.0 * p0 / (p0 + p1)).ln();
            }
            let trap = acc * h / (2.0 * std::f64::consts::PI).sqrt();
            let cm = pair.kl_constants().unwrap().c_m;
            assert!((cm - trap).abs() < 1e-7, "mu={mu}: {cm} vs {trap}");
            assert!(cm > 0.0 && cm <= LN_2);
        }
    }

    #[test]
    fn sampling_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let b = bern(0.2, 0.8);
        let n = 100_000;
        let mut ones = 0.0;
        for _ in 0..n {
            let x = b.sample(Regime::Pre, &mut rng);
            assert!(x == 0.0 || x == 1.0);
            ones += x;
        }
        assert!((ones / n as f64 - 0.2).abs() < 0.01);

        let g = gauss(0.0, 1.0);
        let xs: Vec<f64> = (0..n).map(|_| g.sample(Regime::Post, &mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
        assert!((mean - 1.0).abs() < 0.02);
        assert!((var - 1.0).abs() < 0.05);
    }

    #[test]
    fn sampling_is_reproducible() {
        let g = gauss(0.0, 1.0);
        let a: Vec<f64> = {
            let mut r = ChaCha8Rng::seed_from_u64(5);
            (0..10).map(|_| g.sample(Regime::Pre, &mut r)).collect()
        };
        let b: Vec<f64> = {
            let mut r = ChaCha8Rng::seed_from_u64(5);
            (0..10).map(|_| g.sample(Regime::Pre, &mut r)).collect()
        };
        assert_eq!(a, b);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn any_pair() -> impl Strategy<Value = HypothesisPair> {
            prop_oneof![
                (0.01f64..0.99, 0.01f64..0.99)
                    .prop_filter("distinct", |(a, b)| (a - b).abs() > 1e-3)
                    .prop_map(|(a, b)| HypothesisPair::bernoulli(a, b).unwrap()),
                (-5.0f64..5.0, -5.0f64..5.0)
                    .prop_filter("distinct", |(a, b)| (a - b).abs() > 1e-3)
                    .prop_map(|(a, b)| HypothesisPair::gaussian(a, b).unwrap()),
            ]
        }

        proptest! {
            #[test]
            fn log_ratio_antisymmetric(pair in any_pair(), g in -10.0f64..10.0, bit in any::<bool>()) {
                let x = match pair.kind() {
                    PairKind::Bernoulli { .. } => if bit { 1.0 } else { 0.0 },
                    PairKind::GaussianUnitVar { .. } => g,
                };
                let a = pair.log_ratio(x).unwrap();
                let b = pair.swapped().log_ratio(x).unwrap();
                prop_assert!((a + b).abs() <= 1e-12 * (1.0 + a.abs()));
            }

            #[test]
            fn a_delta_non_increasing(pair in any_pair(), d1 in 0.001f64..0.999, d2 in 0.001f64..0.999) {
                let (small, large) = if d1 < d2 { (d1, d2) } else { (d2, d1) };
                prop_assert!(pair.a_delta(large).unwrap() <= pair.a_delta(small).unwrap() + 1e-12);
            }

            #[test]
            fn c_m_in_range(pair in any_pair()) {
                let k = pair.kl_constants().unwrap();
                prop_assert!(k.c_m >= 0.0 && k.c_m <= LN_2);
                if let PairKind::GaussianUnitVar { mu0, mu1 } = pair.kind() {
                    prop_assert!((k.c - 0.5 * (mu1 - mu0).powi(2)).abs() < 1e-9);
                }
            }
        }
    }
}
