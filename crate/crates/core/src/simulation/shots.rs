use alloc::vec::Vec;
use num_traits::Float;
use rand::Rng;
use rand_distr::{Binomial, Distribution, Normal};

use super::{stream_rng, NoiseModel};
use crate::spin_algebra::{rotated_dicke_distribution, SpinSector};
use crate::{Error, Result};

/// Measurement basis of a shot: `z`, or an in-plane direction at a
/// uniformly random azimuth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Basis {
    Z,
    Alpha,
}

/// Populations of the two levels in one experimental repetition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShotRecord {
    pub shot_id: u64,
    pub basis: Basis,
    pub n_plus: u32,
    pub n_minus: u32,
}

impl ShotRecord {
    /// Spin projection `(n₊ − n₋)/2`.
    pub fn value(&self) -> f64 {
        (f64::from(self.n_plus) - f64::from(self.n_minus)) / 2.0
    }

    pub fn n_particles(&self) -> u32 {
        self.n_plus + self.n_minus
    }
}

/// Largest spin `J` sampled from the exact rotated-Dicke distribution;
/// larger spins use the arcsine limit.
pub const ALPHA_EXACT_MAX_J: u32 = 4000;

/// Converts a real projection into counts: `2·value` is rounded to the
/// nearest integer with the parity of `n` and clipped to `[−n, n]`.
fn to_record(shot_id: u64, basis: Basis, n: u32, value: f64) -> ShotRecord {
    let nf = f64::from(n);
    let twice = ((2.0 * value - nf) / 2.0).round() * 2.0 + nf;
    let twice = twice.clamp(-nf, nf);
    let n_plus = ((nf + twice) / 2.0) as u32;
    ShotRecord {
        shot_id,
        basis,
        n_plus,
        n_minus: n - n_plus,
    }
}

fn normal(std: f64) -> Option<Normal<f64>> {
    (std > 0.0).then(|| Normal::new(0.0, std).expect("finite positive std"))
}

/// Shots of the Dicke state `|N/2, 0⟩`.
///
/// The first `n_shots − round(alpha_fraction·n_shots)` shots are z-basis
/// (ideal outcome 0), the rest in-plane. In-plane outcomes are drawn from
/// `|d^J_{m0}(π/2)|²`; the azimuth does not matter by symmetry. Detection
/// noise is added before rounding to counts, so `n₊ + n₋ = N` always.
pub fn sample_dicke_shots(
    n: u32,
    n_shots: usize,
    alpha_fraction: f64,
    noise: &NoiseModel,
    seed: u64,
) -> Result<Vec<ShotRecord>> {
    if n % 2 == 1 {
        return Err(Error::InvalidArgument(alloc::format!("Dicke state |N/2,0⟩ needs even N, got {n}")));
    }
    if n_shots == 0 {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    if !(0.0..=1.0).contains(&alpha_fraction) {
        return Err(Error::OutOfRange { what: "alpha_fraction", value: alpha_fraction, min: 0.0, max: 1.0 });
    }
    noise.validate()?;
    let n_alpha = (alpha_fraction * n_shots as f64).round() as usize;
    let n_z = n_shots - n_alpha;
    let det = normal(noise.detection_std(n));
    let mut out = Vec::with_capacity(n_shots);

    let mut rng = stream_rng(seed, 0);
    for id in 0..n_z {
        let v = det.map_or(0.0, |d| d.sample(&mut rng));
        out.push(to_record(id as u64, Basis::Z, n, v));
    }

    let mut rng = stream_rng(seed, 1);
    let j = n / 2;
    let sector = SpinSector::symmetric(n);
    let cdf: Option<Vec<f64>> = if j <= ALPHA_EXACT_MAX_J {
        let p = rotated_dicke_distribution(sector, core::f64::consts::FRAC_PI_2)?;
        let mut acc = 0.0;
        Some(p.iter().map(|q| { acc += q; acc }).collect())
    } else {
        None
    };
    for id in n_z..n_shots {
        let m = match &cdf {
            Some(cdf) => {
                let u: f64 = rng.random::<f64>() * cdf[cdf.len() - 1];
                let i = cdf.partition_point(|&c| c < u).min(cdf.len() - 1);
                sector.m(i)
            }
            None => f64::from(j) * (core::f64::consts::PI * rng.random::<f64>()).cos(),
        };
        let v = m + det.map_or(0.0, |d| d.sample(&mut rng));
        out.push(to_record(id as u64, Basis::Alpha, n, v));
    }
    Ok(out)
}

/// z-basis shots of a coherent state on the equator: `n₊ ~ Binomial(N, 1/2)`
/// plus detection noise.
pub fn sample_coherent_shots(n: u32, n_shots: usize, noise: &NoiseModel, seed: u64) -> Result<Vec<ShotRecord>> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    noise.validate()?;
    let binom = Binomial::new(u64::from(n), 0.5).expect("valid binomial");
    let det = normal(noise.detection_std(n));
    let mut rng = stream_rng(seed, 0);
    Ok((0..n_shots)
        .map(|id| {
            let n_plus = binom.sample(&mut rng) as f64;
            let v = n_plus - f64::from(n) / 2.0 + det.map_or(0.0, |d| d.sample(&mut rng));
            to_record(id as u64, Basis::Z, n, v)
        })
        .collect())
}

/// Coherent state along `x`: z-basis shots as in [`sample_coherent_shots`],
/// then in-plane shots at a uniformly random azimuth `α`, where each atom
/// independently reads `+` with probability `(1 + cos α)/2`.
pub fn sample_coherent_mixed_shots(
    n: u32,
    n_shots: usize,
    alpha_fraction: f64,
    noise: &NoiseModel,
    seed: u64,
) -> Result<Vec<ShotRecord>> {
    if !(0.0..=1.0).contains(&alpha_fraction) {
        return Err(Error::OutOfRange { what: "alpha_fraction", value: alpha_fraction, min: 0.0, max: 1.0 });
    }
    let n_alpha = (alpha_fraction * n_shots as f64).round() as usize;
    let n_z = n_shots - n_alpha;
    let mut out = sample_coherent_shots(n, n_z, noise, seed)?;
    let det = normal(noise.detection_std(n));
    let mut rng = stream_rng(seed, 1);
    for id in n_z..n_shots {
        let alpha = core::f64::consts::PI * rng.random::<f64>();
        let p = ((1.0 + alpha.cos()) / 2.0).clamp(0.0, 1.0);
        let binom = Binomial::new(u64::from(n), p).expect("valid binomial");
        let v = binom.sample(&mut rng) as f64 - f64::from(n) / 2.0 + det.map_or(0.0, |d| d.sample(&mut rng));
        out.push(to_record(id as u64, Basis::Alpha, n, v));
    }
    Ok(out)
}
