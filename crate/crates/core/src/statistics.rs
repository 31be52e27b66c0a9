//! Unbiased second-moment estimation with error bars, and depth
//! certification over a confidence ellipse.
//!
//! With `m_r = (1/n) Σ (x_i − m1)^r`, the estimator `μ̂₂ = n/(n−1)·m2` is
//! unbiased for the population variance, and
//!
//! ```text
//! var̂(μ̂₂) = n m4 / ((n−3)(n−2)) − n(n²−3) m2² / ((n−3)(n−2)(n−1)²)
//! ```
//!
//! is an unbiased estimate of its variance (the SMVE).

use num_traits::Float;

use crate::producibility::{evaluate, Criterion, DepthVerdict};
use crate::spin_algebra::CollectiveMoments;
use crate::{depth_bound, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SampleMoments {
    pub n: usize,
    pub m1: f64,
    pub m2: f64,
    pub m4: f64,
}

pub fn sample_moments(data: &[f64]) -> Result<SampleMoments> {
    if data.is_empty() {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    let n = data.len() as f64;
    let m1 = data.iter().sum::<f64>() / n;
    let (mut m2, mut m4) = (0.0, 0.0);
    for x in data {
        let d2 = (x - m1) * (x - m1);
        m2 += d2;
        m4 += d2 * d2;
    }
    Ok(SampleMoments {
        n: data.len(),
        m1,
        m2: m2 / n,
        m4: m4 / n,
    })
}

/// `μ̂₂ = n/(n−1)·m2`.
pub fn unbiased_second_moment(s: &SampleMoments) -> Result<f64> {
    if s.n < 2 {
        return Err(Error::InsufficientSamples { needed: 2, got: s.n });
    }
    let n = s.n as f64;
    Ok(n / (n - 1.0) * s.m2)
}

/// Unbiased estimate of `var(μ̂₂)`; can come out negative for small `n`.
pub fn smve_raw(s: &SampleMoments) -> Result<f64> {
    if s.n < 4 {
        return Err(Error::InsufficientSamples { needed: 4, got: s.n });
    }
    let n = s.n as f64;
    let a = n / ((n - 3.0) * (n - 2.0));
    let b = n * (n * n - 3.0) / ((n - 3.0) * (n - 2.0) * (n - 1.0) * (n - 1.0));
    Ok(a * s.m4 - b * s.m2 * s.m2)
}

/// [`smve_raw`] floored at 0. The flag reports whether the raw value was
/// negative.
pub fn smve(s: &SampleMoments) -> Result<(f64, bool)> {
    let raw = smve_raw(s)?;
    Ok(if raw < 0.0 { (0.0, true) } else { (raw, false) })
}

/// An estimated quantity with the estimated variance of the estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MomentEstimate {
    pub value: f64,
    pub variance_of_estimate: f64,
    pub n: usize,
    /// A negative raw value (of the estimate or its variance) was set to 0.
    pub floored: bool,
}

impl MomentEstimate {
    pub fn std(&self) -> f64 {
        self.variance_of_estimate.sqrt()
    }
}

/// `(ΔJz)²` from z-basis shots with the detection-noise variance `σ_det²`
/// subtracted; the subtraction is treated as exact.
pub fn estimate_jz_variance(shots: &[f64], sigma_det: f64) -> Result<MomentEstimate> {
    if !(sigma_det >= 0.0) {
        return Err(Error::OutOfRange {
            what: "sigma_det",
            value: sigma_det,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    if shots.len() < 4 {
        return Err(Error::InsufficientSamples { needed: 4, got: shots.len() });
    }
    let s = sample_moments(shots)?;
    let raw = unbiased_second_moment(&s)? - sigma_det * sigma_det;
    let (var, var_floored) = smve(&s)?;
    Ok(MomentEstimate {
        value: raw.max(0.0),
        variance_of_estimate: var,
        n: s.n,
        floored: raw < 0.0 || var_floored,
    })
}

/// `⟨Jx²+Jy²⟩` from shots along uniformly random in-plane directions.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct JeffEstimate {
    /// `2·mean(J_α²)` and the variance of that mean.
    pub estimate: MomentEstimate,
    /// Solves `J_eff (J_eff + 1) = value`, clamped to `[0, N/2]`.
    pub j_eff: f64,
    /// The sample mean of `J_α` is more than 3 standard errors from 0,
    /// so the shots are probably not phase-averaged.
    pub mean_offset: bool,
}

pub fn estimate_jeff_sq(shots: &[f64], n_particles: f64) -> Result<JeffEstimate> {
    if shots.len() < 4 {
        return Err(Error::InsufficientSamples { needed: 4, got: shots.len() });
    }
    let n = shots.len() as f64;
    let s = sample_moments(shots)?;
    let mean_sq = shots.iter().map(|x| x * x).sum::<f64>() / n;
    let var_sq = shots
        .iter()
        .map(|x| (x * x - mean_sq) * (x * x - mean_sq))
        .sum::<f64>()
        / (n - 1.0);
    let value = 2.0 * mean_sq;
    let j_eff = ((-1.0 + (1.0 + 4.0 * value).sqrt()) / 2.0).clamp(0.0, (n_particles / 2.0).max(0.0));
    Ok(JeffEstimate {
        estimate: MomentEstimate {
            value,
            variance_of_estimate: 4.0 * var_sq / n,
            n: shots.len(),
            floored: false,
        },
        j_eff,
        mean_offset: s.m1.abs() > 3.0 * (s.m2 / n).sqrt(),
    })
}

/// Measured point in the `(x_norm, var_z)` plane with Gaussian errors.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EllipsePoint {
    pub x_norm: f64,
    pub x_std: f64,
    pub var_z: f64,
    pub var_std: f64,
    /// In `[-1, 1]`.
    pub correlation: f64,
}

const ELLIPSE_POINTS: usize = 256;

fn unpolarized_clamped(n: u32, x_norm: f64, var_z: f64) -> CollectiveMoments {
    CollectiveMoments::unpolarized(n, x_norm.max(0.0), var_z.max(0.0))
}

/// Worst-case depth over the `n_sigma` confidence ellipse around `point`.
///
/// The ellipse boundary is sampled at 256 angles; negative coordinates are
/// set to 0.
pub fn depth_with_confidence(
    point: &EllipsePoint,
    n_sigma: f64,
    n_particles: u32,
    criterion: Criterion,
) -> Result<DepthVerdict> {
    if !(n_sigma >= 0.0) || !n_sigma.is_finite() {
        return Err(Error::OutOfRange {
            what: "n_sigma",
            value: n_sigma,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    if !(point.x_std >= 0.0 && point.var_std >= 0.0) || !(point.correlation.abs() <= 1.0) {
        return Err(Error::InvalidArgument("ellipse needs std ≥ 0 and |correlation| ≤ 1".into()));
    }
    let center = unpolarized_clamped(n_particles, point.x_norm, point.var_z);
    let mut worst = depth_bound(&center, criterion)?;
    let (sx, sv) = (n_sigma * point.x_std, n_sigma * point.var_std);
    if sx == 0.0 && sv == 0.0 {
        return Ok(worst);
    }
    // x = x0 + sx cos t, v = v0 + sv (ρ cos t + √(1−ρ²) sin t)
    let rho = point.correlation;
    let rho_c = (1.0 - rho * rho).max(0.0).sqrt();
    for i in 0..ELLIPSE_POINTS {
        let t = 2.0 * core::f64::consts::PI * i as f64 / ELLIPSE_POINTS as f64;
        let (s, c) = (t.sin(), t.cos());
        let m = unpolarized_clamped(
            n_particles,
            point.x_norm + sx * c,
            point.var_z + sv * (rho * c + rho_c * s),
        );
        // a point still violated at the current worst k cannot lower it
        if worst.violated_k > 0 && evaluate(criterion, worst.violated_k, &m)?.violated {
            continue;
        }
        let v = depth_bound(&m, criterion)?;
        if v.violated_k < worst.violated_k
            || (v.violated_k == worst.violated_k && v.margin < worst.margin)
        {
            worst = v;
        }
    }
    Ok(worst)
}

/// `10 log10(ratio)`.
pub fn to_decibels(ratio: f64) -> Result<f64> {
    if !(ratio > 0.0) {
        return Err(Error::OutOfRange {
            what: "ratio",
            value: ratio,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    Ok(10.0 * ratio.log10())
}

pub fn from_decibels(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_to_five() {
        let s = sample_moments(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!((s.m1, s.m2), (3.0, 2.0));
        assert!((s.m4 - 6.8).abs() < 1e-14);
        assert_eq!(unbiased_second_moment(&s).unwrap(), 2.5);
        let (v, floored) = smve(&s).unwrap();
        assert!((v - 1.083_333_333_333_333).abs() < 1e-12, "{v}");
        assert!(!floored);
    }

    #[test]
    fn two_points() {
        let s = sample_moments(&[-1.0, 1.0]).unwrap();
        assert_eq!((s.m1, s.m2, s.m4), (0.0, 1.0, 1.0));
        let s = sample_moments(&[0.0, 1.0]).unwrap();
        assert_eq!(unbiased_second_moment(&s).unwrap(), 0.5);
        assert!(smve(&s).is_err());
    }

    #[test]
    fn constant_sample() {
        let s = sample_moments(&[2.5; 6]).unwrap();
        assert_eq!((s.m2, s.m4), (0.0, 0.0));
        assert_eq!(unbiased_second_moment(&s).unwrap(), 0.0);
        assert_eq!(smve(&s).unwrap(), (0.0, false));
    }

    #[test]
    fn empty_and_tiny_samples() {
        assert!(sample_moments(&[]).is_err());
        assert!(unbiased_second_moment(&sample_moments(&[1.0]).unwrap()).is_err());
        assert!(estimate_jz_variance(&[1.0, 2.0, 3.0], 0.0).is_err());
        assert!(estimate_jeff_sq(&[1.0, 2.0, 3.0], 10.0).is_err());
    }

    #[test]
    fn noise_subtraction() {
        let data = [1.0, -1.0, 1.0, -1.0];
        let raw = estimate_jz_variance(&data, 0.0).unwrap();
        assert!((raw.value - 4.0 / 3.0).abs() < 1e-15);
        let full = estimate_jz_variance(&data, (4.0f64 / 3.0).sqrt()).unwrap();
        assert!(full.value.abs() < 1e-12);
        let over = estimate_jz_variance(&data, 2.0).unwrap();
        assert_eq!(over.value, 0.0);
        assert!(over.floored);
    }

    #[test]
    fn jeff_limits() {
        let z = estimate_jeff_sq(&[0.0; 5], 10.0).unwrap();
        assert_eq!(z.estimate.value, 0.0);
        assert_eq!(z.j_eff, 0.0);
        // value = J_max² → J_eff = (−1 + √(1 + 4 J_max²))/2
        let jm: f64 = 5.0;
        let a = jm / 2f64.sqrt();
        let e = estimate_jeff_sq(&[a, -a, a, -a], 2.0 * jm).unwrap();
        assert!((e.estimate.value - jm * jm).abs() < 1e-12);
        assert!((e.j_eff - (-1.0 + (1.0 + 4.0 * jm * jm).sqrt()) / 2.0).abs() < 1e-12);
        assert!(!e.mean_offset);
    }

    #[test]
    fn decibels() {
        assert_eq!(to_decibels(1.0).unwrap(), 0.0);
        assert!((to_decibels(0.0724).unwrap() + 11.4).abs() < 0.05);
        assert!((to_decibels(0.05754).unwrap() + 12.4).abs() < 0.005);
        assert!(to_decibels(0.0).is_err());
        assert!((from_decibels(to_decibels(0.3).unwrap()) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn zero_width_ellipse_is_the_center() {
        let p = EllipsePoint {
            x_norm: 1.0005,
            x_std: 0.0,
            var_z: 180.0,
            var_std: 0.0,
            correlation: 0.0,
        };
        let c = depth_with_confidence(&p, 2.0, 8000, Criterion::ClosedForm).unwrap();
        let d = depth_bound(&CollectiveMoments::unpolarized(8000, 1.0005, 180.0), Criterion::ClosedForm).unwrap();
        assert_eq!(c, d);
    }
}
