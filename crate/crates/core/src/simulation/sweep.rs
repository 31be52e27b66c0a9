use alloc::vec::Vec;

use crate::producibility::{depth_bound, Criterion};
use crate::spin_algebra::{shifted_ground, CollectiveMoments, SpinSector};
use crate::{Error, Result};

/// Moments of the ground state of `Jz² − Λ Jx` for `N` particles, mixed
/// with white noise: `ρ = (1−p) ρ_ground + p (𝟙/2)^{⊗N}`.
///
/// The maximally mixed state has zero means, `⟨Jz²⟩ = N/4` and
/// `⟨Jx²+Jy²⟩ = N/2`; every moment is affine in `p`. `Λ = ∞` is the
/// coherent state along `x`.
pub fn noisy_squeezed_moments(n: u32, big_lambda: f64, p: f64) -> Result<CollectiveMoments> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidArgument(alloc::format!("need even N ≥ 2, got {n}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange { what: "p", value: p, min: 0.0, max: 1.0 });
    }
    if !(big_lambda >= 0.0) {
        return Err(Error::OutOfRange { what: "Lambda", value: big_lambda, min: 0.0, max: f64::INFINITY });
    }
    let ideal = if big_lambda == 0.0 {
        CollectiveMoments::dicke(n)
    } else if big_lambda.is_infinite() {
        CollectiveMoments::coherent_x(n)
    } else {
        let sector = SpinSector::symmetric(n);
        let g = shifted_ground(sector, 0.0, big_lambda)?;
        let (jx, jz, jz2) = g.first_and_z_moments();
        CollectiveMoments {
            n_particles: n,
            mean_x: jx,
            mean_y: 0.0,
            mean_z: jz,
            second_perp: sector.casimir() - jz2,
            second_z: jz2,
        }
    };
    let nf = n as f64;
    let q = 1.0 - p;
    Ok(CollectiveMoments {
        n_particles: n,
        mean_x: q * ideal.mean_x,
        mean_y: q * ideal.mean_y,
        mean_z: q * ideal.mean_z,
        second_perp: q * ideal.second_perp + p * nf / 2.0,
        second_z: q * ideal.second_z + p * nf / 4.0,
    })
}

/// Detected depths of one noisy squeezed state under both criteria.
/// Depths are the largest violated group size (0 when nothing is detected).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepResult {
    pub lambda: f64,
    pub moments: CollectiveMoments,
    pub depth_new: u32,
    pub depth_sm: u32,
}

pub fn sweep_point(n: u32, big_lambda: f64, p: f64) -> Result<SweepResult> {
    let moments = noisy_squeezed_moments(n, big_lambda, p)?;
    Ok(SweepResult {
        lambda: big_lambda,
        moments,
        depth_new: depth_bound(&moments, Criterion::ClosedForm)?.violated_k,
        depth_sm: depth_bound(&moments, Criterion::SorensenMolmer)?.violated_k,
    })
}

pub fn compare_criteria_sweep(n: u32, lambda_grid: &[f64], p: f64) -> Result<Vec<SweepResult>> {
    lambda_grid.iter().map(|&l| sweep_point(n, l, p)).collect()
}
