use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::stream_rng;
use crate::producibility::{aggregate_product, GroupMoments};
use crate::spin_algebra::{euler_rotation, ground_state, CollectiveMoments, SpinMoments, SpinSector, StateVector};
use crate::{Error, Result};

/// How group states are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ProducibleMode {
    /// Uniform (Haar) pure states of each group's symmetric sector; fills
    /// the interior of the allowed region.
    HaarSymmetric,
    /// Squeezed ground states at a random `λ`, rotated; lands on and near
    /// the boundary.
    SqueezedRotated,
}

fn haar_state(sector: SpinSector, rng: &mut ChaCha8Rng) -> Result<StateVector> {
    let amps: Vec<Complex64> = (0..sector.dim())
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    StateVector::normalized(sector, amps)
}

/// Group sizes `k, k, …, k, N mod k`.
fn group_sizes(n: u32, k: u32) -> impl Iterator<Item = u32> {
    let full = n / k;
    let rest = n % k;
    core::iter::repeat(k).take(full as usize).chain((rest > 0).then_some(rest))
}

/// One random product of groups of at most `k` particles, drawn from
/// stream `index` of `seed`.
pub fn random_producible_state(
    n: u32,
    k: u32,
    mode: ProducibleMode,
    seed: u64,
    index: u64,
) -> Result<CollectiveMoments> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(alloc::format!("k = {k} outside 1..={n}")));
    }
    let mut rng = stream_rng(seed, index);
    let groups: Vec<GroupMoments> = match mode {
        ProducibleMode::HaarSymmetric => group_sizes(n, k)
            .map(|kn| {
                let s = haar_state(SpinSector::symmetric(kn), &mut rng)?;
                Ok(GroupMoments::from_spin_moments(kn, &SpinMoments::from_state(&s)))
            })
            .collect::<Result<_>>()?,
        ProducibleMode::SqueezedRotated => {
            // one λ per state (log-uniform on [1e-3, 1e3], or exactly 0),
            // a common rotation, and a small per-group azimuthal spread
            let lambda = if rng.random::<f64>() < 0.1 {
                0.0
            } else {
                10f64.powf(rng.random_range(-3.0..3.0))
            };
            let tilt = if rng.random::<bool>() { 0.0 } else { rng.random_range(0.0..0.3) };
            let common = euler_rotation(
                rng.random_range(0.0..core::f64::consts::TAU),
                tilt,
                0.0,
            );
            let spread = 10f64.powf(rng.random_range(-4.0..0.0));
            let mut cache: Vec<(u32, SpinMoments)> = Vec::with_capacity(2);
            group_sizes(n, k)
                .map(|kn| {
                    let base = match cache.iter().find(|(s, _)| *s == kn) {
                        Some((_, m)) => *m,
                        None => {
                            let g = ground_state(SpinSector::symmetric(kn), lambda)?;
                            let m = SpinMoments::from_state(&g.state);
                            cache.push((kn, m));
                            m
                        }
                    };
                    let phi = spread * rng.sample::<f64, _>(StandardNormal);
                    let m = base.rotated(&euler_rotation(phi, 0.0, 0.0)).rotated(&common);
                    Ok(GroupMoments::from_spin_moments(kn, &m))
                })
                .collect::<Result<_>>()?
        }
    };
    aggregate_product(&groups)
}

/// `n_states` independent draws; draw `i` uses stream `i`.
pub fn random_producible_moments(
    n: u32,
    k: u32,
    n_states: usize,
    mode: ProducibleMode,
    seed: u64,
) -> Result<Vec<CollectiveMoments>> {
    (0..n_states as u64)
        .map(|i| random_producible_state(n, k, mode, seed, i))
        .collect()
}
