
use crate::spin_algebra::{CollectiveMoments, SpinMoments};
use crate::{Error, Result};

/// Moments of one non-separable group of `k_n` particles.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GroupMoments {
    pub k_n: u32,
    pub mean_x: f64,
    pub mean_y: f64,
    pub mean_z: f64,
    pub second_perp: f64,
    pub second_z: f64,
}

impl GroupMoments {
    pub fn from_spin_moments(k_n: u32, m: &SpinMoments) -> Self {
        Self {
            k_n,
            mean_x: m.mean[0],
            mean_y: m.mean[1],
            mean_z: m.mean[2],
            second_perp: m.second_perp(),
            second_z: m.second[2][2],
        }
    }
}

impl From<CollectiveMoments> for GroupMoments {
    fn from(m: CollectiveMoments) -> Self {
        Self {
            k_n: m.n_particles,
            mean_x: m.mean_x,
            mean_y: m.mean_y,
            mean_z: m.mean_z,
            second_perp: m.second_perp,
            second_z: m.second_z,
        }
    }
}

/// Collective moments of a product of independent groups.
///
/// Variances of `Jz` add, first moments add, and `⟨Jx²+Jy²⟩` picks up the
/// cross terms `⟨jx⁽ᵐ⁾⟩⟨jx⁽ⁿ⁾⟩ + ⟨jy⁽ᵐ⁾⟩⟨jy⁽ⁿ⁾⟩` for `m ≠ n`.
pub fn aggregate_product(groups: &[GroupMoments]) -> Result<CollectiveMoments> {
    if groups.is_empty() {
        return Err(Error::InvalidArgument("no groups to aggregate".into()));
    }
    let mut n = 0u64;
    let (mut sx, mut sy, mut sz) = (0.0, 0.0, 0.0);
    let (mut sx2, mut sy2) = (0.0, 0.0);
    let mut perp = 0.0;
    let mut var_z = 0.0;
    for g in groups {
        n += u64::from(g.k_n);
        sx += g.mean_x;
        sy += g.mean_y;
        sz += g.mean_z;
        sx2 += g.mean_x * g.mean_x;
        sy2 += g.mean_y * g.mean_y;
        perp += g.second_perp;
        var_z += g.second_z - g.mean_z * g.mean_z;
    }
    let n_particles = u32::try_from(n)
        .map_err(|_| Error::InvalidArgument("particle count overflows u32".into()))?;
    Ok(CollectiveMoments {
        n_particles,
        mean_x: sx,
        mean_y: sy,
        mean_z: sz,
        second_perp: perp + (sx * sx - sx2) + (sy * sy - sy2),
        second_z: var_z.max(0.0) + sz * sz,
    })
}
