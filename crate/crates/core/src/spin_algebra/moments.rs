use num_complex::Complex64;
use num_traits::Float;

use super::{SpinSector, StateVector};
use crate::{Error, Result};

/// First and second moments of the collective spin of `N` particles.
///
/// `second_perp = ⟨Jx²+Jy²⟩`, `second_z = ⟨Jz²⟩`; means are in spin units.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CollectiveMoments {
    pub n_particles: u32,
    pub mean_x: f64,
    pub mean_y: f64,
    pub mean_z: f64,
    pub second_perp: f64,
    pub second_z: f64,
}

impl CollectiveMoments {
    /// `J_max = N/2`.
    pub fn j_max(&self) -> f64 {
        self.n_particles as f64 / 2.0
    }

    /// `(ΔJz)²`.
    pub fn var_z(&self) -> f64 {
        self.second_z - self.mean_z * self.mean_z
    }

    /// `⟨Jx⟩² + ⟨Jy⟩²`.
    pub fn polarization_sq(&self) -> f64 {
        self.mean_x * self.mean_x + self.mean_y * self.mean_y
    }

    /// `⟨Jx²+Jy²⟩ / J_max²`.
    pub fn x_norm(&self) -> f64 {
        let jm = self.j_max();
        self.second_perp / (jm * jm)
    }

    /// Moments of a state with `⟨J⟩ = 0` located at `(x_norm, var_z)`.
    pub fn unpolarized(n_particles: u32, x_norm: f64, var_z: f64) -> Self {
        let jm = n_particles as f64 / 2.0;
        Self {
            n_particles,
            mean_x: 0.0,
            mean_y: 0.0,
            mean_z: 0.0,
            second_perp: x_norm * jm * jm,
            second_z: var_z,
        }
    }

    /// Ideal symmetric Dicke state `|N/2, 0⟩` (`N` even).
    pub fn dicke(n_particles: u32) -> Self {
        let jm = n_particles as f64 / 2.0;
        Self {
            second_perp: jm * (jm + 1.0),
            ..Self::unpolarized(n_particles, 0.0, 0.0)
        }
    }

    /// Fully polarized coherent state along +x.
    pub fn coherent_x(n_particles: u32) -> Self {
        let jm = n_particles as f64 / 2.0;
        Self {
            n_particles,
            mean_x: jm,
            mean_y: 0.0,
            mean_z: 0.0,
            second_perp: jm * jm + jm / 2.0,
            second_z: jm / 2.0,
        }
    }

    /// Checks the physical moment inequalities.
    pub fn validate(&self) -> Result<()> {
        const TOL: f64 = 1e-9;
        let jm = self.j_max();
        let fields = [
            self.mean_x,
            self.mean_y,
            self.mean_z,
            self.second_perp,
            self.second_z,
        ];
        if self.n_particles == 0 || fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("moments must be finite with N ≥ 1".into()));
        }
        let scale = 1.0 + jm * (jm + 1.0);
        if self.second_z < self.mean_z * self.mean_z - TOL * scale {
            return Err(Error::InvalidArgument("⟨Jz²⟩ < ⟨Jz⟩²".into()));
        }
        if self.second_perp < self.polarization_sq() - TOL * scale {
            return Err(Error::InvalidArgument("⟨Jx²+Jy²⟩ < ⟨Jx⟩²+⟨Jy⟩²".into()));
        }
        if self.second_perp + self.second_z > jm * (jm + 1.0) + TOL * scale {
            return Err(Error::InvalidArgument("⟨J²⟩ exceeds J_max(J_max+1)".into()));
        }
        Ok(())
    }
}

/// Full first- and second-moment data of a spin state: `mean[a] = ⟨j_a⟩`
/// and `second[a][b] = ⟨{j_a, j_b}⟩/2` for `a, b ∈ {x, y, z}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinMoments {
    pub mean: [f64; 3],
    pub second: [[f64; 3]; 3],
}

impl SpinMoments {
    pub fn from_state(state: &StateVector) -> Self {
        let sector = state.sector();
        let c = state.amplitudes();
        let dim = sector.dim();
        let mut jz = 0.0;
        let mut jz2 = 0.0;
        let mut raise = Complex64::new(0.0, 0.0); // ⟨j₊⟩
        let mut raise_sq = Complex64::new(0.0, 0.0); // ⟨j₊²⟩
        let mut raise_z = Complex64::new(0.0, 0.0); // ⟨{j₊, jz}⟩
        for i in 0..dim {
            let m = sector.m(i);
            let p = c[i].norm_sqr();
            jz += m * p;
            jz2 += m * m * p;
            if i >= 1 {
                // j₊|m⟩ = a_m |m+1⟩, and |m+1⟩ sits at index i−1
                let a = sector.raising(m);
                let cc = c[i - 1].conj() * c[i];
                raise += cc * a;
                raise_z += cc * (a * (2.0 * m + 1.0));
                if i >= 2 {
                    let a2 = sector.raising(m + 1.0);
                    raise_sq += c[i - 2].conj() * c[i] * (a * a2);
                }
            }
        }
        let perp = sector.casimir() - jz2;
        let xx = 0.5 * (perp + raise_sq.re);
        let yy = 0.5 * (perp - raise_sq.re);
        let xy = 0.5 * raise_sq.im;
        let xz = 0.5 * raise_z.re;
        let yz = 0.5 * raise_z.im;
        Self {
            mean: [raise.re, raise.im, jz],
            second: [[xx, xy, xz], [xy, yy, yz], [xz, yz, jz2]],
        }
    }

    /// Moments of `U ρ U†` where `U` implements the rotation matrix `r`
    /// acting on spin vectors.
    pub fn rotated(&self, r: &[[f64; 3]; 3]) -> Self {
        let mut mean = [0.0; 3];
        let mut second = [[0.0; 3]; 3];
        for a in 0..3 {
            mean[a] = (0..3).map(|b| r[a][b] * self.mean[b]).sum();
        }
        for a in 0..3 {
            for b in 0..3 {
                let mut acc = 0.0;
                for c in 0..3 {
                    for d in 0..3 {
                        acc += r[a][c] * self.second[c][d] * r[b][d];
                    }
                }
                second[a][b] = acc;
            }
        }
        Self { mean, second }
    }

    /// `⟨jx²+jy²⟩`.
    pub fn second_perp(&self) -> f64 {
        self.second[0][0] + self.second[1][1]
    }

    pub fn var_z(&self) -> f64 {
        self.second[2][2] - self.mean[2] * self.mean[2]
    }
}

/// Rotation matrix `Rz(α) Ry(β) Rz(γ)`.
pub fn euler_rotation(alpha: f64, beta: f64, gamma: f64) -> [[f64; 3]; 3] {
    let rz = |t: f64| {
        let (s, c) = (t.sin(), t.cos());
        [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
    };
    let (sb, cb) = (beta.sin(), beta.cos());
    let ry = [[cb, 0.0, sb], [0.0, 1.0, 0.0], [-sb, 0.0, cb]];
    mat_mul(&mat_mul(&rz(alpha), &ry), &rz(gamma))
}

fn mat_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Collective moments of a pure state of `n_particles` spin-1/2 particles
/// living in `state.sector()` (for a fully symmetric state `2j = N`).
pub fn moments_of_state(state: &StateVector, n_particles: u32) -> Result<CollectiveMoments> {
    let sector: SpinSector = state.sector();
    if sector.twice_j() > n_particles || (n_particles - sector.twice_j()) % 2 != 0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "sector 2j = {} is not reachable with N = {n_particles}",
            sector.twice_j()
        )));
    }
    if !state.is_normalized() {
        return Err(Error::NotNormalized {
            norm_sq: state.norm_sq(),
        });
    }
    let m = SpinMoments::from_state(state);
    Ok(CollectiveMoments {
        n_particles,
        mean_x: m.mean[0],
        mean_y: m.mean[1],
        mean_z: m.mean[2],
        second_perp: m.second_perp(),
        second_z: m.second[2][2],
    })
}
