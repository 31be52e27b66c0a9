use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

use super::SpinSector;
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-10;

/// Pure state in one spin sector; `amplitudes[i]` multiplies `|j, j−i⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    sector: SpinSector,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Validated constructor: length must match and the state must be
    /// normalized.
    pub fn new(sector: SpinSector, amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::from_amplitudes_unchecked(sector, amplitudes)?;
        let norm_sq = state.norm_sq();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(state)
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized(sector: SpinSector, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized { norm_sq: norm });
        }
        let scale = 1.0 / norm.sqrt();
        amplitudes.iter_mut().for_each(|a| *a *= scale);
        Self::from_amplitudes_unchecked(sector, amplitudes)
    }

    /// Skips the normalization check. Only the length is validated.
    pub fn from_amplitudes_unchecked(
        sector: SpinSector,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self> {
        if amplitudes.len() != sector.dim() {
            return Err(Error::InvalidArgument(alloc::format!(
                "expected {} amplitudes for 2j = {}, got {}",
                sector.dim(),
                sector.twice_j(),
                amplitudes.len()
            )));
        }
        Ok(Self { sector, amplitudes })
    }

    pub fn from_real(sector: SpinSector, amplitudes: &[f64]) -> Result<Self> {
        Self::new(
            sector,
            amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
        )
    }

    /// Dicke state `|j, m⟩`.
    pub fn basis(sector: SpinSector, m: f64) -> Result<Self> {
        let index = sector.j() - m;
        if index < 0.0 || index.fract() != 0.0 || index as usize >= sector.dim() {
            return Err(Error::InvalidArgument(alloc::format!(
                "m = {m} is not a level of j = {}",
                sector.j()
            )));
        }
        let mut amps = alloc::vec![Complex64::new(0.0, 0.0); sector.dim()];
        amps[index as usize] = Complex64::new(1.0, 0.0);
        Ok(Self {
            sector,
            amplitudes: amps,
        })
    }

    /// Spin coherent state pointing along polar angle `theta`, azimuth `phi`.
    pub fn coherent(sector: SpinSector, theta: f64, phi: f64) -> Self {
        let dim = sector.dim();
        let twice_j = sector.twice_j() as usize;
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        // amplitude of m = j − i is sqrt(C(2j, i)) c^(2j−i) s^i e^{−i m φ}
        let ln_c = c.abs().ln();
        let ln_s = s.abs().ln();
        let mut ln_binom = 0.0;
        let amplitudes = (0..dim)
            .map(|i| {
                if i > 0 {
                    ln_binom += ((twice_j + 1 - i) as f64).ln() - (i as f64).ln();
                }
                let up = (twice_j - i) as f64;
                let down = i as f64;
                let mag = if (c == 0.0 && up > 0.0) || (s == 0.0 && down > 0.0) {
                    0.0
                } else {
                    let ln = 0.5 * ln_binom
                        + if up > 0.0 { up * ln_c } else { 0.0 }
                        + if down > 0.0 { down * ln_s } else { 0.0 };
                    let sign = if s < 0.0 && i % 2 == 1 { -1.0 } else { 1.0 };
                    sign * ln.exp()
                };
                Complex64::from_polar(mag, -sector.m(i) * phi)
            })
            .collect();
        Self { sector, amplitudes }
    }

    pub fn sector(&self) -> SpinSector {
        self.sector
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq() - 1.0).abs() <= NORM_TOL
    }

    /// Applies `exp(−i φ jz)`.
    pub fn rotate_z(&self, phi: f64) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| a * Complex64::from_polar(1.0, -self.sector.m(i) * phi))
            .collect();
        Self {
            sector: self.sector,
            amplitudes,
        }
    }
}
