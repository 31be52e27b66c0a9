use num_traits::Float;

use crate::{Error, Result};

/// Detection noise `σ(N) = √(σ0² + c²N)` for shots, and a white-noise
/// admixture `p` for state-level noise.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NoiseModel {
    pub sigma0: f64,
    pub trend_coeff: f64,
    pub p_white: f64,
}

impl NoiseModel {
    pub const NONE: Self = Self {
        sigma0: 0.0,
        trend_coeff: 0.0,
        p_white: 0.0,
    };

    pub fn new(sigma0: f64, trend_coeff: f64, p_white: f64) -> Result<Self> {
        let m = Self {
            sigma0,
            trend_coeff,
            p_white,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma0 >= 0.0) || !self.sigma0.is_finite() {
            return Err(Error::OutOfRange { what: "sigma0", value: self.sigma0, min: 0.0, max: f64::INFINITY });
        }
        if !(self.trend_coeff >= 0.0) || !self.trend_coeff.is_finite() {
            return Err(Error::OutOfRange { what: "trend_coeff", value: self.trend_coeff, min: 0.0, max: f64::INFINITY });
        }
        if !(0.0..=1.0).contains(&self.p_white) {
            return Err(Error::OutOfRange { what: "p_white", value: self.p_white, min: 0.0, max: 1.0 });
        }
        Ok(())
    }

    /// Detection-noise standard deviation at atom number `n`, in atoms.
    pub fn detection_std(&self, n: u32) -> f64 {
        (self.sigma0 * self.sigma0 + self.trend_coeff * self.trend_coeff * n as f64).sqrt()
    }
}
