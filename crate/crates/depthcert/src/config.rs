use std::path::{Path, PathBuf};

use depthcert_core::Criterion;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Atom number used by the analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawParticleNumber", into = "RawParticleNumber")]
pub enum ParticleNumber {
    Fixed(u32),
    /// `n_plus + n_minus` of each shot; the analysis uses their (rounded) mean.
    PerShot,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawParticleNumber {
    Fixed(u32),
    Tag(String),
}

impl TryFrom<RawParticleNumber> for ParticleNumber {
    type Error = String;

    fn try_from(raw: RawParticleNumber) -> std::result::Result<Self, String> {
        match raw {
            RawParticleNumber::Fixed(n) => Ok(ParticleNumber::Fixed(n)),
            RawParticleNumber::Tag(s) if s == "per-shot" => Ok(ParticleNumber::PerShot),
            RawParticleNumber::Tag(s) => Err(format!("n_particles must be an integer or \"per-shot\", got {s:?}")),
        }
    }
}

impl From<ParticleNumber> for RawParticleNumber {
    fn from(n: ParticleNumber) -> Self {
        match n {
            ParticleNumber::Fixed(n) => RawParticleNumber::Fixed(n),
            ParticleNumber::PerShot => RawParticleNumber::Tag("per-shot".into()),
        }
    }
}

fn default_n_sigma() -> f64 {
    2.0
}

fn default_criterion() -> Criterion {
    Criterion::ClosedForm
}

/// Settings for `depth`. Loaded from TOML or JSON; unknown keys are errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(alias = "N")]
    pub n_particles: ParticleNumber,
    /// Detection-noise baseline in atoms; `σ_det² = sigma_det² + trend_coeff²·N`
    /// is subtracted from the z-basis variance.
    #[serde(default)]
    pub sigma_det: f64,
    #[serde(default)]
    pub trend_coeff: f64,
    #[serde(default = "default_n_sigma")]
    pub n_sigma: f64,
    #[serde(default = "default_criterion")]
    pub criterion: Criterion,
    #[serde(default)]
    pub seed: u64,
    /// Correlation of the `(x_norm, var_z)` errors.
    #[serde(default)]
    pub correlation: f64,
    /// Keep only shots in the most populated atom-number bin of this width.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bin_width: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl AnalysisConfig {
    pub fn new(n_particles: ParticleNumber) -> Self {
        Self {
            n_particles,
            sigma_det: 0.0,
            trend_coeff: 0.0,
            n_sigma: default_n_sigma(),
            criterion: default_criterion(),
            seed: 0,
            correlation: 0.0,
            bin_width: None,
            output_dir: None,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let cfg: Self = if is_json {
            serde_json::from_str(&text).map_err(|e| config_error(path, e.to_string()))?
        } else {
            toml::from_str(&text).map_err(|e| config_error(path, e.to_string()))?
        };
        cfg.validate().map_err(|m| config_error(path, m))?;
        Ok(cfg)
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        let nonneg = |name: &str, v: f64| {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(format!("{name} must be finite and ≥ 0, got {v}"))
            }
        };
        if self.n_particles == ParticleNumber::Fixed(0) {
            return Err("n_particles must be at least 1".into());
        }
        nonneg("sigma_det", self.sigma_det)?;
        nonneg("trend_coeff", self.trend_coeff)?;
        if !(self.n_sigma > 0.0 && self.n_sigma.is_finite()) {
            return Err(format!("n_sigma must be finite and > 0, got {}", self.n_sigma));
        }
        if !(self.correlation.abs() <= 1.0) {
            return Err(format!("correlation must lie in [-1, 1], got {}", self.correlation));
        }
        if self.bin_width == Some(0) {
            return Err("bin_width must be at least 1".into());
        }
        Ok(())
    }

    /// Detection-noise variance at atom number `n`.
    pub fn detection_variance(&self, n: f64) -> f64 {
        self.sigma_det * self.sigma_det + self.trend_coeff * self.trend_coeff * n
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex_digest(&bytes)
    }
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn config_error(path: &Path, message: String) -> Error {
    Error::Config {
        path: path.to_path_buf(),
        message,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_with_defaults() {
        let c: AnalysisConfig = toml::from_str("n_particles = 8000\nsigma_det = 10.9\n").unwrap();
        assert_eq!(c.n_particles, ParticleNumber::Fixed(8000));
        assert_eq!(c.n_sigma, 2.0);
        assert_eq!(c.criterion, Criterion::ClosedForm);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn per_shot_and_alias() {
        let c: AnalysisConfig = serde_json::from_str(r#"{"N": "per-shot", "criterion": "tangent"}"#).unwrap();
        assert_eq!(c.n_particles, ParticleNumber::PerShot);
        assert_eq!(c.criterion, Criterion::Tangent);
        assert!(serde_json::from_str::<AnalysisConfig>(r#"{"N": "all"}"#).is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(toml::from_str::<AnalysisConfig>("n_particles = 10\nsigma = 1.0\n").is_err());
    }

    #[test]
    fn invalid_values() {
        let mut c = AnalysisConfig::new(ParticleNumber::Fixed(10));
        c.n_sigma = 0.0;
        assert!(c.validate().is_err());
        let mut c = AnalysisConfig::new(ParticleNumber::Fixed(10));
        c.sigma_det = f64::NAN;
        assert!(c.validate().is_err());
        assert!(AnalysisConfig::new(ParticleNumber::Fixed(0)).validate().is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = AnalysisConfig::new(ParticleNumber::Fixed(10));
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        b.seed = 1;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
