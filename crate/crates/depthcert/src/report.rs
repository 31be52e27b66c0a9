use std::path::Path;

use depthcert_core::metrics::SqueezingReport;
use depthcert_core::statistics::{EllipsePoint, MomentEstimate};
use depthcert_core::{CollectiveMoments, DepthVerdict};
use serde::{Deserialize, Serialize};

use crate::config::AnalysisConfig;
use crate::emit::write_atomic;
use crate::error::{Error, Result};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub shots_z: usize,
    pub shots_alpha: usize,
    /// Shots left out by atom-number binning.
    pub shots_dropped: usize,
    pub n_min: u32,
    pub n_max: u32,
    pub n_mean: f64,
    /// Atom number the analysis ran with.
    pub n_used: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bin: Option<[u32; 2]>,
}

/// Squeezing figures; JSON has no infinities, so `±inf` is written as a
/// string.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Squeezing {
    #[serde(with = "ext_opt")]
    pub xi2: Option<f64>,
    #[serde(with = "ext_opt")]
    pub xi2_gen: Option<f64>,
    #[serde(with = "ext_opt")]
    pub xi2_db: Option<f64>,
    #[serde(with = "ext_opt")]
    pub xi2_gen_db: Option<f64>,
    #[serde(with = "ext")]
    pub number_squeezing_db: f64,
}

impl From<SqueezingReport> for Squeezing {
    fn from(r: SqueezingReport) -> Self {
        Self {
            xi2: r.xi2,
            xi2_gen: r.xi2_gen,
            xi2_db: r.xi2_db,
            xi2_gen_db: r.xi2_gen_db,
            number_squeezing_db: r.number_squeezing_db,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub config_hash: String,
    pub shots_hash: String,
    pub seed: u64,
    pub config: AnalysisConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputSummary,
    pub detection_variance: f64,
    pub jz_variance: MomentEstimate,
    pub jeff_sq: MomentEstimate,
    pub j_eff: f64,
    /// The in-plane shots have a significant mean; `J_eff` may be biased.
    pub alpha_mean_offset: bool,
    pub moments: CollectiveMoments,
    pub ellipse: EllipsePoint,
    pub squeezing: Squeezing,
    pub center: DepthVerdict,
    pub worst_case: DepthVerdict,
    pub provenance: Provenance,
}

impl Report {
    pub fn to_json(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("report serializes");
        bytes.push(b'\n');
        bytes
    }
}

pub fn emit_report(report: &Report, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path, &report.to_json())
}

pub fn read_report(path: impl AsRef<Path>) -> Result<Report> {
    let path = path.as_ref();
    let text = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_slice(&text)?)
}

/// `f64` with non-finite values as strings.
pub(crate) mod ext {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub(super) enum Repr {
        Num(f64),
        Text(String),
    }

    pub(super) fn to_repr(v: f64) -> Repr {
        if v.is_finite() {
            Repr::Num(v)
        } else if v.is_nan() {
            Repr::Text("nan".into())
        } else if v > 0.0 {
            Repr::Text("inf".into())
        } else {
            Repr::Text("-inf".into())
        }
    }

    pub(super) fn from_repr<E: serde::de::Error>(r: Repr) -> Result<f64, E> {
        match r {
            Repr::Num(v) => Ok(v),
            Repr::Text(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => Err(E::custom(format!("expected a number, \"inf\", \"-inf\" or \"nan\", got {s:?}"))),
            },
        }
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        to_repr(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }
}

pub(crate) mod ext_opt {
    use super::ext::{from_repr, to_repr, Repr};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        v.map(to_repr).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<Repr>::deserialize(d)?.map(from_repr).transpose()
    }
}
