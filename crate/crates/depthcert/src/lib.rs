//! Shot-record analysis, report and plot-data emission, and the figure
//! pipelines behind the `depthcert` command line tool. The numerics live in
//! `depthcert-core`.

// `!(x >= 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod config;
pub mod emit;
pub mod error;
pub mod figures;
pub mod report;
pub mod shots;

pub use analysis::run_analysis;
pub use config::{AnalysisConfig, ParticleNumber};
pub use emit::{emit_boundary_csv, write_atomic};
pub use error::{Error, Result};
pub use report::{emit_report, read_report, Report};
pub use shots::{parse_shots, write_shots};
