//! Shot records → moments → squeezing figures → certified depth.

use std::collections::BTreeMap;

use depthcert_core::metrics::squeezing_report;
use depthcert_core::simulation::{Basis, ShotRecord};
use depthcert_core::statistics::{depth_with_confidence, estimate_jeff_sq, estimate_jz_variance, EllipsePoint};
use depthcert_core::{depth_bound, CollectiveMoments};

use crate::config::{hex_digest, AnalysisConfig, ParticleNumber};
use crate::error::{Error, Result};
use crate::report::{InputSummary, Provenance, Report, TOOL, VERSION};
use crate::shots::shots_to_csv;

pub const MIN_SHOTS_PER_BASIS: usize = 4;

/// Shots in the most populated `[lo, lo + width)` atom-number bin; ties go
/// to the lower bin.
fn select_bin(shots: &[ShotRecord], width: u32) -> (Vec<ShotRecord>, [u32; 2]) {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for s in shots {
        *counts.entry(s.n_particles() / width).or_default() += 1;
    }
    let best = counts
        .iter()
        .fold((0u32, 0usize), |acc, (&b, &c)| if c > acc.1 { (b, c) } else { acc })
        .0;
    let kept = shots
        .iter()
        .filter(|s| s.n_particles() / width == best)
        .cloned()
        .collect();
    (kept, [best * width, best * width + width])
}

pub fn run_analysis(config: &AnalysisConfig, shots: &[ShotRecord]) -> Result<Report> {
    config.validate().map_err(Error::Usage)?;
    let (kept, bin) = match config.bin_width {
        Some(w) => {
            let (kept, bin) = select_bin(shots, w);
            (kept, Some(bin))
        }
        None => (shots.to_vec(), None),
    };

    let z: Vec<f64> = kept.iter().filter(|s| s.basis == Basis::Z).map(ShotRecord::value).collect();
    let alpha: Vec<f64> = kept.iter().filter(|s| s.basis == Basis::Alpha).map(ShotRecord::value).collect();
    for (basis, n) in [("z", z.len()), ("alpha", alpha.len())] {
        if n < MIN_SHOTS_PER_BASIS {
            return Err(Error::InsufficientShots {
                basis,
                needed: MIN_SHOTS_PER_BASIS,
                got: n,
            });
        }
    }

    let counts: Vec<u32> = kept.iter().map(ShotRecord::n_particles).collect();
    let n_mean = counts.iter().map(|&n| f64::from(n)).sum::<f64>() / counts.len() as f64;
    let n_used = match config.n_particles {
        ParticleNumber::Fixed(n) => n,
        ParticleNumber::PerShot => (n_mean.round() as u32).max(1),
    };
    let z_atoms = {
        let zs: Vec<f64> = kept
            .iter()
            .filter(|s| s.basis == Basis::Z)
            .map(|s| f64::from(s.n_particles()))
            .collect();
        zs.iter().sum::<f64>() / zs.len() as f64
    };
    let detection_variance = config.detection_variance(z_atoms);

    let jz = estimate_jz_variance(&z, detection_variance.sqrt())?;
    let jeff = estimate_jeff_sq(&alpha, f64::from(n_used))?;
    let jm = f64::from(n_used) / 2.0;
    let x_norm = jeff.estimate.value / (jm * jm);
    let moments = CollectiveMoments::unpolarized(n_used, x_norm, jz.value);
    let ellipse = EllipsePoint {
        x_norm,
        x_std: jeff.estimate.std() / (jm * jm),
        var_z: jz.value,
        var_std: jz.std(),
        correlation: config.correlation,
    };
    let center = depth_bound(&moments, config.criterion)?;
    let worst_case = depth_with_confidence(&ellipse, config.n_sigma, n_used, config.criterion)?;

    Ok(Report {
        input: InputSummary {
            shots_z: z.len(),
            shots_alpha: alpha.len(),
            shots_dropped: shots.len() - kept.len(),
            n_min: counts.iter().copied().min().unwrap_or(0),
            n_max: counts.iter().copied().max().unwrap_or(0),
            n_mean,
            n_used,
            bin,
        },
        detection_variance,
        jz_variance: jz,
        jeff_sq: jeff.estimate,
        j_eff: jeff.j_eff,
        alpha_mean_offset: jeff.mean_offset,
        moments,
        ellipse,
        squeezing: squeezing_report(&moments).into(),
        center,
        worst_case,
        provenance: Provenance {
            tool: TOOL.into(),
            version: VERSION.into(),
            config_hash: config.hash(),
            shots_hash: hex_digest(&shots_to_csv(shots)),
            seed: config.seed,
            config: config.clone(),
        },
    })
}
