//! Figure pipelines. Each writes plot-ready CSV/JSON into a directory and
//! returns the paths; outputs depend only on the parameters and the seed.

use std::path::{Path, PathBuf};

use depthcert_core::simulation::{
    random_producible_state, sample_coherent_shots, sample_dicke_shots, stream_rng, sweep_point, Basis,
    NoiseModel, ProducibleMode,
};
use depthcert_core::spin_algebra::{rotated_dicke_distribution, SpinSector};
use depthcert_core::statistics::{sample_moments, smve_raw, unbiased_second_moment};
use depthcert_core::{default_lambda_grid, tangent_criterion};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::run_analysis;
use crate::config::{AnalysisConfig, ParticleNumber};
use crate::emit::{boundary_csv, boundary_file_name, write_csv, write_atomic};
use crate::error::{Error, Result};
use crate::report::{emit_report, Report};

/// `count` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || count == 0 {
        return Err(Error::Usage(format!("log grid needs 0 < lo ≤ hi and count ≥ 1, got {lo}:{hi}:{count}")));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect())
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn boundaries(n: u32, ks: &[u32], dir: &Path) -> Result<Vec<PathBuf>> {
    let grid = default_lambda_grid();
    ks.par_iter()
        .map(|&k| {
            let curve = depthcert_core::boundary_curve(n, k, &grid)?;
            let path = dir.join(boundary_file_name(n, k));
            write_atomic(&path, &boundary_csv(&curve.points))?;
            Ok(path)
        })
        .collect()
}

// ---------------------------------------------------------------- fig. 1c

#[derive(Debug, Clone)]
pub struct Fig1c {
    pub n: u32,
    pub ks: Vec<u32>,
    pub shots: usize,
    pub alpha_fraction: f64,
    pub noise: NoiseModel,
    /// Detection-noise baseline the analysis subtracts.
    pub sigma_det: f64,
    pub seed: u64,
}

impl Default for Fig1c {
    fn default() -> Self {
        Self {
            n: 8000,
            ks: vec![2, 4, 8, 16, 28, 50, 100, 200, 400, 1000],
            shots: 2000,
            alpha_fraction: 0.5,
            noise: NoiseModel {
                sigma0: 10.9,
                trend_coeff: 0.15,
                p_white: 0.0,
            },
            sigma_det: 10.9,
            seed: 1,
        }
    }
}

#[derive(Serialize)]
struct EllipseRow {
    n_sigma: f64,
    x_norm: f64,
    var_z: f64,
}

/// Simulated Dicke-state dataset and its analysis.
pub fn fig1c_report(p: &Fig1c) -> Result<Report> {
    let shots = sample_dicke_shots(p.n, p.shots, p.alpha_fraction, &p.noise, p.seed)?;
    let mut cfg = AnalysisConfig::new(ParticleNumber::Fixed(p.n));
    cfg.sigma_det = p.sigma_det;
    cfg.seed = p.seed;
    run_analysis(&cfg, &shots)
}

pub fn fig1c(p: &Fig1c, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let mut paths = boundaries(p.n, &p.ks, dir)?;
    let report = fig1c_report(p)?;
    let e = report.ellipse;
    let rows: Vec<EllipseRow> = [1.0, 2.0]
        .iter()
        .flat_map(|&s| {
            let rho_c = (1.0 - e.correlation * e.correlation).max(0.0).sqrt();
            (0..=256).map(move |i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / 256.0;
                EllipseRow {
                    n_sigma: s,
                    x_norm: e.x_norm + s * e.x_std * t.cos(),
                    var_z: e.var_z + s * e.var_std * (e.correlation * t.cos() + rho_c * t.sin()),
                }
            })
        })
        .collect();
    let path = dir.join("fig1c_ellipses.csv");
    write_csv(&rows, &path)?;
    paths.push(path);
    let path = dir.join("fig1c_report.json");
    emit_report(&report, &path)?;
    paths.push(path);
    Ok(paths)
}

// ---------------------------------------------------------------- fig. 4

#[derive(Debug, Clone)]
pub struct Fig4 {
    pub n: u32,
    pub k: u32,
    /// Random states per sampling mode.
    pub states: usize,
    pub tangent_at: f64,
    pub seed: u64,
}

impl Default for Fig4 {
    fn default() -> Self {
        Self {
            n: 8000,
            k: 28,
            states: 2000,
            tangent_at: 0.5,
            seed: 4,
        }
    }
}

#[derive(Serialize)]
struct StateRow {
    mode: &'static str,
    x_norm: f64,
    var_z: f64,
}

#[derive(Serialize)]
struct LineRow {
    x_norm: f64,
    var_z: f64,
}

pub fn fig4(p: &Fig4, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let mut paths = boundaries(p.n, &[p.k], dir)?;

    let modes = [
        (ProducibleMode::HaarSymmetric, "haar_symmetric", 0u64),
        (ProducibleMode::SqueezedRotated, "squeezed_rotated", 1),
    ];
    let rows: Vec<StateRow> = modes
        .iter()
        .flat_map(|&(mode, name, offset)| (0..p.states as u64).map(move |i| (mode, name, offset, i)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(mode, name, offset, i)| {
            let m = random_producible_state(p.n, p.k, mode, p.seed.wrapping_add(offset), i)?;
            Ok(StateRow {
                mode: name,
                x_norm: m.x_norm(),
                var_z: m.var_z(),
            })
        })
        .collect::<Result<_>>()?;
    let path = dir.join("fig4_states.csv");
    write_csv(&rows, &path)?;
    paths.push(path);

    let t = tangent_criterion(p.n, p.k, p.tangent_at)?;
    let line: Vec<LineRow> = (0..=100)
        .map(|i| {
            let x = 1.05 * i as f64 / 100.0;
            LineRow {
                x_norm: x,
                var_z: t.var_bound(x),
            }
        })
        .collect();
    let path = dir.join("fig4_tangent.csv");
    write_csv(&line, &path)?;
    paths.push(path);
    Ok(paths)
}

// ---------------------------------------------------------------- fig. S1

#[derive(Debug, Clone)]
pub struct FigS1 {
    pub n: u32,
    pub shots: usize,
    pub noise: NoiseModel,
    pub z_bin: f64,
    pub alpha_bin: f64,
    pub seed: u64,
}

impl Default for FigS1 {
    fn default() -> Self {
        Self {
            n: 8000,
            shots: 2000,
            noise: Fig1c::default().noise,
            z_bin: 10.0,
            alpha_bin: 200.0,
            seed: 11,
        }
    }
}

#[derive(Serialize)]
struct ZHistRow {
    bin_center: f64,
    dicke: u64,
    coherent: u64,
    /// Expected coherent-state counts (Gaussian shot noise plus detection noise).
    coherent_expected: f64,
}

#[derive(Serialize)]
struct AlphaHistRow {
    bin_center: f64,
    dicke: u64,
    ideal_expected: f64,
}

fn histogram(values: impl Iterator<Item = f64>, width: f64, lo: f64, bins: usize) -> Vec<u64> {
    let mut h = vec![0u64; bins];
    for v in values {
        let b = ((v - lo) / width).floor();
        if b >= 0.0 && (b as usize) < bins {
            h[b as usize] += 1;
        }
    }
    h
}

pub fn fig_s1(p: &FigS1, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let dicke = sample_dicke_shots(p.n, p.shots, 0.5, &p.noise, p.seed)?;
    let coherent = sample_coherent_shots(p.n, p.shots / 2, &p.noise, p.seed.wrapping_add(1))?;

    let n = f64::from(p.n);
    let coherent_var = n / 4.0 + p.noise.detection_std(p.n).powi(2);
    let half_z = (4.0 * coherent_var.sqrt() / p.z_bin).ceil() * p.z_bin;
    let bins = (2.0 * half_z / p.z_bin).round() as usize;
    let hd = histogram(
        dicke.iter().filter(|s| s.basis == Basis::Z).map(|s| s.value()),
        p.z_bin,
        -half_z,
        bins,
    );
    let hc = histogram(coherent.iter().map(|s| s.value()), p.z_bin, -half_z, bins);
    let norm = coherent.len() as f64 * p.z_bin / (2.0 * std::f64::consts::PI * coherent_var).sqrt();
    let rows: Vec<ZHistRow> = (0..bins)
        .map(|i| {
            let c = -half_z + (i as f64 + 0.5) * p.z_bin;
            ZHistRow {
                bin_center: c,
                dicke: hd[i],
                coherent: hc[i],
                coherent_expected: norm * (-c * c / (2.0 * coherent_var)).exp(),
            }
        })
        .collect();
    let za = dir.join("figS1a.csv");
    write_csv(&rows, &za)?;

    let j = n / 2.0;
    let bins = (2.0 * (j + p.alpha_bin) / p.alpha_bin).ceil() as usize;
    let lo = -(j + p.alpha_bin);
    let alpha: Vec<f64> = dicke.iter().filter(|s| s.basis == Basis::Alpha).map(|s| s.value()).collect();
    let ha = histogram(alpha.iter().copied(), p.alpha_bin, lo, bins);
    let sector = SpinSector::symmetric(p.n);
    let probs = rotated_dicke_distribution(sector, std::f64::consts::FRAC_PI_2)?;
    let mut ideal = vec![0.0; bins];
    for (i, q) in probs.iter().enumerate() {
        let b = ((sector.m(i) - lo) / p.alpha_bin).floor() as usize;
        ideal[b.min(bins - 1)] += q * alpha.len() as f64;
    }
    let rows: Vec<AlphaHistRow> = (0..bins)
        .map(|i| AlphaHistRow {
            bin_center: lo + (i as f64 + 0.5) * p.alpha_bin,
            dicke: ha[i],
            ideal_expected: ideal[i],
        })
        .collect();
    let zb = dir.join("figS1b.csv");
    write_csv(&rows, &zb)?;
    Ok(vec![za, zb])
}

// ---------------------------------------------------------------- fig. S2

/// Monte-Carlo check of the SMVE at one sample size, for arcsine-distributed
/// samples `cos(πU)` (`μ₂ = 1/2`, `μ₄ = 3/8`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmveRow {
    pub n: usize,
    pub reps: usize,
    /// Mean of `μ̂₂` and its standard error.
    pub mu2_mean: f64,
    pub mu2_se: f64,
    /// Mean raw SMVE and its standard error.
    pub smve_mean: f64,
    pub smve_se: f64,
    /// Spread of `μ̂₂` across repetitions, with its standard error.
    pub empirical_var: f64,
    pub empirical_var_se: f64,
    /// `μ₄/n − (n−3)/(n(n−1))·μ₂²`.
    pub analytic: f64,
    /// `(μ₄ − μ₂²)/n`.
    pub naive: f64,
}

pub const ARCSINE_MU2: f64 = 0.5;
pub const ARCSINE_MU4: f64 = 0.375;

fn mean_and_moments(xs: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    let m4 = xs.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n;
    (m, var, m4)
}

pub fn smve_monte_carlo(n: usize, reps: usize, seed: u64) -> Result<SmveRow> {
    let mut rng = stream_rng(seed, n as u64);
    let mut mu2 = Vec::with_capacity(reps);
    let mut var = Vec::with_capacity(reps);
    let mut sample = vec![0.0; n];
    for _ in 0..reps {
        sample
            .iter_mut()
            .for_each(|x| *x = (std::f64::consts::PI * rng.random::<f64>()).cos());
        let s = sample_moments(&sample)?;
        mu2.push(unbiased_second_moment(&s)?);
        var.push(smve_raw(&s)?);
    }
    let r = reps as f64;
    let (mu2_mean, mu2_var, mu2_m4) = mean_and_moments(&mu2);
    let (smve_mean, smve_var, _) = mean_and_moments(&var);
    let nf = n as f64;
    Ok(SmveRow {
        n,
        reps,
        mu2_mean,
        mu2_se: (mu2_var / r).sqrt(),
        smve_mean,
        smve_se: (smve_var / r).sqrt(),
        empirical_var: mu2_var,
        // standard error of a sample variance from the fourth moment
        empirical_var_se: ((mu2_m4 - mu2_var * mu2_var) / r).max(0.0).sqrt(),
        analytic: ARCSINE_MU4 / nf - (nf - 3.0) / (nf * (nf - 1.0)) * ARCSINE_MU2 * ARCSINE_MU2,
        naive: (ARCSINE_MU4 - ARCSINE_MU2 * ARCSINE_MU2) / nf,
    })
}

#[derive(Debug, Clone)]
pub struct FigS2 {
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
}

impl Default for FigS2 {
    fn default() -> Self {
        Self {
            sizes: vec![5, 10, 30, 100, 300, 1000],
            reps: 10_000,
            seed: 2,
        }
    }
}

pub fn fig_s2_rows(p: &FigS2) -> Result<Vec<SmveRow>> {
    p.sizes.par_iter().map(|&n| smve_monte_carlo(n, p.reps, p.seed)).collect()
}

pub fn fig_s2(p: &FigS2, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let path = dir.join("figS2.csv");
    write_csv(&fig_s2_rows(p)?, &path)?;
    Ok(vec![path])
}

// ---------------------------------------------------------------- fig. S4

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompareRow {
    pub lambda: f64,
    pub x_norm: f64,
    pub var_z: f64,
    pub depth_new: u32,
    pub depth_sm: u32,
}

/// Detected depth of both criteria along the squeezed-state family with
/// white-noise admixture `p`.
pub fn compare(n: u32, p: f64, grid: &[f64]) -> Result<Vec<CompareRow>> {
    grid.par_iter()
        .map(|&l| {
            let r = sweep_point(n, l, p)?;
            Ok(CompareRow {
                lambda: l,
                x_norm: r.moments.x_norm(),
                var_z: r.moments.var_z(),
                depth_new: r.depth_new,
                depth_sm: r.depth_sm,
            })
        })
        .collect()
}

/// Squeezing strengths from nearly unpolarized (`Λ·N ≪ 1`) to nearly
/// coherent (`Λ ≫ N`) at `N = 4000`.
pub const COMPARE_GRID: (f64, f64, usize) = (1e-7, 1e4, 50);

#[derive(Debug, Clone)]
pub struct FigS4 {
    pub n: u32,
    pub noise_levels: Vec<f64>,
    pub grid: Vec<f64>,
}

impl Default for FigS4 {
    fn default() -> Self {
        Self {
            n: 4000,
            noise_levels: vec![0.0, 0.05],
            grid: log_grid(COMPARE_GRID.0, COMPARE_GRID.1, COMPARE_GRID.2).expect("valid grid"),
        }
    }
}

pub fn compare_file_name(n: u32, p: f64) -> String {
    format!("compare_n{n}_p{p}.csv")
}

pub fn fig_s4(p: &FigS4, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    p.noise_levels
        .iter()
        .map(|&noise| {
            let path = dir.join(format!("figS4_{}", compare_file_name(p.n, noise)));
            write_csv(&compare(p.n, noise, &p.grid)?, &path)?;
            Ok(path)
        })
        .collect()
}
