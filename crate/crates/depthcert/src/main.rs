use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use depthcert::figures::{self, log_grid};
use depthcert::{emit_boundary_csv, emit_report, parse_shots, run_analysis, write_shots, AnalysisConfig, Error, Result};
use depthcert_core::metrics::squeezing_report;
use depthcert_core::simulation::{sample_coherent_mixed_shots, sample_dicke_shots, NoiseModel};
use depthcert_core::statistics::{sample_moments, smve, unbiased_second_moment};
use depthcert_core::{default_lambda_grid, CollectiveMoments};

#[derive(Parser)]
#[command(name = "depthcert", version, about = "Certify entanglement depth from collective-spin measurements")]
struct Cli {
    /// Output directory (default: current directory)
    #[arg(long, global = true, env = "DEPTHCERT_OUT_DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Dicke,
    Coherent,
}

#[derive(Subcommand)]
enum Command {
    /// Write k-producibility boundaries as `boundary_n{N}_k{k}.csv`
    Boundary {
        #[arg(long)]
        n: u32,
        /// Group sizes, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
        /// `lo:hi:count` log-spaced multipliers; default is the built-in grid
        #[arg(long)]
        grid: Option<String>,
    },
    /// Analyse a shot file and write a JSON report
    Depth {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        shots: PathBuf,
        /// Keep only the most populated atom-number bin of this width
        #[arg(long)]
        bin_width: Option<u32>,
        /// Report path (default: <out-dir>/report.json)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Simulate a shot file
    Simulate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        shots: usize,
        /// Fraction of in-plane shots
        #[arg(long, default_value_t = 0.5)]
        alpha_fraction: f64,
        /// Detection noise `sigma0,trend_coeff`, in atoms
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.0])]
        noise: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Shot file path (default: <out-dir>/shots_<kind>_n<N>.csv)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Second-moment estimate and SMVE of a column of numbers
    Smve {
        #[arg(long)]
        input: PathBuf,
    },
    /// Detected depth of both criteria along noisy squeezed states
    Compare {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        /// `lo:hi:count` log-spaced squeezing strengths
        #[arg(long, default_value = "1e-7:1e4:50")]
        grid: String,
    },
    /// Squeezing figures of a JSON moments file
    Metrics {
        #[arg(long)]
        moments: PathBuf,
    },
    /// Boundaries and a simulated 8000-atom dataset with confidence ellipses
    Fig1c {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The k = 28 boundary with random 28-producible states and a tangent
    Fig4 {
        #[arg(long, default_value_t = 4)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        states: usize,
    },
    /// Shot histograms of a Dicke-like and a coherent state
    #[command(name = "figS1")]
    FigS1 {
        #[arg(long, default_value_t = 11)]
        seed: u64,
    },
    /// Monte-Carlo check of the SMVE
    #[command(name = "figS2")]
    FigS2 {
        #[arg(long, default_value_t = 2)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        reps: usize,
    },
    /// Criterion comparison at N = 4000
    #[command(name = "figS4")]
    FigS4,
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Usage(format!("grid must be lo:hi:count, got {spec:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    log_grid(lo, hi, count)
}

fn read_numbers(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            _ => rows.push(depthcert::error::RowError {
                line: i as u64 + 1,
                message: format!("`{t}` is not a finite number"),
            }),
        }
    }
    if rows.is_empty() {
        Ok(values)
    } else {
        Err(Error::Parse {
            path: path.to_path_buf(),
            rows,
        })
    }
}

fn print_paths(paths: &[PathBuf]) {
    for p in paths {
        println!("{}", p.display());
    }
}

fn run(cli: Cli) -> Result<()> {
    let out_dir = cli.out_dir.unwrap_or_else(|| PathBuf::from("."));
    let ensure = |dir: &Path| std::fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.to_path_buf(), source: e });
    match cli.command {
        Command::Boundary { n, k, grid } => {
            let grid = match grid {
                Some(g) => parse_grid(&g)?,
                None => default_lambda_grid(),
            };
            print_paths(&emit_boundary_csv(n, &k, &grid, &out_dir)?);
        }
        Command::Depth {
            config,
            shots,
            bin_width,
            output,
        } => {
            let mut cfg = AnalysisConfig::load(&config)?;
            if bin_width.is_some() {
                cfg.bin_width = bin_width;
            }
            let records = parse_shots(&shots)?;
            let report = run_analysis(&cfg, &records)?;
            let path = match output {
                Some(p) => p,
                None => {
                    let dir = cfg.output_dir.clone().unwrap_or(out_dir);
                    ensure(&dir)?;
                    dir.join("report.json")
                }
            };
            emit_report(&report, &path)?;
            let s = &report.squeezing;
            println!("report: {}", path.display());
            println!("N = {}", report.input.n_used);
            println!("number squeezing = {:.2} dB", s.number_squeezing_db);
            if let Some(db) = s.xi2_gen_db {
                println!("xi2_gen = {db:.2} dB");
            }
            println!("depth (center) >= {}", report.center.depth_lower_bound);
            println!("depth ({} sigma) >= {}", cfg.n_sigma, report.worst_case.depth_lower_bound);
        }
        Command::Simulate {
            kind,
            n,
            shots,
            alpha_fraction,
            noise,
            seed,
            output,
        } => {
            let &[sigma0, trend] = noise.as_slice() else {
                return Err(Error::Usage(format!("--noise takes sigma0,trend_coeff, got {} values", noise.len())));
            };
            let noise = NoiseModel::new(sigma0, trend, 0.0)?;
            let (records, tag) = match kind {
                Kind::Dicke => (sample_dicke_shots(n, shots, alpha_fraction, &noise, seed)?, "dicke"),
                Kind::Coherent => (sample_coherent_mixed_shots(n, shots, alpha_fraction, &noise, seed)?, "coherent"),
            };
            let path = match output {
                Some(p) => p,
                None => {
                    ensure(&out_dir)?;
                    out_dir.join(format!("shots_{tag}_n{n}.csv"))
                }
            };
            write_shots(&records, &path)?;
            println!("{}", path.display());
        }
        Command::Smve { input } => {
            let values = read_numbers(&input)?;
            let s = sample_moments(&values)?;
            let (var, floored) = smve(&s)?;
            let out = serde_json::json!({
                "n": s.n,
                "mean": s.m1,
                "second_moment": unbiased_second_moment(&s)?,
                "smve": var,
                "smve_floored": floored,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Compare { n, p, grid } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Usage(format!("p must lie in [0, 1], got {p}")));
            }
            let rows = figures::compare(n, p, &parse_grid(&grid)?)?;
            ensure(&out_dir)?;
            let path = out_dir.join(figures::compare_file_name(n, p));
            depthcert::emit::write_csv(&rows, &path)?;
            println!("{}", path.display());
        }
        Command::Metrics { moments } => {
            let text = std::fs::read_to_string(&moments).map_err(|e| Error::Io { path: moments.clone(), source: e })?;
            let m: CollectiveMoments = serde_json::from_str(&text)?;
            let r: depthcert::report::Squeezing = squeezing_report(&m).into();
            println!("{}", serde_json::to_string_pretty(&r)?);
        }
        Command::Fig1c { seed } => {
            let p = figures::Fig1c { seed, ..Default::default() };
            print_paths(&figures::fig1c(&p, &out_dir)?);
        }
        Command::Fig4 { seed, states } => {
            let p = figures::Fig4 {
                seed,
                states,
                ..Default::default()
            };
            print_paths(&figures::fig4(&p, &out_dir)?);
        }
        Command::FigS1 { seed } => {
            let p = figures::FigS1 { seed, ..Default::default() };
            print_paths(&figures::fig_s1(&p, &out_dir)?);
        }
        Command::FigS2 { seed, reps } => {
            let p = figures::FigS2 {
                seed,
                reps,
                ..Default::default()
            };
            print_paths(&figures::fig_s2(&p, &out_dir)?);
        }
        Command::FigS4 => print_paths(&figures::fig_s4(&Default::default(), &out_dir)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
