use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quatrange::io::{load_matrix, points_csv, write_file};
use quatrange::manifest::RunManifest;
use quatrange::report::{analyze, bild, classify};
use quatrange::svg::{render, Overlay};
use quatrange::verify::{file_suite, paper_examples, random_suite, VerifyConfig, VerifyReport};
use quatrange::{CliError, EXIT_OK, EXIT_VERIFY};

#[derive(Parser)]
#[command(name = "quatrange", version, about = "Numerical ranges of quaternionic matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Number of sampled unit vectors.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of centres of the disk-union grid.
    #[arg(long, default_value_t = 512)]
    grid: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the run manifest here instead of stderr.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Graph structure, nilpotency, triangularity and the 3×3 classification.
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Circularity and convexity of a 3×3 nilpotent matrix.
    Classify {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Sampled upper Bild as CSV, with closed-form and boundary overlays.
    Bild {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Write the sample CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run verification checks on a file or a bundled suite.
    Verify {
        path: Option<PathBuf>,
        #[arg(long, value_enum, conflicts_with = "path")]
        suite: Option<Suite>,
        /// Scale closed-form radii by this factor (negative control).
        #[arg(long)]
        tamper_radius: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    PaperExamples,
    Random,
}

fn emit(json: &str, to: Option<&Path>) -> Result<(), CliError> {
    match to {
        Some(p) => write_file(p, json),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn manifest_for(name: &str, c: &Common) -> RunManifest {
    RunManifest::new(name).tolerance("tol", c.tol)
}

fn run(cli: Cli) -> Result<(i32, RunManifest, Option<PathBuf>), CliError> {
    match cli.command {
        Command::Analyze { path, common } => {
            let (a, hash) = load_matrix(&path)?;
            emit(&to_json(&analyze(&a, common.tol)), common.json.as_deref())?;
            let mut m = manifest_for("analyze", &common);
            m.input_sha256 = Some(hash);
            Ok((EXIT_OK, m, common.manifest))
        }
        Command::Classify { path, common } => {
            let (a, hash) = load_matrix(&path)?;
            emit(&to_json(&classify(&a, common.tol)?), common.json.as_deref())?;
            let mut m = manifest_for("classify", &common);
            m.input_sha256 = Some(hash);
            Ok((EXIT_OK, m, common.manifest))
        }
        Command::Bild { path, common, csv, svg } => {
            let (a, hash) = load_matrix(&path)?;
            let b = bild(&a, common.samples, common.seed, common.grid, common.tol)?;
            let pts: Vec<(f64, f64)> = b.cloud.points.iter().map(|p| (p.re, p.im)).collect();
            let table = points_csv(pts.iter().copied());
            match &csv {
                Some(p) => write_file(p, &table)?,
                None => print!("{table}"),
            }
            if let Some(p) = &svg {
                let doc = render(&Overlay {
                    cloud: &pts,
                    envelope: b.envelope.as_deref(),
                    boundary: b.boundary.as_deref(),
                });
                write_file(p, &doc)?;
            }
            if let Some(p) = &common.json {
                write_file(p, &to_json(&b.report))?;
            }
            let mut m = manifest_for("bild", &common).grid("disk_union", common.grid).grid("envelope_angles", quatrange_core::range::ENVELOPE_ANGLES);
            m.input_sha256 = Some(hash);
            m.seed = Some(common.seed);
            m.samples = Some(common.samples);
            Ok((EXIT_OK, m, common.manifest))
        }
        Command::Verify {
            path,
            suite,
            tamper_radius,
            common,
        } => {
            let cfg = VerifyConfig {
                samples: common.samples,
                seed: common.seed,
                grid: common.grid,
                tol: common.tol,
                tamper: tamper_radius,
            };
            let mut m = manifest_for("verify", &common).grid("disk_union", common.grid);
            m.seed = Some(common.seed);
            m.samples = Some(common.samples);
            if let Some(f) = tamper_radius {
                m = m.tolerance("tamper_radius", f);
            }
            let report = match (path, suite) {
                (Some(p), _) => {
                    let (a, hash) = load_matrix(&p)?;
                    m.input_sha256 = Some(hash);
                    VerifyReport::new("file", file_suite(&a, &cfg))
                }
                (None, Some(Suite::PaperExamples)) => VerifyReport::new("paper-examples", paper_examples(&cfg)),
                (None, Some(Suite::Random)) => VerifyReport::new("random", random_suite(&cfg)),
                (None, None) => return Err(CliError::Input("verify needs a matrix file or --suite".into())),
            };
            emit(&to_json(&report), common.json.as_deref())?;
            let code = if report.all_passed() { EXIT_OK } else { EXIT_VERIFY };
            Ok((code, m, common.manifest))
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    match run(Cli::parse()) {
        Ok((code, mut manifest, to)) => {
            manifest.wall_time_s = start.elapsed().as_secs_f64();
            let json = manifest.to_json();
            let written = match to {
                Some(p) => write_file(&p, &json),
                None => {
                    eprintln!("{json}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("quatrange: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("quatrange: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
