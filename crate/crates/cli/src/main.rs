//! `volseg` command-line driver.
//!
//! Every failure prints one line `ERROR <code>: <detail>` on stderr and exits
//! non-zero: 2 for usage errors, 3 for level-set phase collapse, 1 otherwise.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use volseg_core::Error;

#[derive(Debug, Parser)]
#[command(
    name = "volseg",
    version,
    about = "3D region growing + Chan-Vese tumour contouring"
)]
struct Cli {
    /// Worker threads (1 = reproducibility baseline; default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic phantom volume and its ground-truth mask.
    Phantom(PhantomArgs),
    /// Run region growing, closing, smoothing and the level set.
    Segment(SegmentArgs),
    /// Compare a segmentation with a reference mask.
    Evaluate(EvaluateArgs),
    /// Rotational contouring comparator.
    #[command(subcommand)]
    Vocal(VocalCommand),
    /// Export one slice with the mask boundary as a binary PGM.
    Overlay(OverlayArgs),
}

#[derive(Debug, Args)]
struct PhantomArgs {
    /// nx,ny,nz
    #[arg(long, value_parser = parse_triple::<usize>)]
    dims: [usize; 3],
    /// PhantomSpec JSON file.
    #[arg(long)]
    spec: String,
    /// Output basename; the mask goes to `<out>_gt`.
    #[arg(long)]
    out: String,
}

#[derive(Debug, Args)]
struct SegmentArgs {
    /// Input volume basename.
    #[arg(long = "in")]
    input: String,
    #[arg(long)]
    out: String,
    /// x,y,z voxel coordinate.
    #[arg(long, value_parser = parse_triple::<usize>)]
    seed: [usize; 3],
    #[arg(long, default_value_t = 5.0)]
    threshold: f64,
    #[arg(long, default_value = "running-mean")]
    acceptance: String,
    #[arg(long, default_value_t = 21)]
    se_width: usize,
    #[arg(long, default_value_t = 1.5)]
    sigma: f64,
    #[arg(long, default_value_t = 0.2)]
    mu: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    nu: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda1: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda2: f64,
    #[arg(long, default_value_t = 0.5)]
    dt: f64,
    #[arg(long, default_value_t = 1.5)]
    epsilon: f64,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    #[arg(long, default_value_t = 5e-4)]
    stop_tol: f64,
    #[arg(long, default_value_t = 20)]
    redistance_every: usize,
    /// Grow on the smoothed volume instead of the raw one.
    #[arg(long)]
    blur_before_grow: bool,
    /// Write the level-set trace as CSV.
    #[arg(long)]
    trace: Option<String>,
    /// Persist the region-growing and closed masks here.
    #[arg(long)]
    debug_dir: Option<String>,
    /// Write a JSON run summary with per-stage wall times.
    #[arg(long)]
    json: Option<String>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[arg(long = "ref")]
    reference: String,
    #[arg(long)]
    seg: String,
    #[arg(long)]
    json: Option<String>,
}

#[derive(Debug, Subcommand)]
enum VocalCommand {
    /// Trace the six rotational contours of a mask into JSON files.
    Slice(VocalSliceArgs),
    /// Rebuild a mask from six contour JSON files.
    Reconstruct(VocalReconstructArgs),
}

#[derive(Debug, Args)]
struct VocalSliceArgs {
    /// Mask basename.
    #[arg(long = "in")]
    input: String,
    /// Output directory for `contour_<angle>.json`.
    #[arg(long)]
    out: String,
    /// Rotation axis x,y (default: mask centroid).
    #[arg(long, value_parser = parse_pair)]
    axis: Option<[f64; 2]>,
    /// Replace each contour by its radial envelope.
    #[arg(long)]
    envelope: bool,
    #[arg(long)]
    json: Option<String>,
}

#[derive(Debug, Args)]
struct VocalReconstructArgs {
    /// Six contour files, or one directory holding them.
    #[arg(long, num_args = 1.., required = true)]
    contours: Vec<String>,
    #[arg(long, value_parser = parse_triple::<usize>)]
    dims: [usize; 3],
    #[arg(long, value_parser = parse_pair)]
    axis: [f64; 2],
    #[arg(long)]
    out: String,
}

#[derive(Debug, Args)]
struct OverlayArgs {
    #[arg(long = "in")]
    input: String,
    #[arg(long)]
    mask: String,
    #[arg(long, default_value = "z")]
    axis: String,
    #[arg(long)]
    index: usize,
    /// Output PGM path.
    #[arg(long)]
    out: String,
}

fn parse_triple<T: std::str::FromStr>(s: &str) -> Result<[T; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated values, got {s:?}"));
    }
    let mut out = Vec::with_capacity(3);
    for p in parts {
        out.push(
            p.parse::<T>()
                .map_err(|_| format!("bad value {p:?} in {s:?}"))?,
        );
    }
    out.try_into()
        .map_err(|_| "expected three values".to_string())
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok([
            a.parse().map_err(|_| format!("bad value {a:?}"))?,
            b.parse().map_err(|_| format!("bad value {b:?}"))?,
        ]),
        _ => Err(format!("expected two comma-separated values, got {s:?}")),
    }
}

/// A failure reported as `ERROR <code>: <detail>`.
#[derive(Debug)]
pub struct Failure {
    pub code: String,
    pub detail: String,
    pub exit: u8,
}

impl Failure {
    pub fn new(code: &str, detail: impl Into<String>) -> Self {
        Failure {
            code: code.to_string(),
            detail: detail.into(),
            exit: 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = if matches!(e, Error::PhaseCollapse { .. }) {
            3
        } else {
            1
        };
        Failure {
            code: e.code().to_string(),
            detail: e.to_string(),
            exit,
        }
    }
}

fn report(f: &Failure) -> ExitCode {
    let detail = f.detail.split_whitespace().collect::<Vec<_>>().join(" ");
    eprintln!("ERROR {}: {}", f.code, detail);
    ExitCode::from(f.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            // drop the usage block and help hint, keep the message itself
            let first = text
                .split("\n\nUsage:")
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ")
                .to_string();
            return report(&Failure {
                code: "USAGE".into(),
                detail: first,
                exit: 2,
            });
        }
    };

    if let Some(n) = cli.threads {
        if n == 0 {
            return report(&Failure {
                code: "USAGE".into(),
                detail: "--threads must be >= 1".into(),
                exit: 2,
            });
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            return report(&Failure::new("THREADS", e.to_string()));
        }
    }

    let result = match cli.command {
        Command::Phantom(a) => commands::phantom(a),
        Command::Segment(a) => commands::segment(a),
        Command::Evaluate(a) => commands::evaluate(a),
        Command::Vocal(VocalCommand::Slice(a)) => commands::vocal_slice(a),
        Command::Vocal(VocalCommand::Reconstruct(a)) => commands::vocal_reconstruct(a),
        Command::Overlay(a) => commands::overlay(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => report(&f),
    }
}
