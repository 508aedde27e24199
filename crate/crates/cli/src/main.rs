//! `lh`: command-line diagnostics for principal-series matrix coefficients.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{BranchArg, Format, Overrides, RunConfig, UsageError};

#[derive(Parser, Debug)]
#[command(
    name = "lh",
    version,
    about = "Principal-series coefficient diagnostics"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct GlobalArgs {
    /// Plain-text `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Worker threads for the parallel scans.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Phase of the negative reals when ε < 1.
    #[arg(long, global = true, value_enum)]
    branch: Option<BranchArg>,
    /// Largest j evaluated exactly; above it the asymptotic form is used.
    #[arg(long, global = true)]
    exact_max_j: Option<u32>,
    #[arg(long = "jmax", global = true)]
    j_max: Option<u32>,
    #[arg(long = "cauchy-tol", global = true)]
    cauchy_tolerance: Option<f64>,
    #[arg(long, global = true)]
    cauchy_window: Option<u32>,
}

impl GlobalArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            j_max: self.j_max,
            cauchy_tolerance: self.cauchy_tolerance,
            cauchy_window: self.cauchy_window,
            branch: self.branch,
            format: self.format,
            output: self.output.clone(),
            threads: self.threads,
            exact_max_j: self.exact_max_j,
        }
    }
}

/// Either `--eps` or an SL(2,C) matrix through `--g`.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct TargetArgs {
    #[arg(long)]
    eps: Option<f64>,
    /// `re00,im00,re01,im01,re10,im10,re11,im11`
    #[arg(long, allow_hyphen_values = true, value_name = "MATRIX")]
    g: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TrackArg {
    /// `m = j`
    MEqualsJ,
    /// `m = 0`
    MEquals0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SumMode {
    Diagonal,
    Triple,
    Synthesis,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One diagonal coefficient.
    Coeff {
        #[arg(long)]
        j: u32,
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        /// `re` or `re,im`
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Term ratios of the diagonal series, or of a bounding track.
    Ratio {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        m: i32,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, value_enum)]
        track: Option<TrackArg>,
    },
    /// Partial sums of the diagonal, triple or synthesis series.
    Sum {
        #[arg(long, value_enum, default_value_t = SumMode::Diagonal)]
        mode: SumMode,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        m: i32,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[command(flatten)]
        target: TargetArgs,
        /// Coefficient table JSON for `--mode synthesis`.
        #[arg(long, value_name = "PATH")]
        table: Option<PathBuf>,
    },
    /// Truncated norm identity.
    Norm {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Growth of the norm series between checkpoints.
    Diverge {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, value_delimiter = ',', default_value = "1000,100000")]
        checkpoints: Vec<u64>,
    },
    /// Apply the Y-map to an SU(2) Fourier table.
    Ymap {
        /// Fourier table JSON.
        #[arg(long, value_name = "PATH")]
        table: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[command(flatten)]
        target: TargetArgs,
        /// Report the majorization bounds instead of the plain sum.
        #[arg(long)]
        bounds: bool,
    },
    /// Exact against asymptotic coefficients at a few j.
    Asymcheck {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        m: i32,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        js: Vec<u32>,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<lh_core::Error>() {
        Some(e) if e.is_domain() => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let cfg = RunConfig::load(
        cli.global.config.as_deref(),
        &cli.global.overrides(),
        std::env::vars(),
    )?;
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    let out = commands::dispatch(cli.command, &cfg)?;
    let text = match cfg.format {
        Format::Json => out.to_json()?,
        Format::Csv => out.to_csv()?,
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
