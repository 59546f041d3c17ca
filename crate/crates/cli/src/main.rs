//! `symgraph`: command-line access to the symgraph library.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "symgraph",
    version,
    about = "Harmonic analysis on symmetric graphs of type k and order r"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Polygon size k (at least 2).
    #[arg(long, global = true)]
    pub k: Option<u32>,

    /// Polygons through each vertex r (at least 2).
    #[arg(long, global = true)]
    pub r: Option<u32>,

    /// Seed for pseudorandom rays and verification inputs.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,

    /// Tolerance for quadrature-based results.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,

    /// Worker threads; falls back to SYMGRAPH_THREADS, then 1.
    #[arg(long, global = true, env = "SYMGRAPH_THREADS")]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,

    /// Add `runtime_ms` to the diagnostics (off by default so that reruns
    /// are byte-identical).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Delta,
    B,
    Phi,
    C2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WaveMethod {
    Closed,
    Direct,
    DualAbel,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graph constants, α, β and spectral data.
    Info,
    /// Tabulate δ(n), b(n,h), φ(n) or |c(λ)|⁻².
    Table {
        #[arg(value_enum)]
        which: TableKind,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long, default_value_t = 5)]
        hmax: i64,
        /// Number of intervals on [0, τ/2] for `c2`.
        #[arg(long, default_value_t = 16)]
        grid: usize,
        /// Spectral parameter for `phi`.
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        /// Exact eigenvalue γ for `phi`, e.g. `1/3` or `1/4*sqrt(6)`.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
    },
    /// Abel transform of a radial function given as `f(0),f(1),...`.
    Abel {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Also evaluate through horocycle sums along this ray and report
        /// the discrepancy.
        #[arg(long)]
        ray: Option<String>,
    },
    /// Inverse Abel transform of an even sequence `g(0),g(1),...`.
    AbelInv {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value = "inv")]
        method: String,
    },
    /// Dual Abel transform of an even sequence.
    Dual {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Inverse dual Abel transform of a radial function.
    DualInv {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value = "closed")]
        method: String,
    },
    /// Spherical transform Hf(λ) of a radial function.
    Spherical {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        /// Evaluate at the exceptional parameter (k > r only).
        #[arg(long)]
        atom: bool,
    },
    /// Helgason transform f̂(λ, ω) of a vertex function `word=value;...`.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long)]
        ray: Option<String>,
    },
    /// Plancherel formula for a radial function.
    Plancherel {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Plancherel formula for the Helgason transform of a vertex function.
    Helgason {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Cylinder depth of the boundary integral (default: support + 2).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Spherical inversion (`--f`) or Helgason inversion (`--vertex`, `--at`).
    Invert {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "vertex")]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "at")]
        vertex: Option<String>,
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Kunze–Stein, Young and Hölder ratios for f ∗ χ.
    KsCheck {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
    },
    /// Solve the shifted wave equation.
    Wave {
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        f: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        g: String,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = WaveMethod::Closed)]
        method: WaveMethod,
        /// A single value `word,n`.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Tabulate u on B(o, ball) for |n| ≤ steps.
        #[arg(long, default_value_t = 0)]
        ball: usize,
    },
    /// Run invariant suites; without --k/--r the whole {2,3,4}² grid.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Corrupt a computation on purpose (`wave-leading-coefficient`).
        #[arg(long)]
        inject_fault: Option<String>,
    },
}

/// Failure classes mapped to exit codes.
pub enum Failure {
    /// A check did not hold (exit 1).
    Check(Box<output::Report>),
    /// A computation failed (exit 1).
    Compute(String),
    /// Bad arguments or inputs (exit 2).
    Usage(String),
}

impl From<symgraph::Error> for Failure {
    fn from(e: symgraph::Error) -> Self {
        use symgraph::Error::*;
        match e {
            Quadrature { .. } | Pole { .. } | DivisionByZero => Failure::Compute(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn emit(report: &output::Report, config: &RunConfig) -> io::Result<()> {
    match &config.out {
        Some(path) => {
            let mut f = File::create(path)?;
            report.write(config.format, &mut f)?;
            f.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.write(config.format, &mut lock)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.config.threads.unwrap_or(1).max(1);
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let result = commands::run(&cli.command, &cli.config);
    let stamp = |mut r: output::Report| {
        if cli.config.timing {
            r.diag("runtime_ms", start.elapsed().as_secs_f64() * 1e3);
        }
        r
    };
    match result {
        Ok(report) => match emit(&stamp(report), &cli.config) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(Failure::Check(report)) => {
            let report = stamp(*report);
            if let Some(w) = report.diagnostics.get("witness") {
                eprintln!("check failed: {w}");
            }
            let _ = emit(&report, &cli.config);
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
