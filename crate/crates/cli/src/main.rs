use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod io;

/// Logarithmic Laplacians: coefficients, operator application, expansions
/// and Dirichlet eigenvalues.
#[derive(Debug, Parser)]
#[command(name = "loglap", version)]
pub struct Cli {
    /// worker threads (default: machine parallelism)
    #[arg(long, global = true, env = "LOGLAP_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    /// zero-order kernel operator 𝓚_n (needs --order)
    #[value(name = "K")]
    K,
    /// logarithmic Laplacian 𝓛_m (needs --order)
    #[value(name = "L")]
    L,
    /// fractional Laplacian (−Δ)^s (needs --s)
    Fraclap,
    /// Riesz potential Φ_s∗u (needs --s)
    Riesz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// pointwise singular-integral quadrature at every node
    Quad,
    /// Fourier multiplier on the periodic grid
    Fft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    #[value(name = "I")]
    I,
    #[value(name = "G")]
    G,
    #[value(name = "Q")]
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Fraclap,
    Riesz,
    Shifted,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient ledger α₀..α_m with ρ_N, c_N and the κ-series.
    Coeffs {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=16))]
        dim: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=12))]
        order: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply an operator to a grid function.
    Apply {
        #[arg(long, value_enum)]
        op: Op,
        /// n for K, m for L
        #[arg(long, alias = "m", value_parser = clap::value_parser!(u64).range(1..=12))]
        order: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<f64>,
        /// expected grid dimension (checked against the input)
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_enum, default_value = "quad")]
        method: Method,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// error-budget CSV (default: <output>.budget.csv)
        #[arg(long)]
        budget: Option<PathBuf>,
    },
    /// Write the bundled test function (a Gaussian derivative) as a grid file.
    Bump {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=2))]
        dim: u64,
        /// nodes per axis
        #[arg(long, default_value_t = 4096)]
        nodes: usize,
        /// the grid covers [−L, L) per axis
        #[arg(long, default_value_t = 20.0)]
        half_width: f64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Lowest Dirichlet eigenvalues of a discrete form.
    Eig {
        #[arg(long, value_enum)]
        form: Form,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=12))]
        m: u64,
        #[arg(long)]
        domain: PathBuf,
        #[arg(long, default_value_t = 200)]
        cells: usize,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// eigenvectors as CSV: cell center(s) followed by one column per vector
        #[arg(long)]
        vectors: Option<PathBuf>,
    },
    /// First Q_m eigenvalue on several equal-measure domains; flags the ball.
    Fk {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=12))]
        m: u64,
        /// one domain file per candidate
        #[arg(long = "domain", required = true)]
        domains: Vec<PathBuf>,
        #[arg(long, default_value_t = 2000.0)]
        cells_per_unit: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remainder norms of the order expansion and their fitted slope.
    Expand {
        #[arg(long, value_enum, default_value = "fraclap")]
        side: SideArg,
        /// base order for the shifted expansion
        #[arg(long, default_value_t = 0.5)]
        s0: f64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=4))]
        n: u64,
        /// input grid (default: bundled bump on the default spectral grid)
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=2))]
        dim: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Positivity and monotonicity radii r0, rm of the combined kernel.
    Radii {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=12))]
        m: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=16))]
        dim: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure classes, mapped to exit codes 2, 3, 4.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(loglap::Error),
    Io(String),
}

impl From<loglap::Error> for CliError {
    fn from(e: loglap::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(loglap::Error::Numerical(_)) => 4,
            CliError::Lib(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("usage error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("i/o error: thread pool: {e}");
            return ExitCode::from(4);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("loglap: {e}");
            ExitCode::from(e.code())
        }
    }
}
