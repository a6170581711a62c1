use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use paragrassmann_cli::commands::{self, BasisArg, ReportFormat, Which};
use paragrassmann_cli::config::{
    parse_complex, parse_tolerance, ConfigError, OutputFormat, RunConfig, WeightSpec, DEFAULT_TOLERANCE,
};
use paragrassmann_cli::io::emit;
use paragrassmann_cli::verify::{Grid, WeightChoice, DEFAULT_SEED};

/// Exact operator matrices, spectra and identity checks for the
/// paragrassmann algebra PG(l, q).
#[derive(Parser)]
#[command(name = "pgq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit an operator matrix.
    Matrix {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        which: Which,
        /// Symbol text, e.g. "th*thb - q*thb*th" or "(1+2i)*th^2".
        #[arg(long, allow_hyphen_values = true)]
        symbol: Option<String>,
        #[arg(long, value_enum)]
        basis: Option<BasisArg>,
    },
    /// Emit deformed integers and factorials, the number-operator spectrum
    /// and the norm of the creation operator.
    Spectrum {
        #[command(flatten)]
        common: Common,
    },
    /// Emit the Gram matrix of the weighted form and its determinant.
    Gram {
        #[command(flatten)]
        common: Common,
    },
    /// Check every identity over a parameter grid. `--l`, `--q` and
    /// `--weights` each pin one axis of the default grid.
    Verify {
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, value_enum)]
        grid: Option<GridName>,
        /// Seed for random elements; the PG_SEED environment variable
        /// takes precedence.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GridName {
    Default,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    l: Option<usize>,
    /// Deformation parameter, e.g. 1, -0.5, 0+1i.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    q: String,
    /// Comma-separated weights, or one of ones, factorial, qfactorial.
    #[arg(long, default_value = "ones")]
    weights: String,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Common {
    fn resolve(self) -> Result<RunConfig, ConfigError> {
        let weights = WeightSpec::parse(&self.weights)?;
        let q = parse_complex(&self.q)?;
        RunConfig::new(self.l, q, &weights, self.tolerance, self.format, self.output)
    }
}

enum Failure {
    Config(ConfigError),
    Io(std::io::Error),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Self::Config(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

fn seed(flag: Option<u64>) -> Result<u64, ConfigError> {
    match std::env::var("PG_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| ConfigError::Usage(format!("PG_SEED must be an unsigned integer, got '{text}'"))),
        Err(_) => Ok(flag.unwrap_or(DEFAULT_SEED)),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Matrix {
            common,
            which,
            symbol,
            basis,
        } => {
            let cfg = common.resolve()?;
            let doc = commands::matrix_doc(&cfg, which, symbol.as_deref(), basis)?;
            emit(&commands::render_matrix(&doc, cfg.format), cfg.output.as_deref())?;
        }
        Command::Spectrum { common } => {
            let cfg = common.resolve()?;
            let doc = commands::spectrum_doc(&cfg);
            emit(&commands::render_spectrum(&doc, cfg.format), cfg.output.as_deref())?;
        }
        Command::Gram { common } => {
            let cfg = common.resolve()?;
            let doc = commands::gram_doc(&cfg);
            emit(&commands::render_matrix(&doc, cfg.format), cfg.output.as_deref())?;
        }
        Command::Verify {
            l,
            q,
            weights,
            grid: _,
            seed: seed_flag,
            tolerance,
            format,
            output,
        } => {
            let mut grid = Grid::default();
            let weights = weights.as_deref().map(WeightSpec::parse).transpose()?;
            if let Some(q) = q {
                grid.qs = vec![parse_complex(&q)?];
            }
            match (l, weights.as_ref().and_then(WeightSpec::explicit_len)) {
                (Some(l), Some(n)) if l != n => {
                    return Err(ConfigError::WeightCount { expected: l, found: n }.into())
                }
                (Some(l), _) | (None, Some(l)) => grid.ls = vec![l],
                (None, None) => {}
            }
            if let Some(w) = weights {
                grid.weights = vec![WeightChoice::Spec(w)];
            }
            let report = commands::run_verify(&grid, seed(seed_flag)?, parse_tolerance(tolerance)?)?;
            emit(&commands::render_report(&report, format), output.as_deref())?;
            return Ok(report.exit_code() as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            if let ConfigError::Parse { source, .. } = &e {
                if !source.expected.is_empty() {
                    eprintln!("expected one of: {}", source.expected.join(", "));
                }
            }
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
