//! Run configuration shared by all subcommands.

use std::path::PathBuf;

use paragrassmann::symbol::{parse, ParseError};
use paragrassmann::{AlgebraCtx, Complex64, WeightSeq};

/// Default comparison tolerance (relative).
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{what}: parse error at position {}: {}", .source.position, .source.message)]
    Parse {
        what: &'static str,
        #[source]
        source: ParseError,
    },
    #[error("q must be a numeric constant, got '{0}'")]
    NonConstantQ(String),
    #[error("weights must be strictly positive")]
    NonPositiveWeights,
    #[error("malformed weight '{0}'")]
    MalformedWeight(String),
    #[error("expected {expected} weights for l = {expected}, got {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("the qfactorial preset needs a real q with every factor (1 - q^k)/(1 - q) positive")]
    QFactorial,
    #[error("{0}")]
    Algebra(#[from] paragrassmann::Error),
    #[error("tolerance must be positive and finite")]
    Tolerance,
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// How the weights were given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    Explicit(Vec<f64>),
    Ones,
    Factorial,
    QFactorial,
}

impl WeightSpec {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        match text.trim() {
            "ones" => return Ok(Self::Ones),
            "factorial" => return Ok(Self::Factorial),
            "qfactorial" => return Ok(Self::QFactorial),
            _ => {}
        }
        let values = text
            .split(',')
            .map(|s| {
                let s = s.trim();
                s.parse::<f64>().map_err(|_| ConfigError::MalformedWeight(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(ConfigError::NonPositiveWeights);
        }
        Ok(Self::Explicit(values))
    }

    /// Number of weights fixed by an explicit list.
    pub fn explicit_len(&self) -> Option<usize> {
        match self {
            Self::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    pub fn resolve(&self, l: usize, q: Complex64) -> Result<WeightSeq, ConfigError> {
        match self {
            Self::Explicit(v) if v.len() != l => Err(ConfigError::WeightCount {
                expected: l,
                found: v.len(),
            }),
            Self::Explicit(v) => WeightSeq::new(v.clone()).map_err(weight_error),
            Self::Ones => WeightSeq::ones(l).map_err(weight_error),
            Self::Factorial => WeightSeq::factorial(l).map_err(weight_error),
            Self::QFactorial => WeightSeq::q_factorial(l, q).map_err(weight_error),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Explicit(v) => v
                .iter()
                .map(|x| paragrassmann::symbol::format_real(*x))
                .collect::<Vec<_>>()
                .join(","),
            Self::Ones => "ones".into(),
            Self::Factorial => "factorial".into(),
            Self::QFactorial => "qfactorial".into(),
        }
    }
}

fn weight_error(e: paragrassmann::Error) -> ConfigError {
    match e {
        paragrassmann::Error::NonPositiveWeight { .. } => ConfigError::NonPositiveWeights,
        paragrassmann::Error::QFactorialWeights { .. } => ConfigError::QFactorial,
        other => ConfigError::Algebra(other),
    }
}

/// Parses a complex constant such as `2`, `-0.5`, `0+1i` or `(1-2i)`.
pub fn parse_complex(text: &str) -> Result<Complex64, ConfigError> {
    let expr = parse(text).map_err(|source| ConfigError::Parse { what: "q", source })?;
    expr.constant_value().ok_or_else(|| ConfigError::NonConstantQ(text.to_string()))
}

pub fn parse_tolerance(tol: f64) -> Result<f64, ConfigError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(ConfigError::Tolerance)
    }
}

/// A fully resolved configuration for a single `(l, q, w)` point.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ctx: AlgebraCtx,
    pub weights: WeightSeq,
    pub tolerance: f64,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Resolves `l` from `--l` or from the length of an explicit weight list.
    pub fn new(
        l: Option<usize>,
        q: Complex64,
        weights: &WeightSpec,
        tolerance: f64,
        format: OutputFormat,
        output: Option<PathBuf>,
    ) -> Result<Self, ConfigError> {
        let l = l
            .or(weights.explicit_len())
            .ok_or_else(|| ConfigError::Usage("--l is required unless --weights lists every weight".into()))?;
        let ctx = AlgebraCtx::new(l, q)?;
        let weights = weights.resolve(l, q)?;
        Ok(Self {
            ctx,
            weights,
            tolerance: parse_tolerance(tolerance)?,
            format,
            output,
        })
    }

    pub fn l(&self) -> usize {
        self.ctx.l()
    }

    pub fn q(&self) -> Complex64 {
        self.ctx.q()
    }
}
