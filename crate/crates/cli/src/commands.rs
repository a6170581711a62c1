//! Subcommand implementations. Each returns the text to emit so that the
//! binary stays a thin argument-parsing shell.

use paragrassmann::forms::GramMatrix;
use paragrassmann::linalg::Matrix;
use paragrassmann::quantization::*;
use paragrassmann::symbol::parse;
use paragrassmann::PGElement;

use crate::config::{ConfigError, OutputFormat, RunConfig};
use crate::io::{self, MatrixDoc, SpectrumDoc, WickProbe};
use crate::verify::{self, Grid, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    /// Toeplitz operator `T_g` on the holomorphic subspace.
    Toeplitz,
    /// `T_g` in the orthonormal basis.
    ToeplitzOn,
    /// Coherent-state quantization `A_g`.
    Coherent,
    /// `T♭_g` on the anti-holomorphic subspace.
    Flat,
    /// Kernel projection over the anti-Wick basis (no symbol).
    Pk,
    /// Left multiplication `f ↦ g f` over the anti-Wick basis.
    MultLeft,
    /// Right multiplication `f ↦ f g` over the anti-Wick basis.
    MultRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BasisArg {
    Monomial,
    Orthonormal,
    Aw,
}

impl BasisArg {
    fn name(self) -> &'static str {
        match self {
            Self::Monomial => "monomial",
            Self::Orthonormal => "orthonormal",
            Self::Aw => "aw",
        }
    }
}

pub fn parse_symbol(cfg: &RunConfig, text: &str) -> Result<PGElement, ConfigError> {
    let expr = parse(text).map_err(|source| ConfigError::Parse { what: "symbol", source })?;
    Ok(cfg.ctx.evaluate(&expr))
}

fn doc(cfg: &RunConfig, basis: BasisArg, m: &Matrix) -> MatrixDoc {
    MatrixDoc {
        l: cfg.l(),
        q: io::pair(cfg.q()),
        weights: cfg.weights.as_slice().to_vec(),
        basis: basis.name().into(),
        rows: io::rows(m),
        determinant: None,
    }
}

/// The requested operator matrix. Columns are images of basis elements.
///
/// Operators on the holomorphic subspace default to the monomial basis
/// (`toeplitz`) or the orthonormal one (`toeplitz-on`, `coherent`, `flat`);
/// operators on the whole algebra only exist in the anti-Wick basis.
pub fn matrix_doc(
    cfg: &RunConfig,
    which: Which,
    symbol: Option<&str>,
    basis: Option<BasisArg>,
) -> Result<MatrixDoc, ConfigError> {
    let symbol = match (which, symbol) {
        (Which::Pk, _) => None,
        (_, Some(text)) => Some(parse_symbol(cfg, text)?),
        (_, None) => return Err(ConfigError::Usage("--symbol is required for this matrix".into())),
    };
    let g = || symbol.as_ref().expect("symbol parsed above");
    let (ctx, w) = (&cfg.ctx, &cfg.weights);
    let whole_algebra = matches!(which, Which::Pk | Which::MultLeft | Which::MultRight);
    if whole_algebra {
        if basis.is_some_and(|b| b != BasisArg::Aw) {
            return Err(ConfigError::Usage("this matrix acts on the whole algebra; only --basis aw applies".into()));
        }
        let op = match which {
            Which::Pk => pk_operator(w),
            Which::MultLeft => mult_operator(g(), Side::Left, ctx),
            _ => mult_operator(g(), Side::Right, ctx),
        };
        return Ok(doc(cfg, BasisArg::Aw, op.matrix()));
    }
    let native = match which {
        Which::Toeplitz => toeplitz(g(), w, ctx, ToeplitzMode::Closed),
        Which::ToeplitzOn => toeplitz_orthonormal(g(), w, ctx),
        Which::Coherent => OperatorBH::new(
            coherent_quantization(g(), w, ctx, CoherentMode::Closed),
            Basis::Orthonormal,
        ),
        _ => OperatorBH::new(toeplitz_flat(g(), w, ctx), Basis::Orthonormal),
    };
    let target = match basis {
        None => native.basis(),
        Some(BasisArg::Monomial) => Basis::Monomial,
        Some(BasisArg::Orthonormal) => Basis::Orthonormal,
        Some(BasisArg::Aw) => {
            return Err(ConfigError::Usage("--basis aw only applies to pk, mult-left and mult-right".into()))
        }
    };
    let label = match target {
        Basis::Monomial => BasisArg::Monomial,
        Basis::Orthonormal => BasisArg::Orthonormal,
    };
    Ok(doc(cfg, label, native.to_basis(target, w).matrix()))
}

pub fn gram_doc(cfg: &RunConfig) -> MatrixDoc {
    let g = GramMatrix::new(&cfg.weights);
    let m = g.matrix().map(|x| paragrassmann::Complex64::new(x, 0.0));
    MatrixDoc {
        determinant: Some(g.determinant()),
        ..doc(cfg, BasisArg::Aw, &m)
    }
}

pub fn spectrum_doc(cfg: &RunConfig) -> SpectrumDoc {
    let ladder = ladder_set(&cfg.weights, &cfg.ctx);
    let l = cfg.l();
    SpectrumDoc {
        l,
        q: io::pair(cfg.q()),
        weights: cfg.weights.as_slice().to_vec(),
        deformed_integers: ladder.deformed_ints.clone(),
        deformed_factorials: ladder.deformed_factorials.clone(),
        number_eigenvalues: ladder.number_spectrum(),
        norm_t_eta: operator_norm_bh(&ladder.creation, &cfg.weights),
        wick_rank_probe: WickProbe {
            rank: operator_set_rank(&wick_operator_set(&ladder)),
            dimension: l * l,
            status: "informational".into(),
        },
    }
}

pub fn render_matrix(doc: &MatrixDoc, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => io::to_json(doc),
        OutputFormat::Csv => io::matrix_csv(doc),
    }
}

pub fn render_spectrum(doc: &SpectrumDoc, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => io::to_json(doc),
        OutputFormat::Csv => io::spectrum_csv(doc),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
    Csv,
}

pub fn run_verify(grid: &Grid, seed: u64, tolerance: f64) -> Result<VerifyReport, ConfigError> {
    verify::run(grid, seed, tolerance)
}

pub fn render_report(report: &VerifyReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => io::to_json(report),
        ReportFormat::Csv => report.to_csv(),
    }
}
