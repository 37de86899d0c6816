use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qzeta", version, about = "q-analogues of modified double zeta values: exact and numeric checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficients of a named q-series.
    Series(SeriesArgs),
    /// Run exact identity checks on q-series and period polynomials.
    Verify(VerifyArgs),
    /// Run floating-point relation checks among zeta values.
    Numeric(NumericArgs),
    /// Split W_k^ev into Hecke eigenvectors and write them out.
    Eigen(EigenArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Zeta,
    Zetahat,
    Parity,
    Eta,
    Eisenstein,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    pub kind: SeriesKind,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub parity: Option<ParityArg>,
    /// Truncation order: coefficients of q^0 ..= q^N.
    #[arg(long, visible_alias = "terms", default_value_t = 10)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Thm1,
    Thm2,
    Hecke,
    Sigma,
    T3,
    LemmaT1,
    LemmaT2,
    ExampleK4k6,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub target: VerifyTarget,
    /// Weights, comma separated; each target has its own default.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<u32>,
    /// Truncation order of the compared q-series.
    #[arg(long, visible_alias = "n", default_value_t = 200)]
    pub terms: usize,
    /// Largest Hecke index.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Period polynomial file used instead of the computed eigenforms.
    #[arg(long)]
    pub poly: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Report runtime_ms as 0, making the output reproducible byte for byte.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NumericTarget {
    Relation,
    Sumformula,
    Gkz,
    Level2,
    Mdavasli,
    Qlimit,
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    pub target: NumericTarget,
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    /// Relative (or, for mdavasli and the sum-formula cross-checks, absolute) tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Truncation order for qlimit.
    #[arg(long, visible_alias = "n")]
    pub terms: Option<usize>,
    #[arg(long)]
    pub poly: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[arg(long)]
    pub k: u32,
    /// Fourier coefficients a_1 ..= a_nmax are listed.
    #[arg(long, default_value_t = 10)]
    pub nmax: usize,
    /// Directory receiving one period-polynomial file per eigenform.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}
