use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bohr", version, about = "Bohr-Rogosinski radius solver for Ma-Minda classes")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// key=value file overriding the built-in numeric defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true)]
    pub format: Option<Format>,

    /// Series truncation order T.
    #[arg(long, global = true, value_name = "T")]
    pub truncation: Option<usize>,

    #[arg(long = "root-tol", global = true)]
    pub root_tol: Option<f64>,

    #[arg(long = "quad-tol", global = true)]
    pub quad_tol: Option<f64>,

    #[arg(long = "theta-samples", global = true)]
    pub theta_samples: Option<usize>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one radius problem.
    Radius(RadiusArgs),
    /// Sweep a grid of radius problems.
    Table(TableArgs),
    /// Run the randomized verification suites.
    Verify(VerifyArgs),
    /// Print the distance lower bounds of a generating function.
    Constants(PsiArgs),
    /// Print the leading coefficients of an extremal function.
    Series(SeriesArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PsiArgs {
    /// Generating function: classical, janowski, order-alpha or custom.
    #[arg(long, visible_alias = "class-psi")]
    pub psi: Option<String>,

    #[arg(long = "D", allow_negative_numbers = true)]
    pub d: Option<f64>,

    #[arg(long = "E", allow_negative_numbers = true)]
    pub e: Option<f64>,

    #[arg(long)]
    pub alpha: Option<f64>,

    /// Coefficients of a custom generating function, one "re im" pair per line.
    #[arg(long = "psi-file", value_name = "PATH")]
    pub psi_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(long)]
    pub class: String,

    #[command(flatten)]
    pub psi: PsiArgs,

    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,

    /// Exponent m, or "inf".
    #[arg(long, default_value = "inf")]
    pub m: String,

    #[arg(long = "N", visible_alias = "n", default_value_t = 1)]
    pub n: usize,

    /// tail:N, odd, even, none or idx:1,3,5.
    #[arg(long)]
    pub weights: Option<String>,

    /// classical-n, janowski, order-alpha or extremal.
    #[arg(long)]
    pub bounds: Option<String>,
}

/// Every list is comma-separated; an empty list yields no rows.
#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub class: String,

    #[arg(long, visible_alias = "class-psi")]
    pub psi: Option<String>,

    #[arg(long = "psi-file", value_name = "PATH")]
    pub psi_file: Option<PathBuf>,

    #[arg(long = "D", allow_hyphen_values = true)]
    pub d: Option<String>,

    #[arg(long = "E", allow_hyphen_values = true)]
    pub e: Option<String>,

    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,

    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: String,

    #[arg(long, default_value = "inf")]
    pub m: String,

    #[arg(long = "N", visible_alias = "n", default_value = "1")]
    pub n: String,

    #[arg(long)]
    pub weights: Option<String>,

    #[arg(long)]
    pub bounds: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma,
    Weighted,
    Operator,
    Radius,
    Growth,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,

    /// Samples per suite; each suite has its own default.
    #[arg(long)]
    pub count: Option<usize>,

    /// Tail index N: restricts the lemma suite to one N, selects the
    /// operator suite's N.
    #[arg(long = "N", visible_alias = "n")]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Extremal {
    /// z exp ∫(ψ-1)/t
    F0,
    /// ∫ f0(t)/t
    K,
    /// ∫ ψ(t)/(1-t^2)
    Ks,
    /// Double transform of ψ K'
    Symmetric,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub psi: PsiArgs,

    #[arg(long, default_value_t = 10)]
    pub count: usize,

    #[arg(long, value_enum, default_value = "f0")]
    pub function: Extremal,
}
