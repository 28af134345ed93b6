//! Command-line flags.

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_GRID: &str = "0.01:8:200:log";

#[derive(Debug, Clone, Parser)]
#[command(name = "beckner", version, about = "Real-order Hermite functions, F_k, certificates and inequality checks")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Absolute tolerance on Hermite error estimates.
    #[arg(long, global = true, env = "BECKNER_TOL_ABS", default_value_t = DEFAULT_TOL)]
    pub tol_abs: f64,
    /// Relative tolerance on Hermite error estimates.
    #[arg(long, global = true, env = "BECKNER_TOL_REL", default_value_t = DEFAULT_TOL)]
    pub tol_rel: f64,
    /// Default Gauss–Hermite order for `verify`.
    #[arg(long, global = true, env = "BECKNER_QUAD_ORDER", default_value_t = 80)]
    pub quad_order: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate H_k, F_k, F_exp or F_-ln at points or over lo:hi:step.
    Eval(EvalArgs),
    /// Certify the matrix condition for M built from F_k, F_exp (exp) or F_-ln (ln).
    Certify(CertifyArgs),
    /// Check an inequality over a test-function suite by Gauss–Hermite quadrature.
    Verify(VerifyArgs),
    /// Print a constant.
    Const(ConstArgs),
    /// Tabulate F_k with its lower bound and large-t form.
    Curve(CurveArgs),
    /// Extreme real zeros and zero count of H_k.
    Zeros(ZerosArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFn {
    #[value(name = "H")]
    H,
    #[value(name = "F")]
    F,
    #[value(name = "Fexp")]
    Fexp,
    #[value(name = "Fln")]
    Fln,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub function: EvalFn,
    /// Order; required for H and F.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    /// A point or lo:hi:step.
    #[arg(long, allow_hyphen_values = true)]
    pub at: String,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    /// Orders, comma separated or repeated; `exp` and `ln` select the limit functions.
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub k: Vec<String>,
    /// t-grid as lo:hi:n:log|lin.
    #[arg(long, default_value = DEFAULT_GRID)]
    pub grid: String,
    /// Add the finite-difference cross-check.
    #[arg(long)]
    pub fd: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// poincare, beckner, theorem_main, prop_lower, e_sobolev, neg_log_sobolev, b_three_halves or scaled_R.
    #[arg(long)]
    pub ineq: String,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    /// exp, sin, bump, logistic, stress, all, or one member such as `sin(2,1)`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Overrides --quad-order.
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long = "R")]
    pub r: Option<f64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub dim: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstName {
    Alpha,
}

#[derive(Debug, Clone, Args)]
pub struct ConstArgs {
    #[arg(long, value_enum)]
    pub name: ConstName,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub k: f64,
    /// lo:hi:step.
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    /// Add the column 1 - p(p-1)t²/2.
    #[arg(long)]
    pub with_bounds: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ZerosArgs {
    /// An order or lo:hi:step.
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
}
