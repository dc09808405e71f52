use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "specrad",
    version,
    about = "Bounds for the lower and joint spectral radius of matrix families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lower spectral radius bounds (Algorithms S, A, E).
    Lsr(LsrArgs),
    /// Joint spectral radius bounds (classic or adaptive polytope norm).
    Jsr(JsrArgs),
    /// Sweep over random families, one CSV row per run.
    Bench(BenchArgs),
    /// Write a family file.
    Gen(GenArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct FamilySource {
    /// JSON family file.
    #[arg(long)]
    pub family: Option<PathBuf>,
    /// euler:R, pascal, illustrative, critical or signed.
    #[arg(long)]
    pub builtin: Option<String>,
    /// d,m,density,seed
    #[arg(long)]
    pub random: Option<String>,
}

#[derive(Args, Debug)]
pub struct LsrArgs {
    #[command(flatten)]
    pub source: FamilySource,
    /// s, a or e.
    #[arg(long, default_value = "a")]
    pub algorithm: String,
    #[arg(long, default_value_t = 1e-6)]
    pub delta: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_evals: usize,
    #[arg(long, default_value_t = 1.005)]
    pub theta: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// ones, eig:IDX (1-based member) or vertices:FILE.
    #[arg(long, default_value = "ones")]
    pub init: String,
    #[arg(long)]
    pub transpose: bool,
    /// auto (1/L from a preliminary run with M = max(10, m)) or a positive factor.
    #[arg(long)]
    pub rescale: Option<String>,
    /// Comma-separated perturbation sizes, largest first.
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub perturbation_seed: u64,
    /// Use the iterative rescaling driver with this many passes.
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// enumerate or active.
    #[arg(long, default_value = "active")]
    pub slp: String,
}

#[derive(Args, Debug)]
pub struct JsrArgs {
    #[command(flatten)]
    pub source: FamilySource,
    /// classic or adaptive.
    #[arg(long, default_value = "adaptive")]
    pub algorithm: String,
    #[arg(long, default_value_t = 1e-6)]
    pub delta: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_evals: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// ones (the 1-norm) or vertices:FILE.
    #[arg(long, default_value = "ones")]
    pub init: String,
    #[arg(long)]
    pub transpose: bool,
    /// A positive factor.
    #[arg(long)]
    pub rescale: Option<f64>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma-separated dimensions.
    #[arg(long, default_value = "")]
    pub dims: String,
    #[arg(long, default_value_t = 2)]
    pub members: usize,
    #[arg(long, default_value = "1.0")]
    pub densities: String,
    #[arg(long, default_value = "1")]
    pub seeds: String,
    #[arg(long, default_value = "e")]
    pub algorithm: String,
    #[arg(long, default_value = "1.005")]
    pub thetas: String,
    #[arg(long, default_value_t = 1e-6)]
    pub delta: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_evals: usize,
    /// Perturb every family by this amount before solving.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Concurrent runs; defaults to SPECRAD_JOBS or 1.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub source: FamilySource,
    #[arg(long)]
    pub transpose: bool,
    #[arg(long)]
    pub rescale: Option<f64>,
    /// Defaults to standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}
