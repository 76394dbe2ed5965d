use clap::{Args, Parser, Subcommand, ValueEnum};
use fneq_core::analysis::Suite;
use fneq_core::Branch;

#[derive(Debug, Parser)]
#[command(name = "fneq", version, about = "Solutions of f(x^2 R) = k/(2xR) f(x)")]
pub struct Cli {
    /// INI-style file of `key = value` lines; command-line flags win
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regime of k and the rules that apply in it
    Classify(Equation),
    /// Sample one branch on a uniform grid in s
    Sample(SampleArgs),
    /// Run a seeded verification suite
    Verify(VerifyArgs),
    /// Pair of points showing that a k = 2 solution is not monotone
    Witness(WitnessArgs),
    /// Differentiability of the glued solution at 1/R
    #[command(name = "report-c1")]
    ReportC1(ReportC1Args),
}

#[derive(Debug, Args)]
pub struct Equation {
    #[arg(long = "R", value_name = "R")]
    pub r: f64,
    #[arg(long)]
    pub k: f64,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub eq: Equation,
    /// p-spec: const:<v> or fourier:<a0>[;<a_j>,<b_j>]...
    #[arg(long)]
    pub p: String,
    #[arg(long, value_parser = parse_branch, default_value = "right")]
    pub branch: Branch,
    #[arg(long, allow_negative_numbers = true)]
    pub smin: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub smax: f64,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Output file; standard output when omitted
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    pub suite: Suite,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Defaults to the suite's own tolerance
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub eq: Equation,
    #[arg(long)]
    pub p: String,
}

#[derive(Debug, Args)]
pub struct ReportC1Args {
    #[command(flatten)]
    pub eq: Equation,
    #[arg(long = "p-right")]
    pub p_right: String,
    #[arg(long = "p-left")]
    pub p_left: String,
    /// Comma-separated decreasing offsets from 1/R
    #[arg(long)]
    pub ladder: Option<String>,
}

fn parse_branch(s: &str) -> Result<Branch, String> {
    s.parse().map_err(|e: fneq_core::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: fneq_core::Error| e.to_string())
}
