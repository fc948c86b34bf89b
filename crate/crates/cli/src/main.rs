//! `ssc`: construct, verify and bound intersecting sets of subspaces.
//!
//! Exit status: 0 on success or a valid code, 1 for a code that fails
//! verification, 2 for usage, parse and parameter errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ssc", version, about = "Subspace codes in Schubert varieties")]
pub struct Cli {
    /// Print structured JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a code and write it as a code file.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a code file against a reference subspace.
    Verify(VerifyArgs),
    /// Print the applicable size bounds.
    Bounds(BoundsArgs),
    /// Compare the norm-1, scattered and multilevel constructions.
    Compare(CompareArgs),
    /// Build a rank-metric code on a Ferrers diagram.
    Ferrers(FerrersArgs),
    /// Points and weights of a linear set.
    LinearSet(SystemArgs),
    /// Count the subspaces of F_q^n cell by cell.
    Enumerate(EnumerateArgs),
    /// Reproduce the q = 2, k = u = 3, r = 2 example.
    Demo,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Spaces sigma_a for every a of norm 1.
    Norm1 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Field reductions of the weight-one points of a q-system.
    Scattered {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Union of lifted Ferrers-diagram codes over Schubert cells.
    Multilevel {
        #[command(flatten)]
        params: LtArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct FieldArgs {
    /// Prime field size.
    #[arg(long)]
    pub q: u64,
    /// Extension degree (the codeword dimension).
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct LtArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub r: usize,
    /// Dimension of the reference subspace.
    #[arg(long)]
    pub u: usize,
    /// Required intersection with the reference.
    #[arg(long = "l", default_value_t = 1)]
    pub ell: usize,
    /// Allowed pairwise intersection.
    #[arg(long, default_value_t = 0)]
    pub t: usize,
}

#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    /// Output file; the code is written to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodName {
    Auto,
    MrdRestrict,
    Greedy,
    Exhaustive,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct MethodArgs {
    /// Ferrers code construction.
    #[arg(long, value_enum, default_value_t = MethodName::Auto)]
    pub method: MethodName,
    /// Seed for randomized searches.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// q-system file: {"q", "k", "modulus"?, "r", "u", "basis"}.
    #[arg(long, conflicts_with_all = ["gabidulin", "twisted"])]
    pub system: Option<PathBuf>,
    /// Use {(s, s^q, ..., s^{q^{r-1}})}.
    #[arg(long, requires_all = ["q", "k", "r"])]
    pub gabidulin: bool,
    /// Use {(s, s^q, s, ..., s)}.
    #[arg(long, requires_all = ["q", "k", "r"], conflicts_with = "gabidulin")]
    pub twisted: bool,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Code file to check.
    pub file: PathBuf,
    /// Reference subspace as a JSON list of basis rows.
    #[arg(long, conflicts_with = "standard_u")]
    pub u_file: Option<PathBuf>,
    /// Use the span of the last u unit vectors as reference.
    #[arg(long)]
    pub standard_u: Option<usize>,
    #[arg(long = "l", default_value_t = 1)]
    pub ell: usize,
    #[arg(long, default_value_t = 0)]
    pub t: usize,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub params: LtArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub r: usize,
    #[command(flatten)]
    pub method: MethodArgs,
}

#[derive(Args, Debug)]
pub struct FerrersArgs {
    /// Dots per row, top to bottom, e.g. 3,3,2.
    #[arg(long, value_delimiter = ',', required = true)]
    pub rows: Vec<usize>,
    /// Minimum rank distance.
    #[arg(long)]
    pub delta: usize,
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[command(flatten)]
    pub method: MethodArgs,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub q: u64,
    /// Ambient dimension.
    #[arg(long)]
    pub n: usize,
    /// Subspace dimension.
    #[arg(long)]
    pub k: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
