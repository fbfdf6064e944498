//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lintersect", version, about = "Bounds, certificates and exact search for L-intersecting families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of every bound whose hypothesis shape matches the parameters.
    Bounds(BoundsArgs),
    /// Check a family file against the intersection constraints.
    Check(CheckArgs),
    /// Polynomial-method independence certificate for one or two families.
    Certify(CertifyArgs),
    /// List subsets of [n] or subspaces of GF(q)^n.
    Enumerate(EnumerateArgs),
    /// LYM sum and q-Sperner check of a subspace family.
    Lym(LymArgs),
    /// Exact maximum family for one problem.
    Search(SearchArgs),
    /// Exact search over a parameter grid, one record per instance.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UniverseKind {
    Sets,
    Subspaces,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// Constraint parameters shared by most commands.
#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Allowed intersection sizes, e.g. `0,1`.
    #[arg(long = "L", value_name = "LIST")]
    pub l: Option<String>,
    /// Shorthand for `--L 0,1,...,s-1`.
    #[arg(long)]
    pub s: Option<u32>,
    /// Allowed member sizes, e.g. `2,3`.
    #[arg(long = "K", value_name = "LIST")]
    pub k: Option<String>,
    /// Arity of the intersection condition.
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    /// none, in-K, not-in-L or snevily; defaults to in-K when --K is given.
    #[arg(long = "size-rule")]
    pub size_rule: Option<String>,
    /// Forbid containment between members.
    #[arg(long)]
    pub sperner: bool,
}

#[derive(Debug, Clone, Args)]
pub struct UniverseArgs {
    #[arg(long, value_enum, default_value_t = UniverseKind::Sets)]
    pub universe: UniverseKind,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub universe: UniverseArgs,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// A set-family, subspace-family or search JSON file.
    pub input: PathBuf,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Family A, and optionally family B with A_i ⊆ B_i.
    #[arg(num_args = 1..=2, required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long = "L", value_name = "LIST")]
    pub l: Option<String>,
    #[arg(long)]
    pub s: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub universe: UniverseArgs,
    /// Only members of this size or dimension.
    #[arg(long)]
    pub dim: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LymArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SearchTuning {
    /// Wall-clock budget in seconds (per instance for scan).
    #[arg(long = "time-budget")]
    pub time_budget: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Branch only on one representative member per size at the root.
    #[arg(long)]
    pub symmetry: bool,
    /// Refuse problems with more candidate members than this.
    #[arg(long = "candidate-cap")]
    pub candidate_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub universe: UniverseArgs,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub tuning: SearchTuning,
    /// Restrict the search to the members of this family file.
    #[arg(long)]
    pub candidates: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum, default_value_t = UniverseKind::Sets)]
    pub universe: UniverseKind,
    /// Range of n, e.g. `4..8` or `5`.
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Range of |L|, e.g. `1..3`.
    #[arg(long)]
    pub s: String,
    /// L ranges over subsets of {0, ..., l-max - 1}; defaults to the largest s.
    #[arg(long = "l-max")]
    pub l_max: Option<u32>,
    /// Comma list of size rules, or `all`.
    #[arg(long = "size-rule", default_value = "all")]
    pub size_rule: String,
    /// Comma list of arities.
    #[arg(long, default_value = "2")]
    pub t: String,
    #[arg(long)]
    pub sperner: bool,
    #[command(flatten)]
    pub tuning: SearchTuning,
    #[command(flatten)]
    pub output: OutputArgs,
}
