use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mlex::engine::{EngineConfig, Fault, Strategy};
use mlex::magma::format::Format;
use mlex::oracle::GeneratorKind;
use mlex::SolverKind;

#[derive(Debug, Parser)]
#[command(name = "mlex", version, about = "Lexmin canonical forms of finite magmas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Table format for input and output.
    #[arg(long, global = true, default_value = "native", value_parser = parse_format)]
    pub format: Format,

    /// Worker threads for batch work; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: mlex::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the lexmin copy of every input table.
    Canonize(CanonizeArgs),
    /// Decide whether two tables are isomorphic (exit 0 if so, 10 if not).
    Isocheck(IsocheckArgs),
    /// Group tables into isomorphism classes.
    Dedupe(DedupeArgs),
    /// Run a configuration matrix over a corpus and write the stats CSV.
    Bench(BenchArgs),
    /// Generate a table.
    Gen(GenArgs),
    /// Compare the engine against exhaustive search on generated instances.
    OracleCheck(OracleCheckArgs),
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    /// Cell search strategy.
    #[arg(long, default_value = "bin2", value_parser = parse_strategy)]
    pub strategy: Strategy,
    /// Do not restrict the first row to apex idempotents.
    #[arg(long)]
    pub no_first_row: bool,
    /// Do not skip values with a spent occurrence budget.
    #[arg(long)]
    pub no_budgets: bool,
    /// Do not use row invariants of completed rows.
    #[arg(long)]
    pub no_invariants: bool,
    /// Do not refine row budgets after the diagonal cell.
    #[arg(long)]
    pub no_midrow: bool,
    /// Do not bound cells by the best copy seen so far.
    #[arg(long)]
    pub no_witness: bool,
    /// SAT backend: batsat (alias minisat) or cadical.
    #[arg(long, default_value = "batsat", value_parser = parse_solver)]
    pub solver: SolverKind,
    /// Wall-clock limit per instance in seconds; 0 disables it.
    #[arg(long, value_name = "SECONDS", default_value_t = 1800.0)]
    pub timeout: f64,
    #[arg(long, hide = true)]
    pub inject_fault: Option<Fault>,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: mlex::Error| e.to_string())
}

fn parse_solver(s: &str) -> Result<SolverKind, String> {
    s.parse().map_err(|e: mlex::Error| e.to_string())
}

impl EngineArgs {
    pub fn config(&self) -> anyhow::Result<EngineConfig> {
        if !(self.timeout >= 0.0 && self.timeout.is_finite()) {
            anyhow::bail!("--timeout must be a nonnegative number of seconds");
        }
        let mut cfg = EngineConfig::default()
            .with_strategy(self.strategy)
            .with_solver(self.solver)
            .with_timeout((self.timeout > 0.0).then(|| Duration::from_secs_f64(self.timeout)));
        cfg.first_row = !self.no_first_row;
        cfg.budgets = !self.no_budgets;
        cfg.row_invariants = !self.no_invariants;
        cfg.midrow_refinement = !self.no_midrow;
        cfg.witness_upper_bound = !self.no_witness;
        cfg.fault = self.inject_fault;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct CanonizeArgs {
    /// Input files; "-" reads standard input.
    #[arg(default_value = "-")]
    pub inputs: Vec<String>,
    /// Output file; standard output by default.
    #[arg(short, long)]
    pub output: Option<String>,
    /// Also print a permutation carrying the input onto the result.
    #[arg(long)]
    pub witness: bool,
    /// Write one stats CSV row per table to this file.
    #[arg(long, value_name = "PATH")]
    pub stats: Option<String>,
    /// Write the final clause set plus the last trial as DIMACS (single table only).
    #[arg(long, value_name = "PATH")]
    pub dump_cnf: Option<String>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct IsocheckArgs {
    pub left: String,
    pub right: String,
    /// Print a permutation carrying the left table onto the right one.
    #[arg(long)]
    pub witness: bool,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct DedupeArgs {
    /// File holding several tables separated by blank lines.
    #[arg(default_value = "-")]
    pub input: String,
    #[arg(short, long)]
    pub output: Option<String>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Matrix {
    /// Only the configuration given by the flags.
    Current,
    /// Everything on, then each technique switched off alone.
    Ablation,
    /// All 32 toggle subsets.
    Full,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Corpus files.
    #[arg(required = true)]
    pub corpus: Vec<String>,
    #[arg(long, value_enum, default_value_t = Matrix::Current)]
    pub matrix: Matrix,
    /// Run both strategies instead of only --strategy.
    #[arg(long)]
    pub all_strategies: bool,
    /// Comma-separated backends instead of only --solver.
    #[arg(long, value_delimiter = ',', value_parser = parse_solver)]
    pub solvers: Vec<SolverKind>,
    /// Stats CSV destination; standard output by default.
    #[arg(long, value_name = "PATH")]
    pub stats: Option<String>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: GeneratorKind,
    #[arg(long)]
    pub order: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of tables, using seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(short, long)]
    pub output: Option<String>,
}

fn parse_kind(s: &str) -> Result<GeneratorKind, String> {
    s.parse().map_err(|e: mlex::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct OracleCheckArgs {
    #[arg(long, default_value_t = 200)]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub min_order: usize,
    #[arg(long, default_value_t = 6)]
    pub max_order: usize,
    /// Generators to cycle through.
    #[arg(long, value_delimiter = ',', value_parser = parse_kind,
          default_value = "random_magma,latin_square")]
    pub kind: Vec<GeneratorKind>,
    /// Check every table of order 1 and 2 instead of generated ones.
    #[arg(long)]
    pub exhaustive: bool,
    /// Check every toggle subset under both strategies.
    #[arg(long)]
    pub all_configs: bool,
    /// Where to write the reproduction bundle on a mismatch.
    #[arg(long, value_name = "PATH")]
    pub repro: Option<String>,
    #[command(flatten)]
    pub engine: EngineArgs,
}
