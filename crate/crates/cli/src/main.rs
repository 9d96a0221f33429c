//! `dgl`: check formulas over discussion graphs, enumerate argumentation
//! extensions, generate and ground characterisation formulas, and run the
//! cross-validation suites.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dgl_core::argue::{ExtensionSpec, DEFAULT_BOUND};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "dgl", version, about = "Discussion-graph logic and equivalence-aware argumentation")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

/// Where a formula comes from.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FormulaSource {
    /// File holding the formula text.
    #[arg(long)]
    pub formula: Option<PathBuf>,
    /// The formula text itself.
    #[arg(long)]
    pub expr: Option<String>,
}

/// Where the interpretation comes from; the sources combine.
#[derive(Debug, Args)]
pub struct EnvSource {
    /// Environment JSON file.
    #[arg(long)]
    pub env: Option<PathBuf>,
    /// Bind the standard argumentation predicates the formula uses.
    #[arg(long)]
    pub std: bool,
    /// Extra constant bindings, `name=node`.
    #[arg(long = "bind", value_name = "NAME=NODE", value_parser = parse_binding)]
    pub bind: Vec<(String, String)>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a closed formula holds in a graph.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        env: EnvSource,
        #[command(flatten)]
        formula: FormulaSource,
    },
    /// List the extensions of an argumentation model.
    Extensions {
        #[arg(long)]
        model: PathBuf,
        /// `sigma:tau:mu`, e.g. `wide:defence:complete`.
        #[arg(long, required_unless_present_any = ["all", "lfp"])]
        spec: Option<ExtensionSpec>,
        /// Every combination of sigma, tau and mu.
        #[arg(long, conflicts_with = "spec")]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_BOUND as u64, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
        /// The wide-defence grounded extensions, by fixpoint iteration.
        #[arg(long, conflicts_with_all = ["spec", "all"])]
        lfp: bool,
    },
    /// All argument tuples instantiating a skeleton below a graph.
    Match {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        skeleton: PathBuf,
    },
    /// Cross-validate the generated formulas against the set semantics.
    Validate {
        /// Model files; repeatable.
        #[arg(long, required_unless_present = "random")]
        model: Vec<PathBuf>,
        /// Number of random models.
        #[arg(long, conflicts_with = "model")]
        random: Option<usize>,
        /// Largest random model.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=8))]
        nodes: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated family names, or `all`, `lemmas`, `extensions`.
        #[arg(long, default_value = "all")]
        families: String,
        /// Use a generator with a deliberately broken membership test.
        #[arg(long)]
        mutant: bool,
        /// Also evaluate every case through grounding.
        #[arg(long)]
        propositional: bool,
        #[arg(long, default_value_t = DEFAULT_BOUND as u64, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
    /// Print a characterisation formula.
    Generate {
        /// Family name (`CF`, `W-D-CMP`, `E-PREF`, …) or `sigma:tau:mu`.
        #[arg(long)]
        family: dgl_core::chargen::Family,
        /// The node count N the formula is built for.
        #[arg(long = "n", short = 'N')]
        n: usize,
        /// Use constants `c1..ck` (and `t` first for DF/WDF).
        #[arg(long, conflicts_with = "constants")]
        k: Option<usize>,
        /// Explicit constant names, comma-separated.
        #[arg(long, value_delimiter = ',')]
        constants: Vec<String>,
        /// Block sizes for CL (`k`), DISTINCT (`k1,k2`) and CMPS.
        #[arg(long, value_delimiter = ',')]
        split: Vec<usize>,
        #[arg(long)]
        mutant: bool,
    },
    /// Print the standard argumentation environment as an environment file.
    Env {
        /// Highest arity of the distinctness predicate to include.
        #[arg(long, default_value_t = 8)]
        max_arity: usize,
        #[arg(long = "bind", value_name = "NAME=NODE", value_parser = parse_binding)]
        bind: Vec<(String, String)>,
    },
    /// Expand a formula into propositional logic and export it as CNF.
    Ground {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        env: EnvSource,
        #[command(flatten)]
        formula: FormulaSource,
        /// Write the DIMACS CNF here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the atom numbering as JSON here.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Print the propositional formula instead of CNF.
        #[arg(long)]
        prop: bool,
        /// Refuse groundings larger than this many nodes.
        #[arg(long, default_value_t = dgl_core::ground::DEFAULT_CAP)]
        cap: usize,
    },
}

fn parse_binding(s: &str) -> Result<(String, String), String> {
    match s.split_once('=') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a.to_string(), b.to_string())),
        _ => Err(format!("expected NAME=NODE, got `{s}`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(CliError { code, message }) => {
            eprintln!("dgl: {message}");
            ExitCode::from(code)
        }
    }
}
