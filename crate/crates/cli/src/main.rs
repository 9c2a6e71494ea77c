//! `thinset`: batch front end for largeness graphs, left-c.e. colorings and
//! thin-set witnesses.
//!
//! Exit status: 0 success, 1 usage, 2 bad input, 3 no witness exists,
//! 4 search budget exhausted, 5 insufficient data, 6 verification failed.

mod commands;
mod config;
mod io;
mod verify;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use thinset::witness::SearchBudget;

use config::Config;
use io::{exit_code, fail, Exit, Format};

#[derive(Parser, Debug)]
#[command(
    name = "thinset",
    version,
    about = "Largeness graphs, left-c.e. colorings and thin-set witnesses"
)]
struct Cli {
    /// Settings file of `key = value` lines: seed, max_nodes, max_seconds,
    /// format, guard. Flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the primary output here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Output encoding; each command documents the ones it accepts.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a prefix of the Catalan, Schröder or ℓ sequence (csv, json, table).
    Numbers(NumbersArgs),
    /// Enumerate, validate and canonicalize largeness graphs.
    #[command(subcommand)]
    Graphs(GraphsCmd),
    /// Build colorings from an approximation table.
    #[command(subcommand)]
    Color(ColorCmd),
    /// Search for thin sets, extremal numbers and transitive subtournaments.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Turn thin sets into dominating functions or g-transitive sets.
    #[command(subcommand)]
    Extract(ExtractCmd),
    /// Run the verification suites and report PASS/FAIL per check.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct NumbersArgs {
    #[arg(value_enum)]
    kind: SeqKind,
    /// Largest index to print.
    #[arg(long)]
    max: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeqKind {
    Catalan,
    Schroder,
    Ell,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Filter,
    Recursive,
}

#[derive(Subcommand, Debug)]
enum GraphsCmd {
    /// All largeness graphs of size n in canonical order (json, csv, dot, table).
    Enumerate {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value = "recursive")]
        method: Method,
    },
    /// Validate graphs read as JSON (`{"n":..,"edges":[[i,j],..]}`), one
    /// report per graph; exits 2 if any is invalid.
    Check {
        #[arg(short, long)]
        input: Option<PathBuf>,
    },
    /// Replace each input graph by the packed member of its class.
    Pack {
        #[arg(short, long)]
        input: Option<PathBuf>,
    },
    /// Replace each input graph by the normal member of its class.
    Normalize {
        #[arg(short, long)]
        input: Option<PathBuf>,
    },
    /// The ∼-classes of size-n graphs with their packed and normal members.
    Classes {
        #[arg(short)]
        n: usize,
    },
}

/// Approximation table and the domain to color.
#[derive(Args, Debug)]
struct TableArgs {
    /// Table JSON: `{"stages","domain","stable_bound","values"}`.
    #[arg(short = 'g', long = "table")]
    table: PathBuf,
    /// Color the domain `0..D` (default: the table's stable bound).
    #[arg(short = 'D', long = "domain-size", conflicts_with = "domain")]
    domain_size: Option<u64>,
    /// Explicit increasing domain, e.g. `0,3,7,12`.
    #[arg(long)]
    domain: Option<String>,
    /// The table file holds raw stage rows (`[[..], ..]` or
    /// `{"values": ..}`) to normalize before use.
    #[arg(long)]
    raw: bool,
}

#[derive(Args, Debug)]
struct PaletteOut {
    /// Where to write the palette codec (default: next to `--output`).
    #[arg(long)]
    palette_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LiftKind {
    Gap,
    Largeness,
    Gap3,
}

#[derive(Subcommand, Debug)]
enum ColorCmd {
    /// Gap coloring into 2^(n-1) colors (json, csv, table).
    Gap {
        #[command(flatten)]
        table: TableArgs,
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        out: PaletteOut,
    },
    /// Largeness-graph coloring into d_n colors (json, csv, table).
    Largeness {
        #[command(flatten)]
        table: TableArgs,
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        out: PaletteOut,
    },
    /// Five-color triple coloring (json, csv, table).
    Gap3 {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        out: PaletteOut,
    },
    /// Tournament x → y iff [x,y] is small (json, dot).
    Tournament {
        #[command(flatten)]
        table: TableArgs,
    },
    /// Pointwise product of colorings sharing arity and domain.
    Product {
        /// Coloring files (JSONL); give the flag once per factor.
        #[arg(short = 'f', long = "coloring", required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        out: PaletteOut,
    },
    /// Lift the stage-by-stage colorings of a table to one extra coordinate.
    Lift {
        #[command(flatten)]
        table: TableArgs,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value = "gap")]
        kind: LiftKind,
        #[command(flatten)]
        out: PaletteOut,
    },
}

#[derive(Args, Debug)]
struct ColoringIn {
    /// Coloring JSONL as written by `color`.
    #[arg(short = 'f', long = "coloring")]
    coloring: PathBuf,
    /// Palette codec (default: the sidecar next to the coloring, else
    /// integer colors).
    #[arg(long)]
    palette: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Stop after this many search nodes (exit 4).
    #[arg(long, env = "THINSET_MAX_NODES")]
    max_nodes: Option<u64>,
    /// Stop after this many seconds (exit 4).
    #[arg(long, env = "THINSET_MAX_SECONDS")]
    max_seconds: Option<f64>,
}

impl BudgetArgs {
    fn resolve(&self, config: &Config) -> Result<SearchBudget> {
        let max_seconds = self.max_seconds.or(config.max_seconds);
        if max_seconds.is_some_and(|s| !(s.is_finite() && s >= 0.0)) {
            return Err(fail(Exit::Usage, "--max-seconds must be a non-negative number"));
        }
        Ok(SearchBudget {
            max_nodes: self.max_nodes.or(config.max_nodes),
            max_seconds,
        })
    }
}

#[derive(Subcommand, Debug)]
enum SolveCmd {
    /// Lex-least m-set whose tuples use at most ell colors (exit 3 if none).
    Thin {
        #[command(flatten)]
        input: ColoringIn,
        #[arg(long)]
        ell: usize,
        #[arg(short)]
        m: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Least N such that every k-coloring of [N]^n has an m-set with at most
    /// ell colors (json, table).
    Extremal {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(short)]
        m: usize,
        /// Write a coloring of [N-1]^n with no such m-set here.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Largest transitive subtournament, lexicographically least.
    Tournament {
        /// Tournament JSON `{"domain","arcs"}` (default: standard input).
        #[arg(short, long)]
        input: Option<PathBuf>,
        /// Refuse tournaments with more vertices than this.
        #[arg(long)]
        guard: Option<usize>,
    },
}

/// Where the thin set comes from: given directly, read from a witness file,
/// or searched for with `-m`.
#[derive(Args, Debug)]
struct WitnessSource {
    /// Increasing thin set, e.g. `0,2,4,8`.
    #[arg(long, conflicts_with_all = ["witness", "m"])]
    subset: Option<String>,
    /// Witness JSON with an `"H"` field, e.g. from `solve thin`.
    #[arg(long, conflicts_with = "m")]
    witness: Option<PathBuf>,
    /// Search for the lex-least f-thin set of this size.
    #[arg(short)]
    m: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum ExtractCmd {
    /// g-transitive set from a thin set for the triple coloring.
    Transitive {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        source: WitnessSource,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Dominating function from a thin set for the gap coloring.
    Gap {
        #[command(flatten)]
        table: TableArgs,
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        source: WitnessSource,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Dominating function from a thin set for the largeness coloring.
    Largeness {
        #[command(flatten)]
        table: TableArgs,
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        source: WitnessSource,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Counts,
    Colorings,
    Search,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    suite: Suite,
    /// Seed for the randomized suites (default 7).
    #[arg(long)]
    seed: Option<u64>,
    /// Random tables in the coloring fuzz.
    #[arg(long, default_value_t = 1000)]
    tables: usize,
    /// Random instances in the solver/oracle comparison.
    #[arg(long, default_value_t = 200)]
    instances: usize,
}

/// Settings shared by every command.
pub struct Ctx {
    output: Option<PathBuf>,
    format: Option<Format>,
    config: Config,
}

impl Ctx {
    fn format(&self, default: Format) -> Format {
        self.format.or(self.config.format).unwrap_or(default)
    }

    fn output(&self) -> Option<&std::path::Path> {
        self.output.as_deref()
    }
}

fn run(cli: Cli) -> Result<()> {
    let ctx = Ctx {
        output: cli.output,
        format: cli.format,
        config: Config::load(cli.config.as_deref())?,
    };
    match cli.command {
        Command::Numbers(args) => commands::numbers(&ctx, args),
        Command::Graphs(cmd) => commands::graphs(&ctx, cmd),
        Command::Color(cmd) => commands::color(&ctx, cmd),
        Command::Solve(cmd) => commands::solve(&ctx, cmd),
        Command::Extract(cmd) => commands::extract(&ctx, cmd),
        Command::Verify(args) => verify::run(&ctx, args),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Exit::Usage as i32 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(exit_code(&err));
    }
}
