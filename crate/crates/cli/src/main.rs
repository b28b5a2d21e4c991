use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

/// Build, evaluate, transform and analyze k-layer branching programs.
#[derive(Parser, Debug)]
#[command(name = "kobdd", version, about)]
pub struct Cli {
    /// Worker threads for batch evaluation (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Largest n scanned exhaustively; larger inputs fall back to sampling.
    #[arg(long, global = true, env = "KOBDD_EXHAUSTIVE_LIMIT", default_value_t = 20)]
    pub exhaustive_limit: usize,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an explicit construction as a BPv1 file.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Check a BPv1 file against all structural invariants.
    Validate {
        #[arg(short = 'i', long = "file", value_name = "FILE")]
        input: PathBuf,
    },
    /// Evaluate a program on one input or on all inputs.
    Eval {
        #[arg(short = 'i', long = "file", value_name = "FILE")]
        input: PathBuf,
        /// Input bits x1…xn, e.g. 0110.
        #[arg(long = "input", id = "bits", required_unless_present = "all")]
        bits: Option<String>,
        /// Print the result on every input.
        #[arg(long)]
        all: bool,
    },
    /// Print width, size and length.
    Metrics {
        #[arg(short = 'i', long = "file", value_name = "FILE")]
        input: PathBuf,
    },
    #[command(subcommand)]
    Transform(TransformCmd),
    #[command(subcommand)]
    Protocol(ProtocolCmd),
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Compare a subfunction count with the width bound of a program class.
    Check {
        #[arg(value_enum)]
        class: BoundClass,
        #[command(flatten)]
        args: CheckArgs,
    },
    /// Compare two programs input by input.
    DiffEval {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Evaluate the built-in Boolean functions.
    #[command(name = "fn", subcommand)]
    Function(FnCmd),
}

#[derive(Subcommand, Debug)]
pub enum BuildCmd {
    /// EQS_k as a deterministic k-OBDD.
    Eqs {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Skip the k <= 2^{n/4} parameter check.
        #[arg(long)]
        relaxed: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// SAF_{k,w} as a deterministic 2k-OBDD.
    Saf {
        #[command(flatten)]
        params: SafArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SafArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub w: usize,
    #[arg(long)]
    pub n: usize,
    /// Map a failed first lookup to -1 instead of w - 1.
    #[arg(long)]
    pub strict: bool,
    /// Only require one value bit per block.
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Subcommand, Debug)]
pub enum TransformCmd {
    /// Write an OR-of-ANDs decomposition: a DECv1 manifest plus one BPv1 file per factor.
    Decompose {
        #[arg(short = 'i', long = "file", value_name = "FILE")]
        input: PathBuf,
        /// Output directory.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write an equivalent one-layer nondeterministic program.
    Simulate {
        #[arg(short = 'i', long = "file", value_name = "FILE")]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ProtocolCmd {
    /// Compile a program into a CPv1 protocol for the cut after `--cut` variables of its order.
    Compile {
        #[arg(short = 'i', long = "file", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        cut: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a protocol on one input.
    Run {
        #[arg(short = 'i', long = "file", value_name = "FILE")]
        input: PathBuf,
        #[arg(long = "input", id = "bits")]
        bits: String,
    },
    /// Truncate small transition probabilities.
    Weaken {
        #[arg(short = 'i', long = "file", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        delta: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the matrix form with direct execution.
    CheckMatrix {
        #[arg(short = 'i', long = "file", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        scan: ScanArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum AnalyzeCmd {
    /// Subfunction counts over orders and cuts.
    Count {
        #[command(flatten)]
        source: FnSource,
        #[command(flatten)]
        params: FnParams,
        #[arg(long, value_enum, default_value_t = CountModeArg::Exact)]
        mode: CountModeArg,
        /// Random orders examined in sampled mode.
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Only examine cuts 2 <= u <= n-1.
        #[arg(long)]
        strict_cuts: bool,
        /// Bound column: class, with `--bound-k` and `--bound-w` (defaults from the program).
        #[arg(long, value_enum)]
        bound: Option<BoundClass>,
        #[arg(long)]
        bound_k: Option<usize>,
        #[arg(long)]
        bound_w: Option<usize>,
        #[arg(long)]
        delta: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountModeArg {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundClass {
    Det,
    Nd,
    Prob,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FnName {
    Eqs,
    Saf,
    Parity,
    And,
    Or,
    Majority,
}

/// A Boolean function: a program file, a hex truth table or a named function.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false, id = "source")]
pub struct FnSource {
    /// BPv1 program.
    #[arg(short = 'i', long = "file", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Hex truth table file.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long = "fn", value_enum)]
    pub function: Option<FnName>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FnParams {
    #[arg(long)]
    pub n: Option<usize>,
    /// EQS prefix length (multiple of 4).
    #[arg(long)]
    pub d: Option<usize>,
    /// SAF step count.
    #[arg(long)]
    pub k: Option<usize>,
    /// SAF value range.
    #[arg(long)]
    pub w: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Program whose own order, k and width are used.
    #[arg(short = 'i', long = "file", value_name = "FILE", conflicts_with = "count")]
    pub input: Option<PathBuf>,
    /// Explicit subfunction count (requires --k and --w).
    #[arg(long, requires_all = ["k", "w"])]
    pub count: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub w: Option<usize>,
    /// Error margin (probabilistic class; defaults to the program's δ).
    #[arg(long)]
    pub delta: Option<String>,
    /// Constant C1 of the probabilistic bound (with --c2).
    #[arg(long, requires = "c2")]
    pub c1: Option<String>,
    #[arg(long, requires = "c1")]
    pub c2: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    /// Scan all 2^n inputs (falls back to sampling above the exhaustive limit).
    #[arg(long, conflicts_with = "samples")]
    pub exhaustive: bool,
    /// Number of seeded random inputs.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum FnCmd {
    /// Evaluate a named function on one input, or print its truth table.
    Eval {
        #[arg(value_enum)]
        function: FnName,
        #[command(flatten)]
        params: FnParams,
        /// Map a failed first SAF lookup to -1.
        #[arg(long)]
        strict: bool,
        #[arg(long = "input", id = "bits", required_unless_present = "table")]
        bits: Option<String>,
        /// Print the hex truth table instead.
        #[arg(long)]
        table: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global() {
            eprintln!("error: --workers: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
