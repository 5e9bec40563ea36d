use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use sumsetlab::group::DEFAULT_MAX_ORDER;

#[derive(Parser)]
#[command(name = "sumsetlab", version, about = "Subset sums, stabilizers and growth certificates over finite abelian groups")]
struct Cli {
    /// Cap on group order; larger groups are refused.
    #[arg(long, global = true, env = "SUMSETLAB_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SetArgs {
    /// Group, e.g. `Z201` or `Z2xZ4`; may come from the set file's `group:` header instead.
    #[arg(short = 'g', long = "group")]
    group: Option<String>,
    /// Set file: optional `group:` header, then one element per line.
    #[arg(short = 'f', long = "file")]
    file: PathBuf,
}

#[derive(Args, Clone, Default)]
struct OutArgs {
    /// Output path (stdout when omitted).
    #[arg(short = 'o', long = "output")]
    output: Option<String>,
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy)]
enum Schedule {
    ThreeStage,
    Doubling,
}

#[derive(ValueEnum, Clone, Copy)]
enum Kind {
    Interval,
    UnitIntervalPsq,
}

#[derive(Subcommand)]
enum Command {
    /// |Σ(A)| and its bitmap.
    Sigma {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Stabilizer of S (or of Σ(S) with --of-sigma).
    Stab {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        of_sigma: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// λ_S(c) for one element, or for every element.
    Lambda {
        #[command(flatten)]
        set: SetArgs,
        #[arg(short = 'c', long = "element")]
        element: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// ρ_S(d) for one element, or for every element.
    Rho {
        #[command(flatten)]
        set: SetArgs,
        #[arg(short = 'd', long = "element")]
        element: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// X + Y (+ ...), or rX with --times.
    Sumset {
        #[arg(short = 'g', long = "group")]
        group: Option<String>,
        #[arg(short = 'f', long = "file", required = true)]
        files: Vec<PathBuf>,
        #[arg(short = 'r', long = "times", conflicts_with = "extra")]
        times: Option<usize>,
        /// Additional set files (same as repeating -f).
        #[arg(long = "with")]
        extra: Vec<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sequence table (k, n_k, α_k) or bound functions at given n.
    Bounds {
        /// `9..12` or a single k.
        #[arg(short = 'k', long = "k", default_value = "9..12", conflicts_with = "n")]
        k: String,
        #[arg(long = "n", value_delimiter = ',')]
        n: Vec<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Both sides of Kneser's inequality for the given sets.
    Kneser {
        #[arg(short = 'g', long = "group")]
        group: Option<String>,
        #[arg(short = 'f', long = "file", required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Greedy λ-chain with a replayable certificate.
    Grow {
        #[command(flatten)]
        set: SetArgs,
        /// Stop once |Σ(B)| > K.
        #[arg(long, conflicts_with = "at_least")]
        above: Option<usize>,
        /// Stop once |Σ(B)| >= K.
        #[arg(long)]
        at_least: Option<usize>,
        /// Mark stage transitions (cyclic groups only).
        #[arg(long, value_enum)]
        schedule: Option<Schedule>,
        /// Write per-stage audit rows as CSV here.
        #[arg(long)]
        audit: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Decide Σ(A) = Z_n for a unit set A via the two-halves growth pipeline.
    Olson {
        #[arg(short = 'n', long = "n")]
        n: u64,
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        /// Write per-stage audit rows as CSV here.
        #[arg(long)]
        audit: Option<String>,
        /// Write both certificates as a JSON array here.
        #[arg(long)]
        certs: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Multiplicity sets over H and the factorization check.
    Decompose {
        #[command(flatten)]
        set: SetArgs,
        /// Generators of H; defaults to stab(Σ(A)).
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Minimum |Σ(A)|/|A|² per |A| over sets with trivially stabilized span.
    ScanMinRatio {
        #[arg(short = 'g', long = "group")]
        group: String,
        #[arg(long)]
        antisymmetric: bool,
        /// Random sets to draw instead of exhaustive enumeration.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Largest non-covering unit set of Z_n for each n in range.
    ScanOlson {
        #[arg(long, default_value_t = 2)]
        n_min: u64,
        #[arg(long, default_value_t = 36)]
        n_max: u64,
        #[arg(long, default_value_t = 16)]
        max_phi: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Some A with {0} ⊊ stab(Σ(A)) ⊊ G.
    WitnessStab {
        #[arg(short = 'g', long = "group")]
        group: String,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Extremal constructions and their predicate checks.
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        param: u64,
        /// Also write the set as a set file.
        #[arg(long)]
        set_out: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            for f in failures {
                eprintln!("verification failed: {f}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
