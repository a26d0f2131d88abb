use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "thuelab",
    version,
    about = "Square-free words, erase-on-repetition choosers, word games and walk enumeration"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct SeedArg {
    /// Seed for every random choice; the same seed gives the same output.
    #[arg(long, env = "THUELAB_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Look for a square in WORD (digits 1-9 or letters a-z); exit 1 if found.
    Check {
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a square-free ternary word of length LEN.
    Thue {
        len: usize,
        /// Re-check the output with the full detector; exit 1 on a square.
        #[arg(long)]
        verify: bool,
    },
    /// Run the erase-on-repetition chooser on a list file, or tabulate step counts.
    Choose(ChooseArgs),
    /// Play the erase-repetition game against a deterministic adversary.
    EraseGame(GameArgs),
    /// Play the nonrepetitive game against a deterministic adversary.
    NonrepGame(GameArgs),
    /// Run the backtracking simulation of the nonrepetitive game.
    SearchSim(GameArgs),
    /// Log codec tools.
    #[command(subcommand)]
    Codec(CodecCommand),
    /// Walk counts, series, discriminants, roots, growth and counting bounds.
    #[command(subcommand)]
    Walks(WalksCommand),
    /// Serve the JSON game-session API on localhost.
    Serve {
        #[arg(long, default_value_t = 8088)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Debug, Args)]
pub struct ChooseArgs {
    /// One list per line, entries separated by commas (1-based numbers or letters).
    #[arg(long, required_unless_present = "stats")]
    pub lists: Option<PathBuf>,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Step budget for a single run (default 100 n).
    #[arg(long)]
    pub budget: Option<usize>,
    /// Seeded trials over generated lists instead of a single run.
    #[arg(long)]
    pub stats: bool,
    #[arg(long, default_value_t = 4)]
    pub list_size: usize,
    /// Word lengths for --stats, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "100,1000")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// `identical` or `random-disjoint-pool`.
    #[arg(long, default_value = "identical")]
    pub generator: String,
    #[arg(long, default_value_t = 100)]
    pub budget_factor: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BenArgs {
    /// mimic, constant, cycle, greedy-threat or scripted-table.
    #[arg(long, default_value = "cycle")]
    pub ben: String,
    /// Constant symbol (0-based), cycle offset, or inline JSON table.
    #[arg(long)]
    pub ben_param: Option<String>,
    /// JSON table file for `--ben scripted-table`.
    #[arg(long)]
    pub ben_table: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GameArgs {
    /// Alphabet size (default 8 for the erase game, 6 otherwise).
    #[arg(long)]
    pub c: Option<usize>,
    #[command(flatten)]
    pub ben: BenArgs,
    /// Target word length.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Move budget (erase game) or Ann-step budget (search simulation).
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodecKind {
    Alg1,
    Erase,
    Search,
}

#[derive(Debug, Subcommand)]
pub enum CodecCommand {
    /// Encode, serialize, parse and decode random runs; exit 1 on any mismatch.
    Fuzz {
        #[arg(long, value_enum)]
        which: CodecKind,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Decode a JSON log back into the choices that produced it.
    Decode {
        #[arg(long, value_enum)]
        which: CodecKind,
        #[arg(long)]
        log: PathBuf,
        /// List file (alg1 logs).
        #[arg(long)]
        lists: Option<PathBuf>,
        #[command(flatten)]
        ben: BenArgs,
        #[arg(long)]
        c: Option<usize>,
    },
    /// Check an exported session trace: replaying it against a table of the
    /// adversary's moves must reproduce it, and its log must decode.
    ReplaySession {
        #[arg(long)]
        trace: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemName {
    Alg1,
    Erase,
    Search,
}

#[derive(Debug, Subcommand)]
pub enum WalksCommand {
    /// Exact T_1..T_M as CSV (m, T_m).
    Count {
        #[arg(long = "sys", value_enum)]
        system: SystemName,
        #[arg(long, default_value_t = 30)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Generating series from the functional equation, checked against the
    /// defining polynomial; exit 1 if the check fails.
    Series {
        #[arg(long = "sys", value_enum)]
        system: SystemName,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Discriminant of the defining polynomial (or of --poly) in t.
    Disc {
        #[arg(long = "sys", value_enum, required_unless_present = "poly")]
        system: Option<SystemName>,
        /// Polynomial in z and t as JSON: outer array over powers of t,
        /// inner arrays over powers of z.
        #[arg(long)]
        poly: Option<String>,
    },
    /// Certified roots in (0, 1] of the system's discriminant (or of --poly).
    Roots {
        #[arg(long = "sys", value_enum, required_unless_present = "poly")]
        system: Option<SystemName>,
        /// Polynomial in z as a JSON array, lowest degree first.
        #[arg(long)]
        poly: Option<String>,
    },
    /// Ratio T_(m+1)/T_m against 1/rho; exit 1 if a comparison fails.
    Growth {
        #[arg(long = "sys", value_enum)]
        system: SystemName,
        #[arg(long, default_value_t = 2000)]
        m: usize,
    },
    /// Choice count against log count in bits; exit 1 without a crossover.
    Bound {
        #[arg(long = "sys", value_enum)]
        system: SystemName,
        #[arg(long)]
        c: usize,
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Largest M to try.
        #[arg(long, default_value_t = 5000)]
        m_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}
