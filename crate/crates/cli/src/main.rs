use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

/// DNA-correcting codes: distances, channel oracles, index codes and bounds.
#[derive(Parser)]
#[command(name = "dnacc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct ChannelArgs {
    /// Fraction of copies per strand that may be erroneous, as p/q or a decimal.
    #[arg(long)]
    pub tau: String,
    /// Maximum Hamming errors in an index.
    #[arg(long = "ei")]
    pub e_i: usize,
    /// Maximum Hamming errors in a data-field.
    #[arg(long = "ed", default_value_t = 0)]
    pub e_d: usize,
    /// Copies read per strand.
    #[arg(long = "K")]
    pub k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum VerifyMode {
    Brute,
    Distance,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Method {
    Coset,
    Extend,
    SearchExact,
    SearchGreedy,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// DNA-distance between two message files.
    Distance {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Check whether a codebook is DNA-correcting for a channel.
    VerifyDcc {
        codebook: PathBuf,
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, value_enum, default_value = "both")]
        mode: VerifyMode,
    },
    /// Build an index-correcting code and write it as a matrix file.
    Construct {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long = "M")]
        m: Option<usize>,
        #[arg(long)]
        d: Option<u32>,
        /// Input matrix (extend).
        #[arg(short, long)]
        input: Option<PathBuf>,
        /// Seed (search-greedy).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a matrix file against its index-distance.
    Validate {
        matrix: PathBuf,
        /// Required distance; defaults to the file header.
        #[arg(long)]
        d: Option<u32>,
    },
    /// Upper bounds, construction sizes and exact F for (l, M, d).
    Bounds {
        #[arg(long)]
        l: Option<usize>,
        #[arg(long = "M")]
        m: usize,
        #[arg(long)]
        d: u32,
        /// Every power-of-two M' in 4..=M and every d' in 1..=d.
        #[arg(long)]
        sweep: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
    },
    /// Ball sizes: B_{r,M} by permanent, or |B_r(Z)| for a message file.
    BallSize {
        #[arg(long)]
        r: u32,
        #[arg(long = "M")]
        m: Option<usize>,
        #[arg(long)]
        message: Option<PathBuf>,
    },
    /// Sample one channel output for a message.
    Simulate {
        message: PathBuf,
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long)]
        seed: u64,
        /// Always corrupt floor(tau K) copies with maximal error weight.
        #[arg(long)]
        worst_case: bool,
        /// Reconstruct the message with the plurality decoder.
        #[arg(long)]
        decode: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate every possible channel output of a message.
    Enumerate {
        message: PathBuf,
        #[command(flatten)]
        channel: ChannelArgs,
        /// Print the pools, not only their number.
        #[arg(long)]
        list: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let budget = commands::Budget::from_env()?;
    match cli.command {
        Command::Distance { a, b, format } => commands::distance(&a, &b, format),
        Command::VerifyDcc { codebook, channel, mode } => commands::verify_dcc(&codebook, &channel, mode, &budget),
        Command::Construct { method, l, m, d, input, seed, output } => {
            commands::construct(method, l, m, d, input.as_deref(), seed, output.as_deref(), &budget)
        }
        Command::Validate { matrix, d } => commands::validate(&matrix, d),
        Command::Bounds { l, m, d, sweep, format } => commands::bounds(l, m, d, sweep, format, &budget),
        Command::BallSize { r, m, message } => commands::ball_size(r, m, message.as_deref(), &budget),
        Command::Simulate { message, channel, seed, worst_case, decode, output } => {
            commands::simulate(&message, &channel, seed, worst_case, decode, output.as_deref())
        }
        Command::Enumerate { message, channel, list } => commands::enumerate(&message, &channel, list, &budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dnacc: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
