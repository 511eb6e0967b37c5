//! `sbbd`: construct, verify and analyze spanning bipartite block designs.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5BBD;

#[derive(Parser)]
#[command(name = "sbbd", version, about = "Spanning bipartite block designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// (r, λ)-designs and the built-in catalog.
    #[command(subcommand)]
    Design(DesignCommand),
    /// Ordered designs.
    #[command(subcommand)]
    Od(OdCommand),
    /// Compose an (r, λ)-design with an ordered design into an SBBD.
    Compose(ComposeArgs),
    /// Verify the SBBD conditions and report spectrum and A-optimality.
    Analyze(AnalyzeArgs),
    /// Monte Carlo check of the least-squares contrast estimates.
    Simulate(SimulateArgs),
    /// Least-squares contrast estimates from observed responses.
    Estimate(EstimateArgs),
    /// Export one connection mask per block.
    Mask(MaskArgs),
}

#[derive(Subcommand)]
enum DesignCommand {
    /// Check a block-design JSON file `{"v": .., "blocks": [[..]]}`.
    Verify {
        /// Path, or `-` for standard input.
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// List the built-in symmetric designs.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Print a catalog design as block-design JSON.
    Show { id: String },
}

#[derive(Subcommand)]
enum OdCommand {
    /// Build OD₁(q, q) over GF(q) and print it as CSV.
    Construct {
        #[arg(long)]
        q: usize,
    },
    /// Check an ordered design given as symbol CSV.
    Verify {
        /// Path, or `-` for standard input.
        file: String,
        /// Number of symbols; defaults to the largest symbol present.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DesignFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MaskFormat {
    Json,
    Bin,
}

#[derive(Args)]
pub struct Dimensions {
    /// Number of left points; inferred when omitted.
    #[arg(long)]
    pub v1: Option<usize>,
    /// Number of right points; inferred when omitted.
    #[arg(long)]
    pub v2: Option<usize>,
}

#[derive(Args)]
pub struct ComposeArgs {
    /// Block-design JSON file, or `catalog:<id>`.
    #[arg(long)]
    pub design: String,
    /// Ordered-design CSV file, or a prime power `q` to construct OD₁(q, q).
    #[arg(long)]
    pub od: String,
    /// Permutation layers: `cyclic:<u>` or `;`-separated permutations such as `2,3,1;3,1,2`.
    #[arg(long)]
    pub perms: Option<String>,
    /// Output format; inferred from `--out` when omitted, otherwise CSV.
    #[arg(long, value_enum)]
    pub format: Option<DesignFormat>,
    /// Output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Design CSV or SB-block JSON; `-` for standard input.
    pub design: String,
    #[command(flatten)]
    pub dims: Dimensions,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct SimulateArgs {
    /// Design CSV or SB-block JSON; `-` for standard input.
    pub design: String,
    #[command(flatten)]
    pub dims: Dimensions,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 10_000)]
    pub runs: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Effect vector file with zero row and column sums; random when omitted.
    #[arg(long)]
    pub tau: Option<PathBuf>,
    /// Half-width of the uniform draw used for random effects.
    #[arg(long, default_value_t = 1.0)]
    pub tau_scale: f64,
    /// Run on one thread; the report is identical either way.
    #[arg(long)]
    pub serial: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct EstimateArgs {
    /// Design CSV or SB-block JSON.
    pub design: String,
    #[command(flatten)]
    pub dims: Dimensions,
    /// One response per block, separated by commas or whitespace.
    #[arg(long)]
    pub y: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct MaskArgs {
    /// Design CSV or SB-block JSON; `-` for standard input.
    pub design: String,
    #[command(flatten)]
    pub dims: Dimensions,
    #[arg(long, value_enum, default_value = "json")]
    pub format: MaskFormat,
    /// Output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Design(DesignCommand::Verify { file, json }) => commands::design_verify(&file, json),
        Command::Design(DesignCommand::Catalog { json }) => commands::design_catalog(json),
        Command::Design(DesignCommand::Show { id }) => commands::design_show(&id),
        Command::Od(OdCommand::Construct { q }) => commands::od_construct(q),
        Command::Od(OdCommand::Verify { file, n, json }) => commands::od_verify(&file, n, json),
        Command::Compose(args) => commands::compose(&args),
        Command::Analyze(args) => commands::analyze(&args),
        Command::Simulate(args) => commands::simulate(&args),
        Command::Estimate(args) => commands::estimate(&args),
        Command::Mask(args) => commands::mask(&args),
    };
    match result {
        Ok(code) => code,
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::exit_code(&err))
        }
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain()
        .filter_map(|e| e.downcast_ref::<std::io::Error>())
        .any(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
}
