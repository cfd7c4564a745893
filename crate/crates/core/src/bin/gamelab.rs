use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gamelab::corpus;
use gamelab::harness::{self, Command, GameKind, HarnessError, MatrixConfig, ReportFormat, RunConfig};
use gamelab::model::AttackModel;
use gamelab::reductions::{Direction, TieBreakMode};

/// Caps the rayon worker pool when set.
const WORKERS_ENV: &str = "GAMELAB_WORKERS";

#[derive(Parser)]
#[command(name = "gamelab", version, about = "IND/CSS security games on toy public-key schemes")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Run one experiment.
    Run(RunArgs),
    /// Compare an adversary's advantage with its transform's.
    Reduce(ReduceArgs),
    /// Run every cell of a matrix config file.
    Matrix(MatrixArgs),
    /// Estimate the advantage at several security parameters.
    Sweep(SweepArgs),
    /// Print the corpus registry.
    List {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Read the config (or a report's embedded config) from a JSON file; other flags are ignored.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    atk: Option<AttackModel>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    adversary: Option<String>,
    #[arg(long)]
    sampler: Option<String>,
    #[arg(long, short = 'k')]
    k: Option<u32>,
    #[arg(long, short = 'n')]
    trials: Option<u64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate every coin tape instead of sampling.
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    compact: bool,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    game: Option<GameKind>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    direction: Option<Direction>,
    #[arg(long, default_value = "analysis_coinflip")]
    tie_break: TieBreakMode,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    game: Option<GameKind>,
    /// Comma-separated, ascending.
    #[arg(long, value_delimiter = ',')]
    ks: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    exponents: Vec<f64>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct MatrixArgs {
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the summary table as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T, HarnessError> {
    v.ok_or_else(|| HarnessError::Config(format!("missing --{flag}")))
}

fn build_config(command: Command, c: CommonArgs) -> Result<RunConfig, HarnessError> {
    if let Some(path) = &c.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        let mut config = harness::parse_config(&text)?;
        if c.out.is_some() {
            config.output = c.out;
        }
        return Ok(config);
    }
    let mut config = RunConfig::new(
        required(c.atk, "atk")?,
        &required(c.scheme, "scheme")?,
        &required(c.adversary, "adversary")?,
        required(c.k, "k")?,
    );
    config.command = command;
    config.sampler = c.sampler;
    config.trials = c.trials;
    config.epsilon = c.epsilon;
    config.delta = c.delta;
    config.seed = c.seed;
    config.exact = c.exact;
    config.output = c.out;
    config.format = if c.compact { ReportFormat::Compact } else { ReportFormat::Pretty };
    Ok(config)
}

fn run_config(config: RunConfig) -> Result<(), HarnessError> {
    let report = harness::execute(&config)?;
    if let Some(path) = &config.output {
        report.write_to(path)?;
    }
    let _ = std::io::stdout().lock().write_all(&report.to_bytes());
    Ok(())
}

fn list(json: bool) {
    let mut text = String::new();
    if json {
        text = serde_json::to_string_pretty(corpus::ENTRIES).expect("registry serializes") + "\n";
    } else {
        for e in corpus::ENTRIES {
            let aliases = if e.aliases.is_empty() { String::new() } else { format!(" ({})", e.aliases.join(", ")) };
            let kind = format!("{:?}", e.kind).to_lowercase();
            text += &format!("{kind:<14} {:<38} {}\n", format!("{}{aliases}", e.id), e.description);
        }
    }
    // A closed pipe (`gamelab list | head`) is not an error.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn matrix(args: MatrixArgs) -> Result<i32, HarnessError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| HarnessError::Config(format!("{}: {e}", args.config.display())))?;
    let config = MatrixConfig::parse(&text)?;
    let report = harness::run_matrix(&config);
    if let Some(path) = &args.out {
        std::fs::write(path, serde_json::to_vec_pretty(&report).expect("matrix report serializes"))?;
    }
    if let Some(path) = &args.csv {
        report.write_csv(path)?;
    }
    let _ = std::io::stdout().lock().write_all(report.to_csv_string().as_bytes());
    Ok(report.exit_code())
}

fn dispatch(cli: Cli) -> Result<i32, HarnessError> {
    match cli.verb {
        Verb::Run(a) => {
            let mut config = build_config(Command::Run, a.common)?;
            if a.game.is_some() {
                config.game = a.game;
            }
            run_config(config)?;
        }
        Verb::Reduce(a) => {
            let from_file = a.common.config.is_some();
            let mut config = build_config(Command::Reduce, a.common)?;
            if !from_file {
                config.direction = Some(required(a.direction, "direction")?);
                config.tie_break = a.tie_break;
            }
            run_config(config)?;
        }
        Verb::Sweep(a) => {
            let from_file = a.common.config.is_some();
            let mut config = build_config(Command::Sweep, a.common)?;
            if !from_file {
                config.game = a.game;
                config.ks = a.ks;
                config.exponents = a.exponents;
            }
            run_config(config)?;
        }
        Verb::Matrix(a) => return matrix(a),
        Verb::List { json } => list(json),
    }
    Ok(0)
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
