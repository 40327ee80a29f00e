use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gsb_cli::{execute, Caps, Command, CommandConfig};

/// Groebner-Shirshov bases, normal forms and growth of finitely presented
/// algebras.
#[derive(Parser)]
#[command(name = "gsb", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Write the JSON report here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    max_deg: Option<usize>,
    #[arg(long, global = true)]
    max_rules: Option<usize>,
    #[arg(long, global = true)]
    max_rounds: Option<usize>,
    /// Largest schema exponent checked during verification.
    #[arg(long, global = true)]
    schema_bound: Option<u32>,
    /// Reduction steps allowed per normal-form computation.
    #[arg(long, global = true)]
    step_budget: Option<usize>,
    /// Automaton state limit; defaults to $GSB_MAX_STATES when set.
    #[arg(long, global = true)]
    max_states: Option<usize>,
    /// Neither read nor write the `.gsb` file beside the input.
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Sub {
    /// Complete a presentation and save the system beside it.
    Complete { input: PathBuf },
    /// Check every composition of a system up to the schema bound.
    Verify { input: PathBuf },
    /// Normal form of a word.
    Nf { input: PathBuf, word: String },
    /// Decide whether two words are equal.
    Wp { input: PathBuf, left: String, right: String },
    /// Growth classification with the per-length census.
    Growth {
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        census: usize,
    },
    /// Gelfand-Kirillov dimension.
    Gkdim { input: PathBuf },
    /// Dimensions of the degree filtration up to n.
    Filtration {
        input: PathBuf,
        n: usize,
    },
    /// Whether comma-separated words generate a free submonoid of normal words.
    FreeCheck { input: PathBuf, generators: String },
    /// Generate the presentation G^k_n.
    Manturov {
        n: usize,
        k: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Generate and analyse the Ore extension k[y][x; sigma, delta].
    Ore {
        #[arg(long, default_value = "y")]
        sigma: String,
        #[arg(long, default_value = "0")]
        delta: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let (command, input, emit) = match cli.command {
        Sub::Complete { input } => (Command::Complete, Some(input), None),
        Sub::Verify { input } => (Command::Verify, Some(input), None),
        Sub::Nf { input, word } => (Command::Nf { word }, Some(input), None),
        Sub::Wp { input, left, right } => (Command::Wp { left, right }, Some(input), None),
        Sub::Growth { input, census } => (Command::Growth { census }, Some(input), None),
        Sub::Gkdim { input } => (Command::Gkdim, Some(input), None),
        Sub::Filtration { input, n } => (Command::Filtration { n }, Some(input), None),
        Sub::FreeCheck { input, generators } => (Command::FreeCheck { generators }, Some(input), None),
        Sub::Manturov { n, k, emit } => (Command::Manturov { n, k }, None, emit),
        Sub::Ore { sigma, delta, emit } => (Command::Ore { sigma, delta }, None, emit),
    };
    let o = cli.opts;
    let mut caps = Caps::default();
    let env_states = std::env::var("GSB_MAX_STATES").ok();
    if let Some(v) = env_states {
        match v.trim().parse() {
            Ok(n) => caps.max_states = n,
            Err(_) => {
                eprintln!("gsb: GSB_MAX_STATES must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        }
    }
    caps.max_deg = o.max_deg.unwrap_or(caps.max_deg);
    caps.max_rules = o.max_rules.unwrap_or(caps.max_rules);
    caps.max_rounds = o.max_rounds.unwrap_or(caps.max_rounds);
    caps.schema_bound = o.schema_bound.unwrap_or(caps.schema_bound);
    caps.step_budget = o.step_budget.unwrap_or(caps.step_budget);
    caps.max_states = o.max_states.unwrap_or(caps.max_states);

    let mut cfg = CommandConfig::new(command, input);
    cfg.caps = caps;
    cfg.output = o.output;
    cfg.emit = emit;
    cfg.use_cache = !o.no_cache;
    cfg.verbosity = o.verbose;
    cfg.echo = echo;
    ExitCode::from(execute(&cfg) as u8)
}
