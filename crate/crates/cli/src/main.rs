//! `wpds`: safe Kleene solving, pre*/post* automata and the three
//! reachability-based checks from the command line.
//!
//! Exit codes: 0 solved or safe, 1 input error, 2 witness or violation.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wpds::semiring::SemiringKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "wpds", version, about = "Weighted pushdown reachability with witness detection")]
pub struct Cli {
    /// Semiring: minplus-int, maxplus-int, maxtimes-rat or bool. Overrides
    /// the input's `semiring` line; minplus-int when neither is given.
    #[arg(long, global = true, value_parser = parse_kind)]
    pub semiring: Option<SemiringKind>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Print the Kleene iterates.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Suppress timing output so that runs are byte-identical.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Repeat for more log output on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an equation system by safe Kleene iteration.
    Solve { file: PathBuf },
    /// Build the pre* automaton of a WPDS file.
    Pre {
        file: PathBuf,
        /// Target pattern such as `q` or `p X *`; repeatable. Defaults to
        /// the file's `target` lines.
        #[arg(long)]
        target: Vec<String>,
    },
    /// Build the post* automaton of a WPDS file.
    Post {
        file: PathBuf,
        /// Source configuration `p X`; defaults to the file's `source` line.
        #[arg(long)]
        source: Option<String>,
    },
    /// Evaluate the accepted weight of a configuration in an automaton dump.
    Movp {
        dump: PathBuf,
        /// Configuration `p X Y`, top of stack first.
        configuration: String,
    },
    /// Run one of the reachability checks.
    Check {
        #[command(subcommand)]
        kind: CheckKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckKind {
    /// Memory-allocation balance on a tagged WPDS.
    Alloc {
        file: PathBuf,
        /// Initial configuration `p X`; defaults to the file's `source` line.
        #[arg(long)]
        initial: Option<String>,
    },
    /// Correspondence assertions on a tagged WPDS.
    Corr {
        file: PathBuf,
        #[arg(long)]
        initial: Option<String>,
        /// Check only this label; all labels when omitted.
        #[arg(long)]
        label: Option<String>,
    },
    /// Shape-balancedness of a context-free grammar.
    Balance { file: PathBuf },
}

fn parse_kind(s: &str) -> Result<SemiringKind, String> {
    s.parse().map_err(|e: wpds::semiring::SemiringError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
