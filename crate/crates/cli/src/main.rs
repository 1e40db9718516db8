use std::path::PathBuf;
use std::process::ExitCode;

use bmult_cli::{run, MethodOptions};
use clap::{Args, Parser, Subcommand};

/// Schur and Bogomolov multipliers of finite solvable groups given by
/// polycyclic presentations.
///
/// Exit codes: 0 ok, 1 input error, 2 inconsistent presentation,
/// 3 disagreement between methods, 4 resource bound or unstable tail
/// exponent, 5 internal verification failure.
#[derive(Parser, Debug)]
#[command(name = "bmult", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a presentation for consistency.
    Check {
        /// File path or `catalog:key?param=value&...`.
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Compute the Bogomolov multiplier (and the Schur multiplier).
    B0(ComputeArgs),
    /// Compute the Schur multiplier only.
    Multiplier(ComputeArgs),
    /// List catalog keys or emit a catalog entry as a presentation file.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Compute B0 for every presentation file in a directory.
    Survey {
        directory: PathBuf,
        #[command(flatten)]
        options: MethodOptions,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// List keys with their parameter constraints.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Print a catalog entry, e.g. `phi5_2111?p=5`.
    Emit {
        descriptor: String,
        /// Write to this file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// File path or `catalog:key?param=value&...`.
    input: String,
    #[command(flatten)]
    options: MethodOptions,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check { input, json } => run::check(&input, json),
        Command::B0(args) => run::compute(&args.input, &args.options, true),
        Command::Multiplier(args) => run::compute(&args.input, &args.options, false),
        Command::Catalog { action } => match action {
            CatalogAction::List { json } => run::catalog_list(json),
            CatalogAction::Emit { descriptor, output } => run::catalog_emit(&descriptor, output.as_deref()),
        },
        Command::Survey { directory, options } => run::survey(&directory, &options),
    };
    ExitCode::from(code)
}
