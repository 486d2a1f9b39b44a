//! `tbtrellis`: build, reduce and verify tail-biting trellises from text files.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 parse error, 3 plan
//! error (nothing to shift, non-canonical result, no state reduction),
//! 4 verification failure.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod error;

use error::{exit, CliError};

#[derive(Parser, Debug)]
#[command(name = "tbtrellis", version, about = "Tail-biting code and error trellises and their reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print dimensions, row degrees, memory, constraint length and canonicity of a matrix.
    Check {
        /// Polynomial matrix file, one row per line, entries separated by commas.
        matrix: PathBuf,
    },
    /// Build a tail-biting trellis and print a summary.
    Trellis(TrellisArgs),
    /// Reduce a trellis by cyclically shifting subsequences.
    Reduce(ReduceArgs),
    /// Apply a plan's shift to every sequence in a file.
    Shift(ShiftArgs),
    /// Undo a plan's shift on every sequence in a file.
    Restore(ShiftArgs),
    /// Compare the trellis against brute-force enumeration.
    Verify {
        matrix: PathBuf,
        #[command(flatten)]
        target: Target,
    },
}

/// What to build: the error trellis of a received word under a parity-check
/// matrix, or the code trellis of a generator matrix.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Target {
    /// Received word file; the matrix is a parity-check matrix.
    #[arg(long, value_name = "Z_FILE")]
    error: Option<PathBuf>,
    /// Number of sections; the matrix is a generator matrix.
    #[arg(long, value_name = "N")]
    code: Option<usize>,
}

#[derive(Args, Debug)]
struct ExportArgs {
    /// Write a Graphviz DOT graph to this file (`-` for standard output).
    #[arg(long, value_name = "FILE")]
    export: Option<PathBuf>,
    /// Draw the subtrellis through this state in bold, e.g. `(1,0)`.
    #[arg(long, value_name = "STATE")]
    highlight: Option<String>,
    /// Repeat the first section at the end of the exported graph.
    #[arg(long)]
    planar: bool,
}

#[derive(Args, Debug)]
struct TrellisArgs {
    matrix: PathBuf,
    #[command(flatten)]
    target: Target,
    #[command(flatten)]
    export: ExportArgs,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct PlanChoice {
    /// Divide columns of H(D) by their monomial factors (the default).
    #[arg(long)]
    auto_forward: bool,
    /// Multiply columns of H(D), e.g. `2:2,3:2` for columns 2 and 3 by D^2.
    #[arg(long, value_name = "COL:L,...")]
    backward: Option<String>,
    /// Read the shift from a plan file.
    #[arg(long, value_name = "FILE")]
    plan: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    matrix: PathBuf,
    #[command(flatten)]
    target: Target,
    #[command(flatten)]
    choice: PlanChoice,
    /// Check every subtrellis embedding against brute-force enumeration.
    #[arg(long)]
    verify: bool,
    /// Write the chosen plan to this file.
    #[arg(long, value_name = "FILE")]
    plan_out: Option<PathBuf>,
    /// Export the reduced trellis; `--highlight` names an original state.
    #[command(flatten)]
    export: ExportArgs,
}

#[derive(Args, Debug)]
struct ShiftArgs {
    /// One sequence per line; blank lines and `#` comments are skipped.
    paths: PathBuf,
    /// Plan file with `column j: forward|backward l` lines.
    #[arg(long, value_name = "FILE")]
    plan: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<commands::Status, CliError> {
    match cli.command {
        Command::Check { matrix } => commands::check(&matrix, out),
        Command::Trellis(args) => commands::trellis(&args, out),
        Command::Reduce(args) => commands::reduce(&args, out),
        Command::Shift(args) => commands::shift(&args, false, out),
        Command::Restore(args) => commands::shift(&args, true, out),
        Command::Verify { matrix, target } => commands::verify(&matrix, &target, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(commands::Status::Ok) => ExitCode::SUCCESS,
        Ok(commands::Status::VerificationFailed) => ExitCode::from(exit::VERIFICATION),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
