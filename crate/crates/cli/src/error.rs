use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OTHER: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const PLAN: u8 = 3;
    pub const VERIFICATION: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    /// A library error attributable to one input file.
    #[error("{}: {source}", path.display())]
    Input {
        path: PathBuf,
        source: tbtrellis::Error,
    },

    #[error(transparent)]
    Lib(#[from] tbtrellis::Error),

    #[error("{0}")]
    Usage(String),
}

fn code_of(e: &tbtrellis::Error) -> u8 {
    use tbtrellis::Error::*;
    match e {
        Parse { .. } => exit::PARSE,
        EmptyPlan | NotCanonical(_) | NoStateReduction { .. } | InvalidPlan(_) => exit::PLAN,
        SyndromeMismatch => exit::VERIFICATION,
        _ => exit::OTHER,
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => exit::OTHER,
            CliError::Input { source, .. } => code_of(source),
            CliError::Lib(e) => code_of(e),
            CliError::Usage(_) => exit::PARSE,
        }
    }
}
