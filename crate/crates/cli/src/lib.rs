//! Library half of the `runsubseq` command-line tool: CSV bound sweeps and
//! the verification suites.

pub mod sweep;
pub mod verify;

use runsubseq::RunString;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] runsubseq::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// `FIRSTBIT:len,len,...` run-list form of a string.
pub fn format_runs(x: &RunString) -> String {
    let lens: Vec<String> = x.runs().iter().map(|v| v.to_string()).collect();
    format!("{}:{}", x.first_bit().as_char(), lens.join(","))
}
