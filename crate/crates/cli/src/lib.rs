//! Scenario runner, script interpreter and report formats for `dle`.

pub mod report;
pub mod scenarios;
pub mod script;

use dle_core::homology::HomologyOptions;

/// Errors that stop a run before any report is produced; all map to exit
/// status 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("unknown scenario {0}")]
    UnknownScenario(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: parse error: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: undefined name {name}")]
    UndefinedName { line: usize, name: String },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::UnknownScenario(_) => "UnknownScenario",
            CliError::InvalidParameter(_) => "InvalidParameter",
            CliError::Parse { .. } => "ParseError",
            CliError::UndefinedName { .. } => "UndefinedName",
            CliError::Io(_) => "Io",
        }
    }
}

/// Graded homology options from the flags, falling back to `DLE_CUTOFF`
/// for the cutoff.
pub fn homology_options(cutoff: Option<i64>, window: Option<usize>, env_cutoff: Option<&str>) -> Result<HomologyOptions, CliError> {
    let cutoff = match (cutoff, env_cutoff) {
        (Some(c), _) => Some(c),
        (None, Some(s)) => Some(s.trim().parse().map_err(|_| CliError::InvalidParameter(format!("DLE_CUTOFF = {s:?}")))?),
        (None, None) => None,
    };
    Ok(HomologyOptions { cutoff, window, ..Default::default() })
}
