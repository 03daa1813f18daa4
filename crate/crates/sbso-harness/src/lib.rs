//! Experiment orchestration for the Simplex-BSO benchmark pipeline:
//! configuration, seeded parallel execution over (solver, problem, run)
//! triples, plain-text persistence of traces and the history matrix, and
//! emission of L-curve and data-profile files.

pub mod cli;
pub mod config;
pub mod formats;
pub mod runner;

pub use config::{BudgetRule, ExperimentConfig, SolverSpec};
pub use runner::{load_history, run_experiment, ExperimentOutput};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io error at {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed file {path}: {reason}")]
    Malformed {
        path: std::path::PathBuf,
        reason: String,
    },
    #[error(transparent)]
    Suite(#[from] sbso_core::suite::SuiteError),
    #[error(transparent)]
    Vci(#[from] sbso_core::vci::VciError),
}

impl HarnessError {
    pub fn io(path: impl Into<std::path::PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| HarnessError::Io { path, source }
    }

    pub fn malformed(path: impl Into<std::path::PathBuf>, reason: impl Into<String>) -> Self {
        HarnessError::Malformed {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
