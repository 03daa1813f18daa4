//! Command-line interface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use sbso_core::suite::SuiteId;

use crate::config::{BudgetRule, ExperimentConfig, SolverSpec};

fn parse_suite(s: &str) -> Result<SuiteId, String> {
    s.parse().map_err(|e: sbso_core::suite::SuiteError| e.to_string())
}

fn parse_tau(s: &str) -> Result<f64, String> {
    let tau: f64 = s.parse().map_err(|_| format!("invalid tolerance `{s}`"))?;
    if tau > 0.0 && tau < 1.0 {
        Ok(tau)
    } else {
        Err(format!("tolerance `{s}` must lie strictly between 0 and 1"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sbso",
    about = "Benchmark harness for BSO, Nelder-Mead, and Simplex-BSO",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Benchmark suite: hedar, hedar-unimodal, or hedar-multimodal.
    #[arg(long, value_parser = parse_suite)]
    pub suite: SuiteId,
    /// Comma-separated solvers: bso, nms, sbso, sbso-<lambda>.
    #[arg(long, value_delimiter = ',', required = true)]
    pub solvers: Vec<SolverSpec>,
    /// Independent runs per (solver, problem) pair.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
    pub runs: u32,
    /// Evaluations per run: a fixed count like 20000, or 10000n per dimension.
    #[arg(long, default_value = "20000")]
    pub budget: BudgetRule,
    /// Base seed; per-run seeds are derived per (solver, problem, run).
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Output directory for traces, the history matrix, and the manifest.
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads (default: SBSO_WORKERS or all cores).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Benchmark suite to sweep over.
    #[arg(long, value_parser = parse_suite)]
    pub suite: SuiteId,
    /// Balance-parameter values; each becomes one sbso-<lambda> solver.
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambdas: Vec<usize>,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
    pub runs: u32,
    #[arg(long, default_value = "20000")]
    pub budget: BudgetRule,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an experiment over a suite and persist traces, H, and manifest.
    Run(RunArgs),
    /// Balance-parameter sensitivity sweep: one solver per lambda value.
    Sweep(SweepArgs),
    /// Emit per-(problem, solver) L-curve files from persisted results.
    Lcurves {
        /// Directory written by `run` or `sweep`.
        #[arg(long)]
        results: PathBuf,
        /// Output directory (default: <results>/lcurves).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Restrict to these problem instances (e.g. beale-2,sphere-10).
        #[arg(long, value_delimiter = ',')]
        problems: Vec<String>,
    },
    /// Emit data-profile files and the comparison report per tolerance.
    Profiles {
        #[arg(long)]
        results: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Convergence tolerances.
        #[arg(long, value_delimiter = ',', default_value = "1e-7", value_parser = parse_tau)]
        taus: Vec<f64>,
    },
    /// Print the suite manifest as a tab-delimited table.
    List {
        #[arg(long, value_parser = parse_suite)]
        suite: SuiteId,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl RunArgs {
    pub fn into_config(self) -> ExperimentConfig {
        ExperimentConfig {
            suite: self.suite,
            solvers: self.solvers,
            runs: self.runs as usize,
            budget: self.budget,
            base_seed: self.seed,
            out_dir: self.out,
            workers: self.workers,
        }
    }
}

impl SweepArgs {
    pub fn into_config(self) -> ExperimentConfig {
        ExperimentConfig {
            suite: self.suite,
            solvers: self
                .lambdas
                .into_iter()
                .map(SolverSpec::SimplexBsoLambda)
                .collect(),
            runs: self.runs as usize,
            budget: self.budget,
            base_seed: self.seed,
            out_dir: self.out,
            workers: self.workers,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_run_command() {
        let cli = Cli::try_parse_from([
            "sbso", "run", "--suite", "hedar", "--solvers", "bso,nms,sbso", "--runs", "50",
            "--budget", "20000", "--seed", "42", "--out", "results/",
        ])
        .unwrap();
        match cli.command {
            Command::Run(args) => {
                let config = args.into_config();
                assert_eq!(config.suite, SuiteId::Hedar);
                assert_eq!(
                    config.solvers,
                    vec![SolverSpec::Bso, SolverSpec::Nms, SolverSpec::SimplexBso]
                );
                assert_eq!(config.runs, 50);
                assert_eq!(config.budget, BudgetRule::Fixed(20_000));
                assert_eq!(config.base_seed, 42);
            }
            other => panic!("unexpected command {other:?}"),
        }
    }

    #[test]
    fn parses_the_sweep_command() {
        let cli = Cli::try_parse_from([
            "sbso", "sweep", "--suite", "hedar", "--lambdas", "20,30,40,50,60", "--runs", "10",
            "--budget", "20000", "--seed", "7", "--out", "sweep/",
        ])
        .unwrap();
        match cli.command {
            Command::Sweep(args) => {
                let config = args.into_config();
                assert_eq!(config.solvers.len(), 5);
                assert_eq!(config.solvers[0], SolverSpec::SimplexBsoLambda(20));
                assert_eq!(config.solvers[4].name(), "sbso-60");
            }
            other => panic!("unexpected command {other:?}"),
        }
    }

    #[test]
    fn rejects_zero_runs_and_unknown_flags() {
        assert!(Cli::try_parse_from([
            "sbso", "run", "--suite", "hedar", "--solvers", "bso", "--runs", "0", "--out", "x",
        ])
        .is_err());
        assert!(Cli::try_parse_from([
            "sbso", "run", "--suite", "hedar", "--solvers", "bso", "--out", "x", "--bogus",
        ])
        .is_err());
        assert!(Cli::try_parse_from(["sbso", "run", "--suite", "cec2017", "--solvers", "bso", "--out", "x"]).is_err());
        assert!(Cli::try_parse_from(["sbso", "profiles", "--results", "r", "--taus", "2.0"]).is_err());
    }

    #[test]
    fn per_dimension_budgets_parse() {
        let cli = Cli::try_parse_from([
            "sbso", "run", "--suite", "hedar", "--solvers", "sbso", "--budget", "10000n", "--out",
            "x",
        ])
        .unwrap();
        match cli.command {
            Command::Run(args) => assert_eq!(args.budget, BudgetRule::PerDim(10_000)),
            other => panic!("unexpected command {other:?}"),
        }
    }
}
