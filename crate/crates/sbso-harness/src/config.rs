//! Experiment configuration: solver selection, budget rules, seeding.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use sbso_core::bso::{bso_run, BsoConfig};
use sbso_core::hybrid::{simplex_bso_run, HybridConfig};
use sbso_core::nms::nms_run;
use sbso_core::suite::SuiteId;
use sbso_core::{Evaluator, Problem, RandomSource, RunTrace};

use crate::HarnessError;

/// One of the compared solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverSpec {
    Bso,
    Nms,
    /// Simplex-BSO at the default balance parameter.
    SimplexBso,
    /// Simplex-BSO at an explicit balance parameter (`sbso-<lambda>`).
    SimplexBsoLambda(usize),
}

impl SolverSpec {
    pub fn name(&self) -> String {
        match self {
            SolverSpec::Bso => "bso".into(),
            SolverSpec::Nms => "nms".into(),
            SolverSpec::SimplexBso => "sbso".into(),
            SolverSpec::SimplexBsoLambda(l) => format!("sbso-{l}"),
        }
    }

    /// Execute one seeded run; the returned trace has exactly `budget`
    /// entries for any budget that allows initialization.
    pub fn run(&self, problem: &Problem, budget: usize, seed: u64) -> RunTrace {
        let mut ev = Evaluator::new(problem, budget);
        let mut rng = RandomSource::new(seed);
        match self {
            SolverSpec::Bso => {
                bso_run(&BsoConfig::default(), &mut ev, &mut rng).expect("default config is valid")
            }
            SolverSpec::Nms => {
                let x0: Vec<f64> = (0..problem.dim())
                    .map(|d| rng.uniform_in(problem.lower()[d], problem.upper()[d]))
                    .collect();
                nms_run(&x0, &mut ev);
                ev.into_trace()
            }
            SolverSpec::SimplexBso => {
                simplex_bso_run(&HybridConfig::default(), &mut ev, &mut rng)
                    .expect("default config is valid")
            }
            SolverSpec::SimplexBsoLambda(lambda) => {
                let config = HybridConfig {
                    local_budget_factor: *lambda,
                    ..HybridConfig::default()
                };
                simplex_bso_run(&config, &mut ev, &mut rng).expect("default config is valid")
            }
        }
    }
}

impl FromStr for SolverSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bso" => Ok(SolverSpec::Bso),
            "nms" => Ok(SolverSpec::Nms),
            "sbso" => Ok(SolverSpec::SimplexBso),
            other => match other.strip_prefix("sbso-") {
                Some(suffix) => suffix
                    .parse::<usize>()
                    .map(SolverSpec::SimplexBsoLambda)
                    .map_err(|_| format!("invalid solver `{other}`")),
                None => Err(format!(
                    "unknown solver `{other}` (expected bso, nms, sbso, or sbso-<lambda>)"
                )),
            },
        }
    }
}

impl fmt::Display for SolverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Evaluation budget per run: a fixed count, or `per_dim * n` for an
/// `n`-dimensional problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetRule {
    Fixed(usize),
    PerDim(usize),
}

impl BudgetRule {
    pub fn for_dim(&self, dim: usize) -> usize {
        match self {
            BudgetRule::Fixed(b) => *b,
            BudgetRule::PerDim(per) => per * dim,
        }
    }
}

impl FromStr for BudgetRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| format!("invalid budget `{s}` (expected e.g. 20000 or 10000n)"))
        };
        match s.strip_suffix('n') {
            Some(head) => parse(head).map(BudgetRule::PerDim),
            None => parse(s).map(BudgetRule::Fixed),
        }
    }
}

impl fmt::Display for BudgetRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetRule::Fixed(b) => write!(f, "{b}"),
            BudgetRule::PerDim(per) => write!(f, "{per}n"),
        }
    }
}

/// A full experiment: every selected solver runs `runs` times on every
/// problem of the suite, with per-triple seeds derived from `base_seed`.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub suite: SuiteId,
    pub solvers: Vec<SolverSpec>,
    pub runs: usize,
    pub budget: BudgetRule,
    pub base_seed: u64,
    pub out_dir: PathBuf,
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    /// Reject configurations the runner cannot honor: no solvers, zero
    /// runs, or a budget too small to initialize a population plus one
    /// simplex on some selected problem.
    pub fn validate(&self, problems: &[Problem]) -> Result<(), HarnessError> {
        if self.solvers.is_empty() {
            return Err(HarnessError::InvalidConfig("no solvers selected".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for s in &self.solvers {
            if !seen.insert(s.name()) {
                return Err(HarnessError::InvalidConfig(format!(
                    "solver `{s}` selected twice"
                )));
            }
        }
        if self.runs == 0 {
            return Err(HarnessError::InvalidConfig("runs must be positive".into()));
        }
        let pop = BsoConfig::default().pop_size;
        for p in problems {
            let budget = self.budget.for_dim(p.dim());
            let needed = pop + p.dim() + 1;
            if budget < needed {
                return Err(HarnessError::InvalidConfig(format!(
                    "budget {budget} below {needed} (pop_size + n + 1) for {}",
                    p.name()
                )));
            }
        }
        Ok(())
    }

    /// Worker count: explicit flag, then the `SBSO_WORKERS` environment
    /// variable, then all available cores.
    pub fn effective_workers(&self) -> usize {
        if let Some(w) = self.workers {
            return w.max(1);
        }
        if let Ok(var) = std::env::var("SBSO_WORKERS") {
            if let Ok(w) = var.trim().parse::<usize>() {
                return w.max(1);
            }
        }
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    }
}
