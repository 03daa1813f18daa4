//! Seeded parallel experiment execution and history assembly.
//!
//! The unit of work is one (solver, problem, run) triple. Triples share no
//! mutable state and derive their seeds from the base seed, so parallel and
//! sequential execution persist identical artifacts; the history matrix is
//! assembled in a deterministic single-threaded reduction afterwards.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use sbso_core::run_seed;
use sbso_core::suite::{list_suite, SuiteEntry, SuiteId};
use sbso_core::vci::{HistoryMatrix, ProblemInfo};
use sbso_core::{Problem, RunTrace};

use crate::config::ExperimentConfig;
use crate::formats::{
    history_file_name, trace_file_name, write_history_file, write_manifest, write_trace_file,
    HistoryFile, Manifest, ManifestRecord, TraceFile,
};
use crate::HarnessError;

/// Everything an experiment leaves behind, both on disk and in memory.
pub struct ExperimentOutput {
    pub history: HistoryMatrix,
    pub entries: Vec<SuiteEntry>,
    pub manifest: Manifest,
    pub out_dir: PathBuf,
}

struct TripleResult {
    trace: RunTrace,
    seed: u64,
    wall_secs: f64,
    ok: bool,
}

/// A run that panics is recorded as failed and contributes an
/// infinity-valued one-entry trace, so a long batch survives one bad run.
fn sentinel_trace() -> RunTrace {
    RunTrace::from_improvements(1, vec![(1, f64::INFINITY)]).expect("static sentinel is valid")
}

fn execute_triple(
    config: &ExperimentConfig,
    problem: &Problem,
    solver_idx: usize,
    problem_idx: usize,
    run_idx: usize,
) -> TripleResult {
    let seed = run_seed(
        config.base_seed,
        solver_idx as u64,
        problem_idx as u64,
        run_idx as u64,
    );
    let budget = config.budget.for_dim(problem.dim());
    let spec = config.solvers[solver_idx];
    let started = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        spec.run(problem, budget, seed)
    }));
    let wall_secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(trace) => TripleResult {
            trace,
            seed,
            wall_secs,
            ok: true,
        },
        Err(_) => TripleResult {
            trace: sentinel_trace(),
            seed,
            wall_secs,
            ok: false,
        },
    }
}

/// Run every (solver, problem, run) triple of the configuration, write one
/// trace file per triple, per-(problem, solver) history files, and the
/// manifest, and return the assembled history matrix.
///
/// Re-running the same configuration overwrites the same paths with
/// identical bytes (wall-clock columns in the manifest aside).
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput, HarnessError> {
    let entries = list_suite(config.suite);
    let problems: Vec<Problem> = entries.iter().map(SuiteEntry::problem).collect();
    config.validate(&problems)?;

    let n_s = config.solvers.len();
    let n_p = problems.len();
    let n_r = config.runs;
    let triples: Vec<(usize, usize, usize)> = (0..n_s)
        .flat_map(|i| (0..n_p).flat_map(move |j| (0..n_r).map(move |r| (i, j, r))))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.effective_workers())
        .build()
        .map_err(|e| HarnessError::InvalidConfig(e.to_string()))?;
    let results: Vec<TripleResult> = pool.install(|| {
        triples
            .par_iter()
            .map(|&(i, j, r)| execute_triple(config, &problems[j], i, j, r))
            .collect()
    });

    let flat = |i: usize, j: usize, r: usize| (i * n_p + j) * n_r + r;

    // Persist per-run traces.
    let traces_dir = config.out_dir.join("traces");
    for &(i, j, r) in &triples {
        let result = &results[flat(i, j, r)];
        let entry = &entries[j];
        let data = TraceFile {
            solver: config.solvers[i].name(),
            problem: entry.name(),
            dim: entry.dim,
            seed: result.seed,
            budget: config.budget.for_dim(entry.dim),
            f_min: entry.f_min,
            trace: result.trace.clone(),
        };
        let path = traces_dir.join(trace_file_name(&data.solver, &data.problem, r));
        write_trace_file(&path, &data)?;
    }

    // Persist the history matrix, one file per (problem, solver).
    let h_dir = config.out_dir.join("h");
    for j in 0..n_p {
        for i in 0..n_s {
            let entry = &entries[j];
            let data = HistoryFile {
                problem: entry.name(),
                solver: config.solvers[i].name(),
                dim: entry.dim,
                f_min: entry.f_min,
                budget: config.budget.for_dim(entry.dim),
                runs: (0..n_r)
                    .map(|r| {
                        let res = &results[flat(i, j, r)];
                        (res.seed, res.trace.clone())
                    })
                    .collect(),
            };
            let path = h_dir.join(history_file_name(&data.problem, &data.solver));
            write_history_file(&path, &data)?;
        }
    }

    let manifest = Manifest {
        suite: config.suite.to_string(),
        budget: config.budget,
        runs: n_r,
        base_seed: config.base_seed,
        solvers: config.solvers.iter().map(|s| s.name()).collect(),
        records: triples
            .iter()
            .map(|&(i, j, r)| {
                let res = &results[flat(i, j, r)];
                ManifestRecord {
                    solver: config.solvers[i].name(),
                    problem: entries[j].name(),
                    run: r,
                    seed: res.seed,
                    evals: res.trace.len(),
                    final_best: res.trace.final_best().unwrap_or(f64::INFINITY),
                    wall_secs: res.wall_secs,
                    ok: res.ok,
                }
            })
            .collect(),
    };
    write_manifest(&config.out_dir.join("manifest.csv"), &manifest)?;

    let history = assemble_history(
        &entries,
        &manifest.solvers,
        n_r,
        config,
        |i, j, r| {
            let res = &results[flat(i, j, r)];
            (res.trace.clone(), res.seed)
        },
    )?;

    Ok(ExperimentOutput {
        history,
        entries,
        manifest,
        out_dir: config.out_dir.clone(),
    })
}

fn assemble_history(
    entries: &[SuiteEntry],
    solvers: &[String],
    runs: usize,
    config: &ExperimentConfig,
    f: impl FnMut(usize, usize, usize) -> (RunTrace, u64),
) -> Result<HistoryMatrix, HarnessError> {
    let matrix_budget = entries
        .iter()
        .map(|e| config.budget.for_dim(e.dim))
        .max()
        .unwrap_or(0);
    let infos: Vec<ProblemInfo> = entries
        .iter()
        .map(|e| ProblemInfo {
            name: e.name(),
            dim: e.dim,
        })
        .collect();
    Ok(HistoryMatrix::from_fn(
        matrix_budget,
        solvers.to_vec(),
        infos,
        runs,
        f,
    )?)
}

/// Reload a persisted experiment: manifest plus the per-(problem, solver)
/// history files. Returns the matrix together with the suite entries (which
/// carry each problem's minimal value for L-curve shifting).
pub fn load_history(dir: &Path) -> Result<(HistoryMatrix, Vec<SuiteEntry>, Manifest), HarnessError> {
    let manifest = crate::formats::read_manifest(&dir.join("manifest.csv"))?;
    let suite: SuiteId = manifest
        .suite
        .parse()
        .map_err(|e: sbso_core::suite::SuiteError| HarnessError::InvalidConfig(e.to_string()))?;
    let entries = list_suite(suite);
    let h_dir = dir.join("h");

    let mut budget = 0usize;
    let mut all: Vec<Vec<(u64, RunTrace)>> = Vec::with_capacity(manifest.solvers.len() * entries.len());
    for solver in &manifest.solvers {
        for entry in &entries {
            let path = h_dir.join(history_file_name(&entry.name(), solver));
            let file = crate::formats::read_history_file(&path)?;
            if file.runs.len() != manifest.runs {
                return Err(HarnessError::malformed(
                    &path,
                    format!("expected {} runs, found {}", manifest.runs, file.runs.len()),
                ));
            }
            budget = budget.max(file.budget);
            all.push(file.runs);
        }
    }
    let infos: Vec<ProblemInfo> = entries
        .iter()
        .map(|e| ProblemInfo {
            name: e.name(),
            dim: e.dim,
        })
        .collect();
    let n_p = entries.len();
    let history = HistoryMatrix::from_fn(
        budget,
        manifest.solvers.clone(),
        infos,
        manifest.runs,
        |i, j, r| {
            let (seed, trace) = &all[i * n_p + j][r];
            (trace.clone(), *seed)
        },
    )?;
    Ok((history, entries, manifest))
}
