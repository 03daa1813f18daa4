//! Plain-text file formats: per-run trace files, per-(problem, solver)
//! history files, the experiment manifest, L-curve data, and data-profile
//! output. Floats are written in Rust's shortest round-trip form, so files
//! re-read bit-exactly and identical experiments produce identical bytes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sbso_core::suite::SuiteEntry;
use sbso_core::vci::{vci_compare, HistoryMatrix, Tolerance};
use sbso_core::RunTrace;

use crate::config::BudgetRule;
use crate::HarnessError;

fn write_atomic(path: &Path, contents: &str) -> Result<(), HarnessError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(HarnessError::io(parent))?;
    }
    let mut file = fs::File::create(path).map_err(HarnessError::io(path))?;
    file.write_all(contents.as_bytes())
        .map_err(HarnessError::io(path))?;
    Ok(())
}

fn parse_kv<'a>(
    line: &'a str,
    key: &str,
    path: &Path,
) -> Result<&'a str, HarnessError> {
    match line.split_once(',') {
        Some((k, v)) if k == key => Ok(v),
        _ => Err(HarnessError::malformed(
            path,
            format!("expected `{key},<value>`, found `{line}`"),
        )),
    }
}

fn parse_num<T: std::str::FromStr>(raw: &str, what: &str, path: &Path) -> Result<T, HarnessError> {
    raw.trim()
        .parse()
        .map_err(|_| HarnessError::malformed(path, format!("bad {what}: `{raw}`")))
}

// ---------------------------------------------------------------------------
// Per-run trace files
// ---------------------------------------------------------------------------

/// One persisted run.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceFile {
    pub solver: String,
    pub problem: String,
    pub dim: usize,
    pub seed: u64,
    pub budget: usize,
    pub f_min: f64,
    pub trace: RunTrace,
}

pub fn trace_file_name(solver: &str, problem: &str, run: usize) -> String {
    format!("{solver}__{problem}__r{run}.csv")
}

/// Header lines (solver, problem, dim, seed, budget, f_min, evals), a column
/// line, then one `eval_index,best_value` row per improvement point.
pub fn write_trace_file(path: &Path, data: &TraceFile) -> Result<(), HarnessError> {
    let mut out = String::new();
    out.push_str(&format!("solver,{}\n", data.solver));
    out.push_str(&format!("problem,{}\n", data.problem));
    out.push_str(&format!("dim,{}\n", data.dim));
    out.push_str(&format!("seed,{}\n", data.seed));
    out.push_str(&format!("budget,{}\n", data.budget));
    out.push_str(&format!("f_min,{}\n", data.f_min));
    out.push_str(&format!("evals,{}\n", data.trace.len()));
    out.push_str("eval,best\n");
    for &(k, v) in data.trace.improvements() {
        out.push_str(&format!("{k},{v}\n"));
    }
    write_atomic(path, &out)
}

pub fn read_trace_file(path: &Path) -> Result<TraceFile, HarnessError> {
    let text = fs::read_to_string(path).map_err(HarnessError::io(path))?;
    let mut lines = text.lines();
    let mut next = |key: &str| -> Result<String, HarnessError> {
        let line = lines
            .next()
            .ok_or_else(|| HarnessError::malformed(path, "truncated header"))?;
        Ok(parse_kv(line, key, path)?.to_string())
    };
    let solver = next("solver")?;
    let problem = next("problem")?;
    let dim = parse_num(&next("dim")?, "dim", path)?;
    let seed = parse_num(&next("seed")?, "seed", path)?;
    let budget = parse_num(&next("budget")?, "budget", path)?;
    let f_min = parse_num(&next("f_min")?, "f_min", path)?;
    let evals: usize = parse_num(&next("evals")?, "evals", path)?;
    match lines.next() {
        Some("eval,best") => {}
        other => {
            return Err(HarnessError::malformed(
                path,
                format!("expected column header, found {other:?}"),
            ))
        }
    }
    let mut improvements = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once(',')
            .ok_or_else(|| HarnessError::malformed(path, format!("bad row `{line}`")))?;
        improvements.push((
            parse_num(k, "eval index", path)?,
            parse_num(v, "best value", path)?,
        ));
    }
    let trace = RunTrace::from_improvements(evals, improvements)
        .map_err(|e| HarnessError::malformed(path, e.to_string()))?;
    Ok(TraceFile {
        solver,
        problem,
        dim,
        seed,
        budget,
        f_min,
        trace,
    })
}

// ---------------------------------------------------------------------------
// Per-(problem, solver) history files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct HistoryFile {
    pub problem: String,
    pub solver: String,
    pub dim: usize,
    pub f_min: f64,
    pub budget: usize,
    /// `(seed, trace)` per run, in run order.
    pub runs: Vec<(u64, RunTrace)>,
}

pub fn history_file_name(problem: &str, solver: &str) -> String {
    format!("{problem}__{solver}.csv")
}

pub fn write_history_file(path: &Path, data: &HistoryFile) -> Result<(), HarnessError> {
    let mut out = String::new();
    out.push_str(&format!("problem,{}\n", data.problem));
    out.push_str(&format!("solver,{}\n", data.solver));
    out.push_str(&format!("dim,{}\n", data.dim));
    out.push_str(&format!("f_min,{}\n", data.f_min));
    out.push_str(&format!("budget,{}\n", data.budget));
    out.push_str(&format!("runs,{}\n", data.runs.len()));
    for (r, (seed, trace)) in data.runs.iter().enumerate() {
        out.push_str(&format!("run,{r},seed,{seed},evals,{}\n", trace.len()));
        for &(k, v) in trace.improvements() {
            out.push_str(&format!("{k},{v}\n"));
        }
    }
    write_atomic(path, &out)
}

pub fn read_history_file(path: &Path) -> Result<HistoryFile, HarnessError> {
    let text = fs::read_to_string(path).map_err(HarnessError::io(path))?;
    let mut lines = text.lines().peekable();
    let next = |key: &str, lines: &mut std::iter::Peekable<std::str::Lines>| {
        let line = lines
            .next()
            .ok_or_else(|| HarnessError::malformed(path, "truncated header"))?;
        parse_kv(line, key, path).map(str::to_string)
    };
    let problem = next("problem", &mut lines)?;
    let solver = next("solver", &mut lines)?;
    let dim = parse_num(&next("dim", &mut lines)?, "dim", path)?;
    let f_min = parse_num(&next("f_min", &mut lines)?, "f_min", path)?;
    let budget = parse_num(&next("budget", &mut lines)?, "budget", path)?;
    let n_runs: usize = parse_num(&next("runs", &mut lines)?, "runs", path)?;

    let mut runs = Vec::with_capacity(n_runs);
    while let Some(line) = lines.next() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 || fields[0] != "run" || fields[2] != "seed" || fields[4] != "evals" {
            return Err(HarnessError::malformed(
                path,
                format!("expected run header, found `{line}`"),
            ));
        }
        let run_idx: usize = parse_num(fields[1], "run index", path)?;
        if run_idx != runs.len() {
            return Err(HarnessError::malformed(path, "run indices out of order"));
        }
        let seed: u64 = parse_num(fields[3], "seed", path)?;
        let evals: usize = parse_num(fields[5], "evals", path)?;
        let mut improvements = Vec::new();
        while let Some(peek) = lines.peek() {
            if peek.starts_with("run,") || peek.is_empty() {
                break;
            }
            let row = lines.next().expect("peeked");
            let (k, v) = row
                .split_once(',')
                .ok_or_else(|| HarnessError::malformed(path, format!("bad row `{row}`")))?;
            improvements.push((
                parse_num(k, "eval index", path)?,
                parse_num(v, "best value", path)?,
            ));
        }
        let trace = RunTrace::from_improvements(evals, improvements)
            .map_err(|e| HarnessError::malformed(path, e.to_string()))?;
        runs.push((seed, trace));
    }
    if runs.len() != n_runs {
        return Err(HarnessError::malformed(
            path,
            format!("declared {n_runs} runs, found {}", runs.len()),
        ));
    }
    Ok(HistoryFile {
        problem,
        solver,
        dim,
        f_min,
        budget,
        runs,
    })
}

// ---------------------------------------------------------------------------
// Experiment manifest
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestRecord {
    pub solver: String,
    pub problem: String,
    pub run: usize,
    pub seed: u64,
    pub evals: usize,
    pub final_best: f64,
    pub wall_secs: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub suite: String,
    pub budget: BudgetRule,
    pub runs: usize,
    pub base_seed: u64,
    pub solvers: Vec<String>,
    pub records: Vec<ManifestRecord>,
}

pub fn write_manifest(path: &Path, manifest: &Manifest) -> Result<(), HarnessError> {
    let mut out = String::new();
    out.push_str("# sbso experiment manifest\n");
    out.push_str(&format!("# suite,{}\n", manifest.suite));
    out.push_str(&format!("# budget,{}\n", manifest.budget));
    out.push_str(&format!("# runs,{}\n", manifest.runs));
    out.push_str(&format!("# base_seed,{}\n", manifest.base_seed));
    out.push_str(&format!("# solvers,{}\n", manifest.solvers.join(",")));
    out.push_str("solver,problem,run,seed,evals,final_best,wall_secs,status\n");
    for r in &manifest.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.solver,
            r.problem,
            r.run,
            r.seed,
            r.evals,
            r.final_best,
            r.wall_secs,
            if r.ok { "ok" } else { "failed" }
        ));
    }
    write_atomic(path, &out)
}

pub fn read_manifest(path: &Path) -> Result<Manifest, HarnessError> {
    let text = fs::read_to_string(path).map_err(HarnessError::io(path))?;
    let mut suite = None;
    let mut budget = None;
    let mut runs = None;
    let mut base_seed = None;
    let mut solvers: Vec<String> = Vec::new();
    let mut records = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# ") {
            if let Some((key, value)) = rest.split_once(',') {
                match key {
                    "suite" => suite = Some(value.to_string()),
                    "budget" => budget = Some(parse_num::<BudgetRule>(value, "budget", path)?),
                    "runs" => runs = Some(parse_num::<usize>(value, "runs", path)?),
                    "base_seed" => base_seed = Some(parse_num::<u64>(value, "base_seed", path)?),
                    "solvers" => solvers = value.split(',').map(str::to_string).collect(),
                    _ => {}
                }
            }
            continue;
        }
        if line.is_empty() || line.starts_with("solver,") {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 8 {
            return Err(HarnessError::malformed(
                path,
                format!("bad record `{line}`"),
            ));
        }
        records.push(ManifestRecord {
            solver: f[0].to_string(),
            problem: f[1].to_string(),
            run: parse_num(f[2], "run", path)?,
            seed: parse_num(f[3], "seed", path)?,
            evals: parse_num(f[4], "evals", path)?,
            final_best: parse_num(f[5], "final_best", path)?,
            wall_secs: parse_num(f[6], "wall_secs", path)?,
            ok: f[7] == "ok",
        });
    }
    Ok(Manifest {
        suite: suite.ok_or_else(|| HarnessError::malformed(path, "missing suite"))?,
        budget: budget.ok_or_else(|| HarnessError::malformed(path, "missing budget"))?,
        runs: runs.ok_or_else(|| HarnessError::malformed(path, "missing runs"))?,
        base_seed: base_seed.ok_or_else(|| HarnessError::malformed(path, "missing base_seed"))?,
        solvers,
        records,
    })
}

// ---------------------------------------------------------------------------
// L-curves
// ---------------------------------------------------------------------------

/// Accuracy floor keeping shifted values positive for log plots.
pub const ACCURACY_FLOOR: f64 = 1e-30;

/// Per (problem, solver): two columns `eval,mean_accuracy` where the
/// accuracy is the run-averaged best-so-far shifted by the problem's minimal
/// value and floored at [`ACCURACY_FLOOR`]. Rows are emitted at the first
/// evaluation, at every change of the mean, and at the full budget, which
/// reproduces the step curve exactly.
pub fn emit_lcurves(
    h: &HistoryMatrix,
    f_mins: &[f64],
    out_dir: &Path,
    problem_filter: Option<&[String]>,
) -> Result<Vec<PathBuf>, HarnessError> {
    if f_mins.len() != h.n_problems() {
        return Err(HarnessError::InvalidConfig(
            "one f_min per problem is required".into(),
        ));
    }
    let mut written = Vec::new();
    for j in 0..h.n_problems() {
        let name = &h.problems()[j].name;
        if let Some(filter) = problem_filter {
            if !filter.iter().any(|f| f == name) {
                continue;
            }
        }
        for i in 0..h.n_solvers() {
            let solver = &h.solvers()[i];
            let mut mean = vec![0.0; h.budget()];
            for r in 0..h.n_runs() {
                for (acc, v) in mean.iter_mut().zip(h.dense_run(i, j, r)) {
                    *acc += v;
                }
            }
            let n_r = h.n_runs() as f64;
            for acc in &mut mean {
                *acc /= n_r;
            }
            let shifted: Vec<f64> = mean
                .iter()
                .map(|m| (m - f_mins[j]).max(ACCURACY_FLOOR))
                .collect();

            let mut out = String::new();
            out.push_str(&format!("problem,{name}\n"));
            out.push_str(&format!("solver,{solver}\n"));
            out.push_str(&format!("f_min,{}\n", f_mins[j]));
            out.push_str(&format!("runs,{}\n", h.n_runs()));
            out.push_str(&format!("budget,{}\n", h.budget()));
            out.push_str("eval,mean_accuracy\n");
            let mut last = f64::NAN;
            for (k0, &v) in shifted.iter().enumerate() {
                let is_edge = k0 == 0 || k0 == shifted.len() - 1;
                if is_edge || v != last {
                    out.push_str(&format!("{},{}\n", k0 + 1, v));
                    last = v;
                }
            }
            let path = out_dir.join(format!("{name}__{solver}.csv"));
            write_atomic(&path, &out)?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Read back an L-curve file as `(eval, accuracy)` change points.
pub fn read_lcurve(path: &Path) -> Result<Vec<(usize, f64)>, HarnessError> {
    let text = fs::read_to_string(path).map_err(HarnessError::io(path))?;
    let mut rows = Vec::new();
    let mut in_data = false;
    for line in text.lines() {
        if line == "eval,mean_accuracy" {
            in_data = true;
            continue;
        }
        if !in_data || line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once(',')
            .ok_or_else(|| HarnessError::malformed(path, format!("bad row `{line}`")))?;
        rows.push((parse_num(k, "eval", path)?, parse_num(v, "accuracy", path)?));
    }
    Ok(rows)
}

/// Accuracy at evaluation `k` from L-curve change points (step semantics).
pub fn lcurve_value_at(rows: &[(usize, f64)], k: usize) -> Option<f64> {
    let pos = rows.partition_point(|&(eval, _)| eval <= k);
    if pos == 0 {
        None
    } else {
        Some(rows[pos - 1].1)
    }
}

// ---------------------------------------------------------------------------
// Data profiles and the comparison report
// ---------------------------------------------------------------------------

fn tau_tag(tau: f64) -> String {
    format!("{tau:e}")
}

fn profile_csv(solvers: &[String], curve: &sbso_core::vci::ProfileCurve) -> String {
    let mut out = String::from("solver,kappa,fraction\n");
    for (s, solver) in solvers.iter().enumerate() {
        for (g, kappa) in curve.kappa.iter().enumerate() {
            out.push_str(&format!("{solver},{kappa},{}\n", curve.fractions[s][g]));
        }
    }
    out
}

/// Step-1 profiles rescaled to raw evaluation counts (dimension
/// normalization dropped), for plots whose x-axis is the budget itself.
fn raw_scale_profile_csv(h: &HistoryMatrix, tau: Tolerance) -> Result<String, HarnessError> {
    use sbso_core::vci::{data_profile, kappa_grid, sample_mean, solve_time};
    let mean = sample_mean(h);
    let n_p = h.n_problems();
    let mut times = Vec::with_capacity(h.n_solvers() * n_p);
    for i in 0..h.n_solvers() {
        for j in 0..n_p {
            let curve = mean.curve(j, i);
            times.push(solve_time(curve, curve[0], h.floor_value(j), tau)?);
        }
    }
    // Dimension 0 turns t / (D + 1) into plain evaluation counts.
    let dims = vec![0usize; n_p];
    let grid = kappa_grid(h.budget(), &dims);
    let profile = data_profile(&times, &dims, h.n_solvers(), &grid)?;
    let mut out = String::from("solver,evals,fraction\n");
    for (s, solver) in h.solvers().iter().enumerate() {
        for (g, evals) in profile.kappa.iter().enumerate() {
            out.push_str(&format!("{solver},{evals},{}\n", profile.fractions[s][g]));
        }
    }
    Ok(out)
}

/// Per tolerance: a step-1 profile file (and its raw-evaluation rescaling),
/// a step-2 profile file, and the comparison report. Returns the written
/// paths.
pub fn emit_profiles(
    h: &HistoryMatrix,
    taus: &[f64],
    out_dir: &Path,
) -> Result<Vec<PathBuf>, HarnessError> {
    let mut written = Vec::new();
    for &tau in taus {
        let tolerance = Tolerance::new(tau)?;
        let report = vci_compare(h, tolerance)?;
        let tag = tau_tag(tau);

        let step1_path = out_dir.join(format!("profiles-step1-tau{tag}.csv"));
        write_atomic(&step1_path, &profile_csv(h.solvers(), &report.step1))?;
        let step1_raw_path = out_dir.join(format!("profiles-step1-evals-tau{tag}.csv"));
        write_atomic(&step1_raw_path, &raw_scale_profile_csv(h, tolerance)?)?;
        let step2_path = out_dir.join(format!("profiles-step2-tau{tag}.csv"));
        write_atomic(&step2_path, &profile_csv(h.solvers(), &report.step2))?;

        let mut text = String::new();
        text.push_str("vci comparison report\n");
        text.push_str(&format!("tau,{tau:e}\n"));
        text.push_str(&format!("budget,{}\n", h.budget()));
        text.push_str(&format!("problems,{}\n", h.n_problems()));
        text.push_str(&format!("runs,{}\n", h.n_runs()));
        text.push_str(&format!("winner,{}\n", report.winner_name));
        text.push_str(&format!("verdict,{}\n", report.verdict));
        text.push_str("step1_final_fraction\n");
        for (s, f) in report.step1.final_fractions().iter().enumerate() {
            text.push_str(&format!("{},{}\n", h.solvers()[s], f));
        }
        text.push_str("step2_final_fraction\n");
        for (s, f) in report.step2.final_fractions().iter().enumerate() {
            text.push_str(&format!("{},{}\n", h.solvers()[s], f));
        }
        let report_path = out_dir.join(format!("report-tau{tag}.txt"));
        write_atomic(&report_path, &text)?;

        written.extend([step1_path, step1_raw_path, step2_path, report_path]);
    }
    Ok(written)
}

// ---------------------------------------------------------------------------
// Suite manifest
// ---------------------------------------------------------------------------

/// Tab-delimited suite listing: family, dim, characteristic, lower, upper,
/// f_min; box bounds are comma-joined per-dimension values.
pub fn suite_manifest_tsv(entries: &[SuiteEntry]) -> String {
    let join = |v: &[f64]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = String::from("family\tdim\tcharacteristic\tlower\tupper\tf_min\n");
    for e in entries {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            e.family,
            e.dim,
            e.characteristic,
            join(&e.lower),
            join(&e.upper),
            e.f_min
        ));
    }
    out
}
