//! VCI benchmarking: sample mean/variance matrices over run histories,
//! confidence bounds, convergence times, data profiles, and the two-step
//! winner comparison (mean profiles first, then the winner's upper bound
//! against the other solvers' lower bounds).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::math;
use crate::trace::RunTrace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VciError {
    #[error("history extents must all be positive")]
    EmptyExtent,
    #[error("history requires a trace per (solver, problem, run) triple")]
    IncompleteHistory,
    #[error("trace length exceeds the history budget")]
    TraceTooLong,
    #[error("traces must contain at least one evaluation")]
    EmptyTrace,
    #[error("sample variance requires at least two runs")]
    InsufficientRuns,
    #[error("statistic shapes disagree")]
    ShapeMismatch,
    #[error("reference value f0 lies below f_L")]
    InconsistentReference,
    #[error("tolerance must lie strictly between 0 and 1")]
    BadTolerance,
    #[error("data profiles need a non-empty problem set")]
    EmptyProblemSet,
    #[error("the comparison needs at least two solvers")]
    NeedTwoSolvers,
}

/// Problem metadata carried by a history: display name and dimension `D_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInfo {
    pub name: String,
    pub dim: usize,
}

/// Convergence tolerance `tau` in (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn new(tau: f64) -> Result<Self, VciError> {
        if tau > 0.0 && tau < 1.0 {
            Ok(Tolerance(tau))
        } else {
            Err(VciError::BadTolerance)
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// The 4-D record H(k, r, j, i): best value within `k` evaluations at run
/// `r` of solver `i` on problem `j`. Runs are stored as compressed traces;
/// dense slices are reconstructed on demand with the final value held past a
/// trace's end.
#[derive(Debug, Clone)]
pub struct HistoryMatrix {
    budget: usize,
    runs: usize,
    solvers: Vec<String>,
    problems: Vec<ProblemInfo>,
    traces: Vec<RunTrace>, // [(i * n_p + j) * n_r + r]
    seeds: Vec<u64>,
}

impl HistoryMatrix {
    pub fn from_parts(
        budget: usize,
        solvers: Vec<String>,
        problems: Vec<ProblemInfo>,
        runs: usize,
        traces: Vec<RunTrace>,
        seeds: Vec<u64>,
    ) -> Result<Self, VciError> {
        if budget == 0 || runs == 0 || solvers.is_empty() || problems.is_empty() {
            return Err(VciError::EmptyExtent);
        }
        let expected = solvers.len() * problems.len() * runs;
        if traces.len() != expected || seeds.len() != expected {
            return Err(VciError::IncompleteHistory);
        }
        for trace in &traces {
            if trace.is_empty() {
                return Err(VciError::EmptyTrace);
            }
            if trace.len() > budget {
                return Err(VciError::TraceTooLong);
            }
        }
        Ok(HistoryMatrix {
            budget,
            runs,
            solvers,
            problems,
            traces,
            seeds,
        })
    }

    /// Build a history by running `f` over every (solver, problem, run)
    /// triple in index order.
    pub fn from_fn(
        budget: usize,
        solvers: Vec<String>,
        problems: Vec<ProblemInfo>,
        runs: usize,
        mut f: impl FnMut(usize, usize, usize) -> (RunTrace, u64),
    ) -> Result<Self, VciError> {
        let mut traces = Vec::with_capacity(solvers.len() * problems.len() * runs);
        let mut seeds = Vec::with_capacity(traces.capacity());
        for i in 0..solvers.len() {
            for j in 0..problems.len() {
                for r in 0..runs {
                    let (trace, seed) = f(i, j, r);
                    traces.push(trace);
                    seeds.push(seed);
                }
            }
        }
        Self::from_parts(budget, solvers, problems, runs, traces, seeds)
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn n_runs(&self) -> usize {
        self.runs
    }

    pub fn n_problems(&self) -> usize {
        self.problems.len()
    }

    pub fn n_solvers(&self) -> usize {
        self.solvers.len()
    }

    pub fn solvers(&self) -> &[String] {
        &self.solvers
    }

    pub fn problems(&self) -> &[ProblemInfo] {
        &self.problems
    }

    pub fn problem_dims(&self) -> Vec<usize> {
        self.problems.iter().map(|p| p.dim).collect()
    }

    fn flat(&self, i: usize, j: usize, r: usize) -> usize {
        (i * self.problems.len() + j) * self.runs + r
    }

    pub fn trace(&self, i: usize, j: usize, r: usize) -> &RunTrace {
        &self.traces[self.flat(i, j, r)]
    }

    pub fn seed(&self, i: usize, j: usize, r: usize) -> u64 {
        self.seeds[self.flat(i, j, r)]
    }

    /// Dense best-so-far sequence of run `r` of (solver `i`, problem `j`),
    /// padded to the budget.
    pub fn dense_run(&self, i: usize, j: usize, r: usize) -> Vec<f64> {
        self.trace(i, j, r).dense_padded(self.budget)
    }

    /// Smallest final value any solver reached on problem `j` over all runs.
    pub fn floor_value(&self, j: usize) -> f64 {
        let mut acc = f64::INFINITY;
        for i in 0..self.n_solvers() {
            for r in 0..self.runs {
                if let Some(v) = self.trace(i, j, r).final_best() {
                    if v < acc {
                        acc = v;
                    }
                }
            }
        }
        acc
    }
}

/// A 3-D statistic over (k, j, i), stored as per-(j, i) curves of length
/// `budget`.
#[derive(Debug, Clone, PartialEq)]
pub struct StatMatrix {
    budget: usize,
    n_problems: usize,
    n_solvers: usize,
    data: Vec<f64>, // [(i * n_p + j) * budget + k]
}

impl StatMatrix {
    fn zeroed(budget: usize, n_problems: usize, n_solvers: usize) -> Self {
        StatMatrix {
            budget,
            n_problems,
            n_solvers,
            data: vec![0.0; budget * n_problems * n_solvers],
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn n_problems(&self) -> usize {
        self.n_problems
    }

    pub fn n_solvers(&self) -> usize {
        self.n_solvers
    }

    pub fn curve(&self, j: usize, i: usize) -> &[f64] {
        let start = (i * self.n_problems + j) * self.budget;
        &self.data[start..start + self.budget]
    }

    fn curve_mut(&mut self, j: usize, i: usize) -> &mut [f64] {
        let start = (i * self.n_problems + j) * self.budget;
        &mut self.data[start..start + self.budget]
    }

    fn same_shape(&self, other: &StatMatrix) -> bool {
        self.budget == other.budget
            && self.n_problems == other.n_problems
            && self.n_solvers == other.n_solvers
    }
}

/// Sample mean over runs: `mean(k, j, i) = sum_r H(k, r, j, i) / n_r`,
/// summed in run order.
pub fn sample_mean(h: &HistoryMatrix) -> StatMatrix {
    let mut out = StatMatrix::zeroed(h.budget(), h.n_problems(), h.n_solvers());
    let n_r = h.n_runs() as f64;
    for i in 0..h.n_solvers() {
        for j in 0..h.n_problems() {
            let curve = out.curve_mut(j, i);
            for r in 0..h.n_runs() {
                for (acc, v) in curve.iter_mut().zip(h.dense_run(i, j, r)) {
                    *acc += v;
                }
            }
            for acc in curve.iter_mut() {
                *acc /= n_r;
            }
        }
    }
    out
}

/// Sample variance over runs with the `n_r - 1` denominator.
pub fn sample_variance(h: &HistoryMatrix, mean: &StatMatrix) -> Result<StatMatrix, VciError> {
    if h.n_runs() < 2 {
        return Err(VciError::InsufficientRuns);
    }
    if h.budget() != mean.budget
        || h.n_problems() != mean.n_problems
        || h.n_solvers() != mean.n_solvers
    {
        return Err(VciError::ShapeMismatch);
    }
    let mut out = StatMatrix::zeroed(h.budget(), h.n_problems(), h.n_solvers());
    let denom = (h.n_runs() - 1) as f64;
    for i in 0..h.n_solvers() {
        for j in 0..h.n_problems() {
            let mean_curve = mean.curve(j, i).to_vec();
            let curve = out.curve_mut(j, i);
            for r in 0..h.n_runs() {
                for ((acc, m), v) in curve.iter_mut().zip(&mean_curve).zip(h.dense_run(i, j, r)) {
                    let d = v - m;
                    *acc += d * d;
                }
            }
            for acc in curve.iter_mut() {
                *acc /= denom;
            }
        }
    }
    Ok(out)
}

/// Confidence bounds `mean +- 2 * sqrt(var) / sqrt(n_r)`, elementwise.
pub fn confidence_bounds(
    mean: &StatMatrix,
    variance: &StatMatrix,
    n_runs: usize,
) -> (StatMatrix, StatMatrix) {
    assert!(mean.same_shape(variance), "statistic shapes must agree");
    let root_runs = math::sqrt(n_runs as f64);
    let mut upper = mean.clone();
    let mut lower = mean.clone();
    for ((u, l), v) in upper
        .data
        .iter_mut()
        .zip(lower.data.iter_mut())
        .zip(&variance.data)
    {
        let sd = math::sqrt(*v);
        let half_width = 2.0 * sd / root_runs;
        *u += half_width;
        *l -= half_width;
    }
    (upper, lower)
}

/// Evaluations a curve needs to satisfy the convergence condition, or never.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveTime {
    /// 1-based evaluation count at which the condition first holds.
    Within(usize),
    Never,
}

impl SolveTime {
    pub fn is_finite(self) -> bool {
        matches!(self, SolveTime::Within(_))
    }
}

impl core::fmt::Display for SolveTime {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SolveTime::Within(k) => write!(f, "{k}"),
            SolveTime::Never => f.write_str("inf"),
        }
    }
}

/// Smallest `k` with `f0 - b(k) >= (1 - tau)(f0 - f_l)`.
///
/// `b` is scanned in order, so the first crossing is found even for bound
/// curves that are not monotone.
pub fn solve_time(b: &[f64], f0: f64, f_l: f64, tau: Tolerance) -> Result<SolveTime, VciError> {
    if f0 < f_l {
        return Err(VciError::InconsistentReference);
    }
    let threshold = (1.0 - tau.get()) * (f0 - f_l);
    for (k0, &v) in b.iter().enumerate() {
        if f0 - v >= threshold {
            return Ok(SolveTime::Within(k0 + 1));
        }
    }
    Ok(SolveTime::Never)
}

/// A family of data profiles over one `kappa` grid: `fractions[s][g]` is the
/// fraction of problems solver `s` solves within `kappa[g]` simplex gradients.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    pub kappa: Vec<f64>,
    pub fractions: Vec<Vec<f64>>,
}

impl ProfileCurve {
    /// Solved fraction of each solver at the last grid point.
    pub fn final_fractions(&self) -> Vec<f64> {
        self.fractions
            .iter()
            .map(|f| *f.last().expect("grid is non-empty"))
            .collect()
    }

    /// Trapezoidal area under solver `s`'s profile.
    pub fn area(&self, s: usize) -> f64 {
        let f = &self.fractions[s];
        self.kappa
            .windows(2)
            .zip(f.windows(2))
            .map(|(k, v)| (k[1] - k[0]) * (v[0] + v[1]) / 2.0)
            .sum()
    }

    /// Fraction of solver `s` at the largest grid point not exceeding
    /// `kappa`; zero when the whole grid lies above it.
    pub fn fraction_at(&self, s: usize, kappa: f64) -> f64 {
        let pos = self.kappa.partition_point(|&k| k <= kappa);
        if pos == 0 {
            0.0
        } else {
            self.fractions[s][pos - 1]
        }
    }
}

/// Cumulative fraction of problems solved per solver:
/// `d_s(kappa) = |{p : t(p, s) / (D_p + 1) <= kappa}| / n_p`,
/// with `times` indexed `[s * n_p + p]`. Infinite times never count.
pub fn data_profile(
    times: &[SolveTime],
    dims: &[usize],
    n_solvers: usize,
    grid: &[f64],
) -> Result<ProfileCurve, VciError> {
    let n_p = dims.len();
    if n_p == 0 {
        return Err(VciError::EmptyProblemSet);
    }
    if times.len() != n_p * n_solvers {
        return Err(VciError::ShapeMismatch);
    }
    let mut fractions = Vec::with_capacity(n_solvers);
    for s in 0..n_solvers {
        let scaled: Vec<Option<f64>> = (0..n_p)
            .map(|p| match times[s * n_p + p] {
                SolveTime::Within(t) => Some(t as f64 / (dims[p] + 1) as f64),
                SolveTime::Never => None,
            })
            .collect();
        let row: Vec<f64> = grid
            .iter()
            .map(|&kappa| {
                let solved = scaled
                    .iter()
                    .filter(|t| matches!(t, Some(v) if *v <= kappa))
                    .count();
                solved as f64 / n_p as f64
            })
            .collect();
        fractions.push(row);
    }
    Ok(ProfileCurve {
        kappa: grid.to_vec(),
        fractions,
    })
}

/// 200 log-spaced budget points from one simplex gradient up to the full
/// budget of the smallest-dimension problem.
pub fn kappa_grid(budget: usize, dims: &[usize]) -> Vec<f64> {
    const POINTS: usize = 200;
    let min_dim = dims.iter().copied().min().unwrap_or(1);
    let max_kappa = (budget as f64 / (min_dim + 1) as f64).max(1.0);
    let log_max = math::ln(max_kappa);
    (0..POINTS)
        .map(|g| math::exp(log_max * g as f64 / (POINTS - 1) as f64))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The winner keeps the largest solved fraction when its upper bound is
    /// profiled against the others' lower bounds.
    Significant,
    /// The winner leads on average only.
    AverageOnly,
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Verdict::Significant => f.write_str("significant"),
            Verdict::AverageOnly => f.write_str("average-only"),
        }
    }
}

/// Outcome of the two-step comparison.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub tau: f64,
    pub winner: usize,
    pub winner_name: String,
    pub step1: ProfileCurve,
    pub step2: ProfileCurve,
    pub verdict: Verdict,
}

fn curve_min_into(acc: &mut f64, curve: &[f64]) {
    for &v in curve {
        if v < *acc {
            *acc = v;
        }
    }
}

fn winner_index(profile: &ProfileCurve) -> usize {
    let finals = profile.final_fractions();
    let mut best = 0;
    for s in 1..finals.len() {
        let better = finals[s] > finals[best]
            || (finals[s] == finals[best] && profile.area(s) > profile.area(best));
        if better {
            best = s;
        }
    }
    best
}

/// Two-step VCI comparison over a run history.
///
/// Step 1 profiles the sample-mean curves and picks the winner by the
/// largest solved fraction at the full budget (ties by area under the
/// profile, then by index). Step 2 profiles the winner's upper confidence
/// bound against the other solvers' lower bounds; the winner is flagged
/// significant only if it still strictly leads.
pub fn vci_compare(h: &HistoryMatrix, tau: Tolerance) -> Result<ComparisonReport, VciError> {
    if h.n_solvers() < 2 {
        return Err(VciError::NeedTwoSolvers);
    }
    let dims = h.problem_dims();
    let grid = kappa_grid(h.budget(), &dims);
    let n_p = h.n_problems();
    let n_s = h.n_solvers();

    // Step 1: profiles of the mean curves against the raw per-problem floor.
    let mean = sample_mean(h);
    let floor: Vec<f64> = (0..n_p).map(|j| h.floor_value(j)).collect();
    let mut times1 = Vec::with_capacity(n_s * n_p);
    for i in 0..n_s {
        for j in 0..n_p {
            let curve = mean.curve(j, i);
            debug_assert!(
                curve.iter().all(|v| !(*v < floor[j])),
                "f_L must not exceed any profiled value"
            );
            times1.push(solve_time(curve, curve[0], floor[j], tau)?);
        }
    }
    let step1 = data_profile(&times1, &dims, n_s, &grid)?;
    let winner = winner_index(&step1);

    // Step 2: the winner's upper bound against the others' lower bounds. The
    // per-problem floor extends over the profiled bound curves, which may dip
    // below any raw trace value.
    let variance = sample_variance(h, &mean)?;
    let (upper, lower) = confidence_bounds(&mean, &variance, h.n_runs());
    let bound_curve = |j: usize, i: usize| -> &[f64] {
        if i == winner {
            upper.curve(j, i)
        } else {
            lower.curve(j, i)
        }
    };
    let mut times2 = Vec::with_capacity(n_s * n_p);
    for j in 0..n_p {
        let mut floor2 = floor[j];
        for i in 0..n_s {
            curve_min_into(&mut floor2, bound_curve(j, i));
        }
        for i in 0..n_s {
            let curve = bound_curve(j, i);
            debug_assert!(
                curve.iter().all(|v| !(*v < floor2)),
                "step-2 f_L must not exceed any profiled bound value"
            );
            let t = solve_time(curve, curve[0], floor2, tau)?;
            times2.push(t);
        }
    }
    // times2 was filled problem-major; data_profile wants solver-major.
    let mut times2_sm = Vec::with_capacity(n_s * n_p);
    for i in 0..n_s {
        for j in 0..n_p {
            times2_sm.push(times2[j * n_s + i]);
        }
    }
    let step2 = data_profile(&times2_sm, &dims, n_s, &grid)?;

    let finals2 = step2.final_fractions();
    let strictly_leads = (0..n_s)
        .filter(|&s| s != winner)
        .all(|s| finals2[winner] > finals2[s]);
    Ok(ComparisonReport {
        tau: tau.get(),
        winner,
        winner_name: h.solvers()[winner].clone(),
        step1,
        step2,
        verdict: if strictly_leads {
            Verdict::Significant
        } else {
            Verdict::AverageOnly
        },
    })
}
