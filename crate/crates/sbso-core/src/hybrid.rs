//! Simplex-BSO: one BSO population iteration alternating with a budgeted
//! Nelder-Mead refinement of the current best individual. The refined point
//! replaces the individual it came from, so global exploration keeps feeding
//! local exploitation and vice versa.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bso::{bso_iteration, initialize_population, BsoConfig, ConfigError, Individual};
use crate::eval::{Capped, Evaluate, Evaluator};
use crate::nms::{nms_run, Incumbent};
use crate::problem::Problem;
use crate::rng::{run_seed, RandomSource};
use crate::trace::RunTrace;
use crate::vci::{HistoryMatrix, ProblemInfo, VciError};

#[derive(Debug, Clone)]
pub struct HybridConfig {
    pub bso: BsoConfig,
    /// Balance parameter: each local phase gets `local_budget_factor * n`
    /// evaluations. The sweep values 20..=60 are the supported grid; any
    /// value is accepted, and 0 degenerates to plain BSO.
    pub local_budget_factor: usize,
}

impl Default for HybridConfig {
    fn default() -> Self {
        HybridConfig {
            bso: BsoConfig::default(),
            local_budget_factor: 40,
        }
    }
}

impl HybridConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.bso.validate()
    }

    /// Evaluations of one full outer iteration (without disruption).
    pub fn outer_cost(&self, dim: usize) -> usize {
        self.bso.pop_size + self.local_budget_factor * dim
    }
}

/// Exploit the area around `x0` with a Nelder-Mead run capped at
/// `lambda * n` evaluations charged to the shared evaluator.
///
/// Never returns a point worse than `(x0, f0)`; with no remaining budget it
/// returns the input unchanged and spends nothing.
pub fn local_refine<E: Evaluate>(x0: &[f64], f0: f64, ev: &mut E, lambda: usize) -> Incumbent {
    let cap = lambda.saturating_mul(ev.problem().dim()).min(ev.remaining());
    if cap == 0 {
        return Incumbent {
            position: x0.to_vec(),
            value: f0,
        };
    }
    let mut capped = Capped::new(ev, cap);
    match nms_run(x0, &mut capped) {
        Some(best) if best.value < f0 => best,
        _ => Incumbent {
            position: x0.to_vec(),
            value: f0,
        },
    }
}

/// Run Simplex-BSO on a fresh evaluator until the budget is exhausted.
///
/// The step-size horizon counts the outer iterations that fit after
/// initialization: `T = (budget - pop_size) / (pop_size + lambda * n)`, which
/// reduces to the plain BSO horizon when `lambda = 0`.
pub fn simplex_bso_run(
    config: &HybridConfig,
    ev: &mut Evaluator<'_>,
    rng: &mut RandomSource,
) -> Result<RunTrace, ConfigError> {
    config.validate()?;
    let mut bso_cfg = config.bso.clone();
    let outer = config.outer_cost(ev.problem().dim()).max(1);
    bso_cfg.max_iterations = ev.budget().saturating_sub(bso_cfg.pop_size) / outer;

    let mut state = match initialize_population(&bso_cfg, ev, rng) {
        Ok(state) => state,
        Err(_) => return Ok(ev.trace().clone()),
    };
    loop {
        let global = bso_iteration(&mut state, &bso_cfg, ev, rng);
        let best = state.best_index();
        let x0 = state.population[best].position.clone();
        let f0 = state.population[best].fitness;
        let refined = local_refine(&x0, f0, ev, config.local_budget_factor);
        state.population[best] = Individual {
            position: refined.position,
            fitness: refined.value,
        };
        if global.is_err() || ev.remaining() == 0 {
            return Ok(ev.trace().clone());
        }
    }
}

/// Run every balance-parameter variant as its own solver over a problem set
/// and collect the histories into one matrix ready for VCI analysis.
///
/// Solver `i` is the variant `sbso-{lambdas[i]}`; the per-run seed is
/// `run_seed(base_seed, i, j, r)`, so the matrix is reproducible and
/// order-independent.
pub fn sweep_lambda(
    problems: &[Problem],
    lambdas: &[usize],
    runs: usize,
    budget: usize,
    bso: &BsoConfig,
    base_seed: u64,
) -> Result<HistoryMatrix, VciError> {
    assert!(!lambdas.is_empty(), "sweep needs at least one lambda value");
    let solver_names: Vec<String> = lambdas.iter().map(|l| format!("sbso-{l}")).collect();
    let infos: Vec<ProblemInfo> = problems
        .iter()
        .map(|p| ProblemInfo {
            name: p.name().into(),
            dim: p.dim(),
        })
        .collect();
    HistoryMatrix::from_fn(budget, solver_names, infos, runs, |i, j, r| {
        let seed = run_seed(base_seed, i as u64, j as u64, r as u64);
        let config = HybridConfig {
            bso: bso.clone(),
            local_budget_factor: lambdas[i],
        };
        let mut ev = Evaluator::new(&problems[j], budget);
        let mut rng = RandomSource::new(seed);
        let trace = simplex_bso_run(&config, &mut ev, &mut rng)
            .expect("sweep configurations are validated");
        (trace, seed)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bso::bso_run;
    use crate::problem::Problem;

    fn sum_sq(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    fn quad(dim: usize) -> Problem {
        Problem::new("quad", vec![-5.0; dim], vec![5.0; dim], 0.0, sum_sq).unwrap()
    }

    fn small() -> HybridConfig {
        HybridConfig {
            bso: BsoConfig {
                pop_size: 10,
                ..BsoConfig::default()
            },
            local_budget_factor: 40,
        }
    }

    #[test]
    fn refine_never_worsens_and_respects_cap() {
        let p = quad(2);
        let mut ev = Evaluator::new(&p, 10_000);
        let x0 = [1.0, 1.0];
        let f0 = sum_sq(&x0);
        let refined = local_refine(&x0, f0, &mut ev, 40);
        assert!(refined.value <= f0);
        assert_eq!(ev.count(), 80, "cap is lambda * n");
        assert!(refined.value <= 1e-6, "80 evaluations tame a 2-D quadratic");
    }

    #[test]
    fn refine_with_zero_budget_is_identity() {
        let p = quad(2);
        let mut ev = Evaluator::new(&p, 0);
        let refined = local_refine(&[1.0, 2.0], 5.0, &mut ev, 40);
        assert_eq!(refined.position, vec![1.0, 2.0]);
        assert_eq!(refined.value, 5.0);
        assert_eq!(ev.count(), 0);
    }

    #[test]
    fn refine_truncates_to_remaining_budget() {
        let p = quad(2);
        let mut ev = Evaluator::new(&p, 7);
        let _ = local_refine(&[1.0, 2.0], 5.0, &mut ev, 40);
        assert_eq!(ev.count(), 7, "truncated local phase still runs");
    }

    #[test]
    fn run_spends_budget_exactly_and_improves() {
        let p = quad(2);
        let mut ev = Evaluator::new(&p, 1_000);
        let mut rng = RandomSource::new(5);
        let trace = simplex_bso_run(&small(), &mut ev, &mut rng).unwrap();
        assert_eq!(ev.count(), 1_000);
        assert_eq!(trace.len(), 1_000);
        assert!(trace.final_best().unwrap() < 1e-8);
        let dense = trace.dense();
        for w in dense.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn run_is_seed_deterministic() {
        let p = quad(3);
        let run = |seed| {
            let mut ev = Evaluator::new(&p, 600);
            let mut rng = RandomSource::new(seed);
            simplex_bso_run(&small(), &mut ev, &mut rng).unwrap()
        };
        assert_eq!(run(9), run(9));
        assert_ne!(run(9), run(10));
    }

    #[test]
    fn zero_lambda_reduces_to_plain_bso() {
        let p = quad(2);
        let cfg = HybridConfig {
            bso: BsoConfig {
                pop_size: 10,
                ..BsoConfig::default()
            },
            local_budget_factor: 0,
        };
        let mut ev_h = Evaluator::new(&p, 500);
        let mut rng_h = RandomSource::new(77);
        let hybrid_trace = simplex_bso_run(&cfg, &mut ev_h, &mut rng_h).unwrap();

        let mut ev_b = Evaluator::new(&p, 500);
        let mut rng_b = RandomSource::new(77);
        let bso_trace = bso_run(&cfg.bso, &mut ev_b, &mut rng_b).unwrap();

        assert_eq!(hybrid_trace, bso_trace, "identical evaluation sequence");
    }

    #[test]
    fn outer_iteration_cost_accounting() {
        // With disruption off, one outer iteration spends pop + lambda * n.
        let p = quad(2);
        let mut cfg = small();
        cfg.bso.p_disrupt = 0.0;
        let mut ev = Evaluator::new(&p, 10_000);
        let mut rng = RandomSource::new(3);
        let mut bso_cfg = cfg.bso.clone();
        bso_cfg.max_iterations = 10;
        let mut state = initialize_population(&bso_cfg, &mut ev, &mut rng).unwrap();
        let before = ev.count();
        bso_iteration(&mut state, &bso_cfg, &mut ev, &mut rng).unwrap();
        let best = state.best_index();
        let refined = local_refine(
            &state.population[best].position.clone(),
            state.population[best].fitness,
            &mut ev,
            cfg.local_budget_factor,
        );
        state.population[best] = Individual {
            position: refined.position,
            fitness: refined.value,
        };
        assert_eq!(ev.count() - before, cfg.outer_cost(2));
    }

    #[test]
    fn population_best_is_non_increasing_across_outer_iterations() {
        let p = quad(2);
        let cfg = small();
        let mut bso_cfg = cfg.bso.clone();
        bso_cfg.max_iterations = 20;
        let mut ev = Evaluator::new(&p, 50_000);
        let mut rng = RandomSource::new(21);
        let mut state = initialize_population(&bso_cfg, &mut ev, &mut rng).unwrap();
        let mut best = state.best_fitness();
        for _ in 0..20 {
            bso_iteration(&mut state, &bso_cfg, &mut ev, &mut rng).unwrap();
            let idx = state.best_index();
            let refined = local_refine(
                &state.population[idx].position.clone(),
                state.population[idx].fitness,
                &mut ev,
                cfg.local_budget_factor,
            );
            state.population[idx] = Individual {
                position: refined.position,
                fitness: refined.value,
            };
            assert!(state.best_fitness() <= best);
            best = state.best_fitness();
        }
    }

    #[test]
    fn sweep_builds_one_solver_per_lambda() {
        let problems = vec![quad(2), quad(3)];
        let h = sweep_lambda(
            &problems,
            &[20, 40],
            2,
            300,
            &BsoConfig {
                pop_size: 10,
                ..BsoConfig::default()
            },
            99,
        )
        .unwrap();
        assert_eq!(h.n_solvers(), 2);
        assert_eq!(h.solvers(), &["sbso-20".to_string(), "sbso-40".to_string()]);
        assert_eq!(h.n_problems(), 2);
        assert_eq!(h.n_runs(), 2);
        for i in 0..2 {
            for j in 0..2 {
                for r in 0..2 {
                    assert_eq!(h.trace(i, j, r).len(), 300);
                    assert_eq!(h.seed(i, j, r), run_seed(99, i as u64, j as u64, r as u64));
                }
            }
        }
        // reproducible
        let again = sweep_lambda(
            &problems,
            &[20, 40],
            2,
            300,
            &BsoConfig {
                pop_size: 10,
                ..BsoConfig::default()
            },
            99,
        )
        .unwrap();
        assert_eq!(h.trace(1, 1, 1), again.trace(1, 1, 1));
    }

    #[test]
    fn single_lambda_sweep_equals_batched_runs() {
        let problems = vec![quad(2)];
        let bso = BsoConfig {
            pop_size: 10,
            ..BsoConfig::default()
        };
        let h = sweep_lambda(&problems, &[40], 3, 400, &bso, 7).unwrap();
        for r in 0..3 {
            let seed = run_seed(7, 0, 0, r as u64);
            let mut ev = Evaluator::new(&problems[0], 400);
            let mut rng = RandomSource::new(seed);
            let direct = simplex_bso_run(
                &HybridConfig {
                    bso: bso.clone(),
                    local_budget_factor: 40,
                },
                &mut ev,
                &mut rng,
            )
            .unwrap();
            assert_eq!(h.trace(0, 0, r), &direct);
        }
    }
}
