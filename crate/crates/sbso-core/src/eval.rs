//! Budgeted evaluation accounting.
//!
//! An [`Evaluator`] owns the budget and the best-so-far trace for one run.
//! The budget is a hard wall: a request at `count == budget` is refused, and
//! solvers treat the refusal as their stop signal, which makes the consumed
//! budget exact.

use crate::problem::Problem;
use crate::trace::RunTrace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("evaluation budget exhausted")]
    BudgetExhausted,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {index} violates the search box")]
    OutOfBounds { index: usize },
}

/// Anything that can spend budgeted evaluations on a problem.
///
/// Implemented by [`Evaluator`] and by [`Capped`], which lends out a bounded
/// slice of a run's remaining budget (the hybrid's local phases use this).
pub trait Evaluate {
    fn problem(&self) -> &Problem;
    fn remaining(&self) -> usize;
    fn evaluate(&mut self, x: &[f64]) -> Result<f64, EvalError>;
}

/// Evaluation accounting for a single run.
#[derive(Debug)]
pub struct Evaluator<'p> {
    problem: &'p Problem,
    budget: usize,
    count: usize,
    trace: RunTrace,
}

impl<'p> Evaluator<'p> {
    pub fn new(problem: &'p Problem, budget: usize) -> Self {
        Evaluator {
            problem,
            budget,
            count: 0,
            trace: RunTrace::new(),
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn trace(&self) -> &RunTrace {
        &self.trace
    }

    pub fn into_trace(self) -> RunTrace {
        self.trace
    }

    pub fn best_so_far(&self) -> Option<f64> {
        self.trace.final_best()
    }
}

impl Evaluate for Evaluator<'_> {
    fn problem(&self) -> &Problem {
        self.problem
    }

    fn remaining(&self) -> usize {
        self.budget - self.count
    }

    fn evaluate(&mut self, x: &[f64]) -> Result<f64, EvalError> {
        if self.count == self.budget {
            return Err(EvalError::BudgetExhausted);
        }
        if x.len() != self.problem.dim() {
            return Err(EvalError::DimensionMismatch {
                expected: self.problem.dim(),
                got: x.len(),
            });
        }
        for (d, (v, (lo, hi))) in x
            .iter()
            .zip(self.problem.lower().iter().zip(self.problem.upper()))
            .enumerate()
        {
            if !(*v >= *lo && *v <= *hi) {
                return Err(EvalError::OutOfBounds { index: d });
            }
        }
        let value = self.problem.objective(x);
        self.count += 1;
        self.trace.push(value);
        Ok(value)
    }
}

/// A view of an evaluator that refuses after `cap` additional evaluations.
///
/// Refused requests do not consume the cap; everything that does run is
/// charged to the underlying evaluator and its trace.
#[derive(Debug)]
pub struct Capped<'a, E: Evaluate> {
    inner: &'a mut E,
    left: usize,
}

impl<'a, E: Evaluate> Capped<'a, E> {
    pub fn new(inner: &'a mut E, cap: usize) -> Self {
        Capped { inner, left: cap }
    }
}

impl<E: Evaluate> Evaluate for Capped<'_, E> {
    fn problem(&self) -> &Problem {
        self.inner.problem()
    }

    fn remaining(&self) -> usize {
        self.left.min(self.inner.remaining())
    }

    fn evaluate(&mut self, x: &[f64]) -> Result<f64, EvalError> {
        if self.left == 0 {
            return Err(EvalError::BudgetExhausted);
        }
        let value = self.inner.evaluate(x)?;
        self.left -= 1;
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Problem;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    fn sphere2() -> Problem {
        Problem::new("sphere-2", vec![-5.0, -5.0], vec![5.0, 5.0], 0.0, sphere).unwrap()
    }

    #[test]
    fn evaluates_and_traces() {
        let p = sphere2();
        let mut ev = Evaluator::new(&p, 10);
        assert_eq!(ev.evaluate(&[0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(ev.evaluate(&[1.0, 2.0]).unwrap(), 5.0);
        assert_eq!(ev.count(), 2);
        assert_eq!(ev.trace().dense(), vec![0.0, 0.0]);
    }

    #[test]
    fn trace_is_running_minimum_of_raw_values() {
        let p = sphere2();
        let mut ev = Evaluator::new(&p, 10);
        for x in [[1.0, 2.0], [1.0, 1.0010], [2.0, 0.0]] {
            ev.evaluate(&x).unwrap();
        }
        let dense = ev.trace().dense();
        assert_eq!(dense[0], 5.0);
        assert!(dense[1] < 5.0 && dense[2] == dense[1]);
    }

    #[test]
    fn budget_is_a_hard_wall() {
        let p = sphere2();
        let mut ev = Evaluator::new(&p, 2);
        ev.evaluate(&[0.0, 0.0]).unwrap();
        ev.evaluate(&[1.0, 0.0]).unwrap();
        assert_eq!(ev.evaluate(&[2.0, 0.0]), Err(EvalError::BudgetExhausted));
        assert_eq!(ev.count(), 2);
        assert_eq!(ev.trace().len(), 2);
    }

    #[test]
    fn rejects_dimension_mismatch_and_out_of_bounds() {
        let p = sphere2();
        let mut ev = Evaluator::new(&p, 10);
        assert_eq!(
            ev.evaluate(&[0.0]),
            Err(EvalError::DimensionMismatch { expected: 2, got: 1 })
        );
        assert_eq!(
            ev.evaluate(&[0.0, 5.5]),
            Err(EvalError::OutOfBounds { index: 1 })
        );
        assert_eq!(ev.count(), 0, "failed requests must not be charged");
    }

    #[test]
    fn capped_view_limits_and_charges_inner() {
        let p = sphere2();
        let mut ev = Evaluator::new(&p, 10);
        {
            let mut capped = Capped::new(&mut ev, 3);
            assert_eq!(capped.remaining(), 3);
            for _ in 0..3 {
                capped.evaluate(&[1.0, 1.0]).unwrap();
            }
            assert_eq!(capped.evaluate(&[1.0, 1.0]), Err(EvalError::BudgetExhausted));
        }
        assert_eq!(ev.count(), 3);
        assert_eq!(ev.remaining(), 7);
    }

    #[test]
    fn capped_view_never_exceeds_inner_budget() {
        let p = sphere2();
        let mut ev = Evaluator::new(&p, 2);
        let mut capped = Capped::new(&mut ev, 5);
        assert_eq!(capped.remaining(), 2);
        capped.evaluate(&[1.0, 1.0]).unwrap();
        capped.evaluate(&[1.0, 1.0]).unwrap();
        assert_eq!(capped.evaluate(&[1.0, 1.0]), Err(EvalError::BudgetExhausted));
    }
}
