//! Nelder-Mead simplex method as a budgeted local solver.
//!
//! The iteration follows the classic branch structure: reflection,
//! expansion, outside/inside contraction, shrink: with the printed strict
//! and non-strict inequalities kept exactly. Candidate points are clamped to
//! the search box before evaluation; termination is budget-only, and a
//! degenerate simplex simply keeps iterating until the budget expires.

use alloc::vec::Vec;

use crate::eval::{EvalError, Evaluate};
use crate::problem::clamp_to_bounds;

/// `n + 1` vertices with cached objective values.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub vertices: Vec<Vec<f64>>,
    pub values: Vec<f64>,
}

impl Simplex {
    /// Problem dimension `n` (one less than the vertex count).
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn best(&self) -> (&[f64], f64) {
        (&self.vertices[0], self.values[0])
    }

    fn is_ordered(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Which branch an iteration took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NmsStep {
    Reflection,
    Expansion,
    ReflectionAfterExpansion,
    OutsideContraction,
    InsideContraction,
    Shrink,
}

/// Best point seen by one solver instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Incumbent {
    pub position: Vec<f64>,
    pub value: f64,
}

/// Initial simplex around `x0`: vertex 1 is `x0`, vertex `i + 1` perturbs
/// coordinate `i` by 5% of its value (0.00025 when the coordinate is zero),
/// clamped to the box.
pub fn initial_simplex<E: Evaluate>(x0: &[f64], ev: &mut E) -> Result<Simplex, EvalError> {
    let (lower, upper) = {
        let p = ev.problem();
        (p.lower().to_vec(), p.upper().to_vec())
    };
    let mut vertices = Vec::with_capacity(x0.len() + 1);
    let mut values = Vec::with_capacity(x0.len() + 1);

    let base = clamp_to_bounds(x0, &lower, &upper);
    values.push(ev.evaluate(&base)?);
    vertices.push(base.clone());

    for i in 0..x0.len() {
        let mut v = base.clone();
        v[i] = if v[i] != 0.0 { v[i] * 1.05 } else { 0.00025 };
        let v = clamp_to_bounds(&v, &lower, &upper);
        values.push(ev.evaluate(&v)?);
        vertices.push(v);
    }
    Ok(Simplex { vertices, values })
}

/// Sort vertices by value ascending; ties keep their prior relative order so
/// replays are deterministic.
pub fn order_simplex(s: &mut Simplex) {
    let mut order: Vec<usize> = (0..s.values.len()).collect();
    order.sort_by(|&a, &b| {
        s.values[a]
            .partial_cmp(&s.values[b])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    s.vertices = order.iter().map(|&i| s.vertices[i].clone()).collect();
    s.values = order.iter().map(|&i| s.values[i]).collect();
}

/// Centroid of the best `n` vertices (the worst is excluded).
pub fn centroid(s: &Simplex) -> Vec<f64> {
    let n = s.dim();
    let mut c = alloc::vec![0.0; n];
    for vertex in &s.vertices[..n] {
        for (acc, v) in c.iter_mut().zip(vertex) {
            *acc += v;
        }
    }
    for acc in &mut c {
        *acc /= n as f64;
    }
    c
}

/// Reflection point `x_r = 2 x_bar - x_worst`, coordinate-wise.
pub fn reflection_point(centroid: &[f64], worst: &[f64]) -> Vec<f64> {
    centroid
        .iter()
        .zip(worst)
        .map(|(c, w)| 2.0 * c - w)
        .collect()
}

/// Expansion point `x_e = 3 x_bar - 2 x_worst`, coordinate-wise.
pub fn expansion_point(centroid: &[f64], worst: &[f64]) -> Vec<f64> {
    centroid
        .iter()
        .zip(worst)
        .map(|(c, w)| 3.0 * c - 2.0 * w)
        .collect()
}

fn midpoint(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (x + y) / 2.0).collect()
}

/// One ordered-simplex update step.
///
/// On budget exhaustion the simplex is left as it stands (a partial shrink
/// keeps the vertices already re-evaluated) and the exhaustion is returned;
/// the caller treats it as the stop signal.
pub fn nms_iteration<E: Evaluate>(s: &mut Simplex, ev: &mut E) -> Result<NmsStep, EvalError> {
    debug_assert!(s.is_ordered(), "nms_iteration expects an ordered simplex");
    let n = s.dim();
    let (lower, upper) = {
        let p = ev.problem();
        (p.lower().to_vec(), p.upper().to_vec())
    };

    let x_bar = centroid(s);
    let worst_value = s.values[n];
    let second_worst_value = s.values[n - 1]; // f(x_n): equals f(x_1) when n = 1
    let best_value = s.values[0];

    let x_r = clamp_to_bounds(&reflection_point(&x_bar, &s.vertices[n]), &lower, &upper);
    let f_r = ev.evaluate(&x_r)?;

    let step = if best_value <= f_r && f_r < second_worst_value {
        s.vertices[n] = x_r;
        s.values[n] = f_r;
        NmsStep::Reflection
    } else if f_r < best_value {
        let x_e = clamp_to_bounds(&expansion_point(&x_bar, &s.vertices[n]), &lower, &upper);
        let f_e = ev.evaluate(&x_e)?;
        if f_e < f_r {
            s.vertices[n] = x_e;
            s.values[n] = f_e;
            NmsStep::Expansion
        } else {
            s.vertices[n] = x_r;
            s.values[n] = f_r;
            NmsStep::ReflectionAfterExpansion
        }
    } else if f_r < worst_value {
        // outside contraction between the centroid and the reflected point
        let x_c = clamp_to_bounds(&midpoint(&x_bar, &x_r), &lower, &upper);
        let f_c = ev.evaluate(&x_c)?;
        if f_c < f_r {
            s.vertices[n] = x_c;
            s.values[n] = f_c;
            NmsStep::OutsideContraction
        } else {
            shrink(s, ev)?;
            NmsStep::Shrink
        }
    } else {
        // inside contraction toward the worst vertex
        let x_cc = clamp_to_bounds(&midpoint(&x_bar, &s.vertices[n]), &lower, &upper);
        let f_cc = ev.evaluate(&x_cc)?;
        if f_cc < worst_value {
            s.vertices[n] = x_cc;
            s.values[n] = f_cc;
            NmsStep::InsideContraction
        } else {
            shrink(s, ev)?;
            NmsStep::Shrink
        }
    };

    order_simplex(s);
    Ok(step)
}

/// Halve every non-best vertex toward the best and re-evaluate it.
fn shrink<E: Evaluate>(s: &mut Simplex, ev: &mut E) -> Result<(), EvalError> {
    let best = s.vertices[0].clone();
    for i in 1..s.vertices.len() {
        let moved = midpoint(&s.vertices[i], &best);
        let value = ev.evaluate(&moved)?;
        s.vertices[i] = moved;
        s.values[i] = value;
    }
    Ok(())
}

struct BestTracking<'a, E: Evaluate> {
    inner: &'a mut E,
    best: Option<Incumbent>,
}

impl<E: Evaluate> Evaluate for BestTracking<'_, E> {
    fn problem(&self) -> &crate::problem::Problem {
        self.inner.problem()
    }

    fn remaining(&self) -> usize {
        self.inner.remaining()
    }

    fn evaluate(&mut self, x: &[f64]) -> Result<f64, EvalError> {
        let value = self.inner.evaluate(x)?;
        if self.best.as_ref().map_or(true, |b| value < b.value) {
            self.best = Some(Incumbent {
                position: x.to_vec(),
                value,
            });
        }
        Ok(value)
    }
}

/// Run the simplex method from `x0` until the evaluator refuses.
///
/// Returns the best point ever evaluated by this call: tracked separately
/// from the simplex, so shrink losses never discard the incumbent. `None`
/// only when not a single evaluation was possible.
pub fn nms_run<E: Evaluate>(x0: &[f64], ev: &mut E) -> Option<Incumbent> {
    let mut tracked = BestTracking {
        inner: ev,
        best: None,
    };
    let mut simplex = match initial_simplex(x0, &mut tracked) {
        Ok(s) => s,
        Err(_) => return tracked.best,
    };
    order_simplex(&mut simplex);
    while nms_iteration(&mut simplex, &mut tracked).is_ok() {}
    tracked.best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Evaluator;
    use crate::problem::Problem;

    fn sum_sq(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    fn problem(dim: usize, half_width: f64) -> Problem {
        Problem::new(
            "quad",
            alloc::vec![-half_width; dim],
            alloc::vec![half_width; dim],
            0.0,
            sum_sq,
        )
        .unwrap()
    }

    #[test]
    fn initial_simplex_five_percent_rule() {
        let p = problem(2, 100.0);
        let mut ev = Evaluator::new(&p, 10);
        let s = initial_simplex(&[2.0, 4.0], &mut ev).unwrap();
        assert_eq!(s.vertices.len(), 3);
        assert_eq!(s.vertices[0], vec![2.0, 4.0]);
        assert_eq!(s.vertices[1], vec![2.0 * 1.05, 4.0]);
        assert_eq!(s.vertices[2], vec![2.0, 4.0 * 1.05]);
        assert_eq!(ev.count(), 3);
    }

    #[test]
    fn initial_simplex_zero_coordinate_rule() {
        let p = problem(2, 100.0);
        let mut ev = Evaluator::new(&p, 10);
        let s = initial_simplex(&[0.0, 0.0], &mut ev).unwrap();
        assert_eq!(s.vertices[1], vec![0.00025, 0.0]);
        assert_eq!(s.vertices[2], vec![0.0, 0.00025]);
    }

    #[test]
    fn order_simplex_sorts_and_is_stable() {
        let mut s = Simplex {
            vertices: vec![vec![3.0], vec![1.0], vec![2.0]],
            values: vec![3.0, 1.0, 2.0],
        };
        order_simplex(&mut s);
        assert_eq!(s.values, vec![1.0, 2.0, 3.0]);
        order_simplex(&mut s);
        assert_eq!(s.values, vec![1.0, 2.0, 3.0], "idempotent on ordered input");

        let mut tied = Simplex {
            vertices: vec![vec![10.0], vec![20.0], vec![30.0]],
            values: vec![1.0, 1.0, 2.0],
        };
        order_simplex(&mut tied);
        assert_eq!(tied.vertices, vec![vec![10.0], vec![20.0], vec![30.0]]);
    }

    #[test]
    fn centroid_excludes_worst() {
        let s = Simplex {
            vertices: vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 2.0]],
            values: vec![0.0, 1.0, 4.0],
        };
        assert_eq!(centroid(&s), vec![0.5, 0.0]);

        let one_d = Simplex {
            vertices: vec![vec![0.0], vec![2.0]],
            values: vec![0.0, 4.0],
        };
        assert_eq!(centroid(&one_d), vec![0.0]);

        let equal = Simplex {
            vertices: vec![vec![3.0, 3.0], vec![3.0, 3.0], vec![3.0, 3.0]],
            values: vec![1.0, 1.0, 1.0],
        };
        assert_eq!(centroid(&equal), vec![3.0, 3.0]);
    }

    #[test]
    fn reflection_and_expansion_identities() {
        let c = vec![0.1, -2.5, 7.0];
        let w = vec![0.3, 1.5, -4.0];
        let r = reflection_point(&c, &w);
        let e = expansion_point(&c, &w);
        for d in 0..3 {
            assert_eq!(r[d], 2.0 * c[d] - w[d]);
            assert_eq!(e[d], 3.0 * c[d] - 2.0 * w[d]);
            assert!((e[d] - (c[d] + 2.0 * (c[d] - w[d]))).abs() < 1e-12);
        }
    }

    #[test]
    fn hand_trace_one_dimensional_inside_contraction() {
        // f(x) = x^2, simplex {0, 2}: x_bar = 0, x_r = -2 (f = 4),
        // f_r >= f(worst) so x_cc = 1 (f = 1) < 4 replaces the worst.
        let p = problem(1, 100.0);
        let mut ev = Evaluator::new(&p, 10);
        let mut s = Simplex {
            vertices: vec![vec![0.0], vec![2.0]],
            values: vec![0.0, 4.0],
        };
        let step = nms_iteration(&mut s, &mut ev).unwrap();
        assert_eq!(step, NmsStep::InsideContraction);
        assert_eq!(s.vertices, vec![vec![0.0], vec![1.0]]);
        assert_eq!(s.values, vec![0.0, 1.0]);
        assert_eq!(ev.count(), 2);
    }

    #[test]
    fn hand_trace_two_dimensional_inside_contraction() {
        // Vertices (0,0) f=0, (1,0) f=1, (0,2) f=4: x_bar = (0.5, 0),
        // x_r = (1,-2) f=5 >= 4, x_cc = (0.25, 1) f=1.0625 < 4.
        let p = problem(2, 100.0);
        let mut ev = Evaluator::new(&p, 10);
        let mut s = Simplex {
            vertices: vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 2.0]],
            values: vec![0.0, 1.0, 4.0],
        };
        let step = nms_iteration(&mut s, &mut ev).unwrap();
        assert_eq!(step, NmsStep::InsideContraction);
        assert_eq!(s.vertices[2], vec![0.25, 1.0]);
        assert_eq!(s.values[2], 1.0625);
        assert_eq!(ev.count(), 2);
    }

    #[test]
    fn best_value_never_increases_across_iterations() {
        let p = problem(3, 50.0);
        let mut ev = Evaluator::new(&p, 500);
        let mut s = initial_simplex(&[4.0, -3.0, 2.0], &mut ev).unwrap();
        order_simplex(&mut s);
        let mut best = s.values[0];
        while let Ok(_) = nms_iteration(&mut s, &mut ev) {
            assert!(s.values[0] <= best);
            best = s.values[0];
        }
    }

    #[test]
    fn per_step_evaluation_counts() {
        let p = problem(4, 50.0);
        let mut ev = Evaluator::new(&p, 2_000);
        let mut s = initial_simplex(&[4.0, -3.0, 2.0, 1.0], &mut ev).unwrap();
        order_simplex(&mut s);
        loop {
            let before = ev.count();
            let step = match nms_iteration(&mut s, &mut ev) {
                Ok(step) => step,
                Err(_) => break,
            };
            let spent = ev.count() - before;
            let expected = match step {
                NmsStep::Reflection => 1,
                NmsStep::Expansion
                | NmsStep::ReflectionAfterExpansion
                | NmsStep::OutsideContraction
                | NmsStep::InsideContraction => 2,
                NmsStep::Shrink => 2 + s.dim(),
            };
            assert_eq!(spent, expected, "step {step:?}");
        }
    }

    #[test]
    fn run_converges_on_quadratic() {
        let p = problem(2, 100.0);
        let mut ev = Evaluator::new(&p, 200);
        let best = nms_run(&[2.0, 4.0], &mut ev).unwrap();
        assert!(best.value <= 1e-8, "best {}", best.value);
        assert_eq!(ev.count(), 200, "budget-only termination");
    }

    #[test]
    fn run_returns_best_ever_and_never_worse_than_start() {
        let p = problem(2, 100.0);
        let mut ev = Evaluator::new(&p, 57);
        let x0 = [3.0, -4.0];
        let best = nms_run(&x0, &mut ev).unwrap();
        assert!(best.value <= sum_sq(&x0));
        assert_eq!(best.value, ev.trace().final_best().unwrap());
    }

    #[test]
    fn run_with_budget_for_init_only_returns_best_vertex() {
        let p = problem(2, 100.0);
        let mut ev = Evaluator::new(&p, 3);
        let best = nms_run(&[2.0, 4.0], &mut ev).unwrap();
        assert_eq!(ev.count(), 3);
        assert_eq!(best.value, ev.trace().final_best().unwrap());
    }

    #[test]
    fn run_with_zero_budget_returns_none() {
        let p = problem(2, 100.0);
        let mut ev = Evaluator::new(&p, 0);
        assert!(nms_run(&[1.0, 1.0], &mut ev).is_none());
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn point_identities_hold_exactly(
            c in proptest::collection::vec(-1e6f64..1e6, 1..8),
            shift in proptest::collection::vec(-1e6f64..1e6, 8),
        ) {
            let w: Vec<f64> = c.iter().zip(&shift).map(|(a, b)| a + b).collect();
            let r = reflection_point(&c, &w);
            let e = expansion_point(&c, &w);
            for d in 0..c.len() {
                prop_assert_eq!(r[d], 2.0 * c[d] - w[d]);
                prop_assert_eq!(e[d], 3.0 * c[d] - 2.0 * w[d]);
            }
        }
    }
}
