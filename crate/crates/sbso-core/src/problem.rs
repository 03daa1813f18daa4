//! Bound-constrained problem abstraction.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

/// Objective signature: pure map from an `n`-vector to a real value.
pub type Objective = fn(&[f64]) -> f64;

type ObjectiveFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProblemError {
    #[error("problem must have at least one dimension")]
    EmptyDimension,
    #[error("bounds length mismatch: lower {lower}, upper {upper}")]
    BoundsLength { lower: usize, upper: usize },
    #[error("lower bound must be strictly below upper bound in dimension {dim}")]
    InvertedBounds { dim: usize },
}

/// A bound-constrained minimization problem with a known minimal value.
#[derive(Clone)]
pub struct Problem {
    name: String,
    lower: Vec<f64>,
    upper: Vec<f64>,
    objective: ObjectiveFn,
    f_min: f64,
}

impl core::fmt::Debug for Problem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("f_min", &self.f_min)
            .finish()
    }
}

impl Problem {
    pub fn new(
        name: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        f_min: f64,
        objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, ProblemError> {
        if lower.is_empty() {
            return Err(ProblemError::EmptyDimension);
        }
        if lower.len() != upper.len() {
            return Err(ProblemError::BoundsLength {
                lower: lower.len(),
                upper: upper.len(),
            });
        }
        for (d, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo < hi) {
                return Err(ProblemError::InvertedBounds { dim: d });
            }
        }
        Ok(Problem {
            name: name.into(),
            lower,
            upper,
            objective: Arc::new(objective),
            f_min,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Known minimal function value over the box.
    pub fn f_min(&self) -> f64 {
        self.f_min
    }

    /// Raw objective value, without any evaluation accounting.
    ///
    /// Solvers must go through [`crate::Evaluator`] instead so the budget and
    /// the best-so-far trace stay correct; this is for tests and oracles.
    pub fn objective(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    /// Coordinate-wise projection of `x` onto the box.
    pub fn clamp(&self, x: &[f64]) -> Vec<f64> {
        clamp_to_bounds(x, &self.lower, &self.upper)
    }
}

/// Project each coordinate onto `[lower[d], upper[d]]`; in-bounds input is
/// returned unchanged.
pub fn clamp_to_bounds(x: &[f64], lower: &[f64], upper: &[f64]) -> Vec<f64> {
    debug_assert_eq!(x.len(), lower.len());
    debug_assert_eq!(x.len(), upper.len());
    x.iter()
        .zip(lower.iter().zip(upper))
        .map(|(v, (lo, hi))| v.clamp(*lo, *hi))
        .collect()
}
