//! Best-so-far traces.
//!
//! A trace stores only its improvement points `(k, best)`: the evaluation
//! count at which a new best appeared: and reconstructs the dense
//! non-increasing sequence on demand. At desk scale a dense 20,000-entry
//! trace per run would dominate memory for no benefit.

use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error("improvement indices must start at 1 and increase strictly")]
    BadIndices,
    #[error("improvement values must decrease strictly")]
    BadValues,
    #[error("trace length {len} is below the last improvement index {last}")]
    BadLength { len: usize, last: usize },
}

/// Monotone best-so-far record of one run, one entry per evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    len: usize,
    improvements: Vec<(usize, f64)>, // (1-based evaluation count, new best)
}

impl Default for RunTrace {
    fn default() -> Self {
        Self::new()
    }
}

impl RunTrace {
    pub fn new() -> Self {
        RunTrace {
            len: 0,
            improvements: Vec::new(),
        }
    }

    /// Rebuild a trace from its improvement points.
    pub fn from_improvements(len: usize, improvements: Vec<(usize, f64)>) -> Result<Self, TraceError> {
        if let Some(&(first, _)) = improvements.first() {
            if first != 1 {
                return Err(TraceError::BadIndices);
            }
        } else if len > 0 {
            return Err(TraceError::BadIndices);
        }
        for w in improvements.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(TraceError::BadIndices);
            }
            if !(w[1].1 < w[0].1) {
                return Err(TraceError::BadValues);
            }
        }
        if let Some(&(last, _)) = improvements.last() {
            if len < last {
                return Err(TraceError::BadLength { len, last });
            }
        }
        Ok(RunTrace { len, improvements })
    }

    /// Record one raw evaluation; the stored best never increases.
    pub fn push(&mut self, value: f64) {
        self.len += 1;
        match self.improvements.last() {
            Some(&(_, best)) if !(value < best) => {}
            _ => self.improvements.push((self.len, value)),
        }
    }

    /// Number of evaluations recorded.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn improvements(&self) -> &[(usize, f64)] {
        &self.improvements
    }

    /// Best value after `k` evaluations (1-based); the last value is held
    /// constant past the end of the trace, so solvers that stop early still
    /// report a value at every budget. `None` on an empty trace or `k == 0`.
    pub fn best_at(&self, k: usize) -> Option<f64> {
        if self.len == 0 || k == 0 {
            return None;
        }
        let k = k.min(self.len);
        let pos = self.improvements.partition_point(|&(i, _)| i <= k);
        debug_assert!(pos > 0);
        Some(self.improvements[pos - 1].1)
    }

    /// Final best value of the run.
    pub fn final_best(&self) -> Option<f64> {
        self.improvements.last().map(|&(_, v)| v)
    }

    /// Dense best-so-far sequence of length `len`.
    pub fn dense(&self) -> Vec<f64> {
        self.dense_padded(self.len)
    }

    /// Dense sequence padded (or truncated) to `to_len`, holding the last
    /// best value past the end of the trace.
    pub fn dense_padded(&self, to_len: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(to_len);
        let mut next = 0;
        let mut current = f64::INFINITY;
        for k in 1..=to_len {
            while next < self.improvements.len() && self.improvements[next].0 == k {
                current = self.improvements[next].1;
                next += 1;
            }
            out.push(current);
        }
        out
    }
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dense_is_non_increasing_running_min(raw in proptest::collection::vec(-1e9f64..1e9, 1..200)) {
            let mut t = RunTrace::new();
            for &v in &raw {
                t.push(v);
            }
            let dense = t.dense();
            prop_assert_eq!(dense.len(), raw.len());
            let mut best = f64::INFINITY;
            for (k, (&d, &r)) in dense.iter().zip(&raw).enumerate() {
                best = best.min(r);
                prop_assert_eq!(d, best);
                prop_assert_eq!(t.best_at(k + 1).unwrap(), best);
                if k > 0 {
                    prop_assert!(dense[k] <= dense[k - 1]);
                }
            }
        }
    }
}
