//! Derivative-free global optimization: Brain Storm Optimization (BSO),
//! the Nelder-Mead simplex method (NMS), and the Simplex-BSO hybrid, together
//! with the Hedar benchmark suite and the VCI comparison pipeline
//! (sample mean/variance matrices, confidence bounds, data profiles).
//!
//! The crate is `no_std` + `alloc`: all floating-point math goes through
//! `libm`, so runs are bit-reproducible across platforms given the same seed.
//! IO, file formats, and the CLI live in the companion `sbso-harness` crate.
//!
//! # Example
//!
//! ```
//! use sbso_core::{Evaluator, RandomSource};
//! use sbso_core::hybrid::{simplex_bso_run, HybridConfig};
//! use sbso_core::suite::{make_problem, Family};
//!
//! let problem = make_problem(Family::Sphere, 2).unwrap();
//! let mut ev = Evaluator::new(&problem, 2_000);
//! let mut rng = RandomSource::new(42);
//! let trace = simplex_bso_run(&HybridConfig::default(), &mut ev, &mut rng).unwrap();
//! assert!(trace.final_best().unwrap() < 1e-8);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub(crate) mod math;

pub mod bso;
pub mod eval;
pub mod hybrid;
pub mod nms;
pub mod problem;
pub mod rng;
pub mod suite;
pub mod trace;
pub mod vci;

pub use eval::{Capped, EvalError, Evaluate, Evaluator};
pub use problem::{clamp_to_bounds, Problem, ProblemError};
pub use rng::{run_seed, RandomSource};
pub use trace::RunTrace;
