//! Float math routed through `libm` so the core stays `no_std` and produces
//! identical bits on every platform.

pub(crate) use libm::{ceil, cos, exp, log as ln, round, sin, sqrt};

/// Integer power by binary exponentiation; exact products, no `pow` rounding.
pub(crate) fn powi(x: f64, mut n: u32) -> f64 {
    let mut base = x;
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

/// Logarithmic sigmoid, `1 / (1 + exp(-z))`.
pub(crate) fn logsig(z: f64) -> f64 {
    1.0 / (1.0 + exp(-z))
}
