//! Closed-form objective definitions for the Hedar test set.
//!
//! Where a function has several variants in circulation, the variant whose
//! minimum agrees with the suite's tabulated minimal value is used (e.g.
//! Schwefel carries the additive `418.9828872724337 * n` term so its minimum
//! is zero, Hump carries the camel-back offset).

use crate::math::{cos, exp, powi, sin, sqrt};
use core::f64::consts::{E, PI};

pub(super) fn beale(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let t1 = 1.5 - a + a * b;
    let t2 = 2.25 - a + a * b * b;
    let t3 = 2.625 - a + a * b * b * b;
    t1 * t1 + t2 * t2 + t3 * t3
}

pub(super) fn matyas(x: &[f64]) -> f64 {
    0.26 * (x[0] * x[0] + x[1] * x[1]) - 0.48 * x[0] * x[1]
}

pub(super) fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub(super) fn sum_squares(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v * v)
        .sum()
}

pub(super) fn trid(x: &[f64]) -> f64 {
    let quad: f64 = x.iter().map(|v| (v - 1.0) * (v - 1.0)).sum();
    let cross: f64 = x.windows(2).map(|w| w[1] * w[0]).sum();
    quad - cross
}

pub(super) fn zakharov(x: &[f64]) -> f64 {
    let s1: f64 = x.iter().map(|v| v * v).sum();
    let s2: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
        .sum();
    s1 + s2 * s2 + powi(s2, 4)
}

pub(super) fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sum_sq: f64 = x.iter().map(|v| v * v).sum();
    let sum_cos: f64 = x.iter().map(|v| cos(2.0 * PI * v)).sum();
    -20.0 * exp(-0.2 * sqrt(sum_sq / n)) - exp(sum_cos / n) + 20.0 + E
}

pub(super) fn bohachevsky1(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    a * a + 2.0 * b * b - 0.3 * cos(3.0 * PI * a) - 0.4 * cos(4.0 * PI * b) + 0.7
}

pub(super) fn bohachevsky2(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    a * a + 2.0 * b * b - 0.3 * cos(3.0 * PI * a) * cos(4.0 * PI * b) + 0.3
}

pub(super) fn bohachevsky3(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    a * a + 2.0 * b * b - 0.3 * cos(3.0 * PI * a + 4.0 * PI * b) + 0.3
}

pub(super) fn booth(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let t1 = a + 2.0 * b - 7.0;
    let t2 = 2.0 * a + b - 5.0;
    t1 * t1 + t2 * t2
}

pub(super) fn branin(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let t = b - 5.1 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0;
    t * t + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * cos(a) + 10.0
}

pub(super) fn colville(x: &[f64]) -> f64 {
    let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
    100.0 * powi(a * a - b, 2)
        + powi(a - 1.0, 2)
        + powi(c - 1.0, 2)
        + 90.0 * powi(c * c - d, 2)
        + 10.1 * (powi(b - 1.0, 2) + powi(d - 1.0, 2))
        + 19.8 * (b - 1.0) * (d - 1.0)
}

pub(super) fn dixon_price(x: &[f64]) -> f64 {
    let head = powi(x[0] - 1.0, 2);
    let tail: f64 = x
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i + 2) as f64 * powi(2.0 * w[1] * w[1] - w[0], 2))
        .sum();
    head + tail
}

pub(super) fn easom(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    -cos(a) * cos(b) * exp(-(powi(a - PI, 2) + powi(b - PI, 2)))
}

pub(super) fn goldstein_price(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let u = 1.0
        + powi(a + b + 1.0, 2)
            * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    let v = 30.0
        + powi(2.0 * a - 3.0 * b, 2)
            * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    u * v
}

pub(super) fn griewank(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| cos(v / sqrt((i + 1) as f64)))
        .product();
    sum - prod + 1.0
}

const HARTMAN_ALPHA: [f64; 4] = [1.0, 1.2, 3.0, 3.2];

pub(super) fn hartman3(x: &[f64]) -> f64 {
    const A: [[f64; 3]; 4] = [
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
    ];
    const P: [[f64; 3]; 4] = [
        [0.3689, 0.1170, 0.2673],
        [0.4699, 0.4387, 0.7470],
        [0.1091, 0.8732, 0.5547],
        [0.03815, 0.5743, 0.8828],
    ];
    let mut result = 0.0;
    for i in 0..4 {
        let inner: f64 = (0..3).map(|j| A[i][j] * powi(x[j] - P[i][j], 2)).sum();
        result -= HARTMAN_ALPHA[i] * exp(-inner);
    }
    result
}

pub(super) fn hartman6(x: &[f64]) -> f64 {
    const A: [[f64; 6]; 4] = [
        [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
        [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
    ];
    const P: [[f64; 6]; 4] = [
        [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
        [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
        [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
        [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
    ];
    let mut result = 0.0;
    for i in 0..4 {
        let inner: f64 = (0..6).map(|j| A[i][j] * powi(x[j] - P[i][j], 2)).sum();
        result -= HARTMAN_ALPHA[i] * exp(-inner);
    }
    result
}

/// Camel-back offset making the tabulated minimum exactly zero.
pub(super) const HUMP_OFFSET: f64 = 1.031_628_453_489_876_8;

pub(super) fn hump(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    4.0 * a * a - 2.1 * powi(a, 4) + powi(a, 6) / 3.0 + a * b - 4.0 * b * b + 4.0 * powi(b, 4)
        + HUMP_OFFSET
}

pub(super) fn levy(x: &[f64]) -> f64 {
    let n = x.len();
    let w = |v: f64| 1.0 + (v - 1.0) / 4.0;
    let w1 = w(x[0]);
    let wn = w(x[n - 1]);
    let head = powi(sin(PI * w1), 2);
    let mid: f64 = x[..n - 1]
        .iter()
        .map(|&v| {
            let wi = w(v);
            powi(wi - 1.0, 2) * (1.0 + 10.0 * powi(sin(PI * wi + 1.0), 2))
        })
        .sum();
    let tail = powi(wn - 1.0, 2) * (1.0 + powi(sin(2.0 * PI * wn), 2));
    head + mid + tail
}

pub(super) fn michalewicz(x: &[f64]) -> f64 {
    // steepness m = 10, so the exponent on the second sine is 2m = 20
    -x.iter()
        .enumerate()
        .map(|(i, v)| sin(*v) * powi(sin((i + 1) as f64 * v * v / PI), 20))
        .sum::<f64>()
}

pub(super) fn perm(x: &[f64]) -> f64 {
    let n = x.len();
    let beta = 0.5;
    (1..=n)
        .map(|k| {
            let inner: f64 = (1..=n)
                .map(|i| {
                    (powi(i as f64, k as u32) + beta) * (powi(x[i - 1] / i as f64, k as u32) - 1.0)
                })
                .sum();
            inner * inner
        })
        .sum()
}

pub(super) fn powell(x: &[f64]) -> f64 {
    x.chunks_exact(4)
        .map(|c| {
            let (a, b, cc, d) = (c[0], c[1], c[2], c[3]);
            powi(a + 10.0 * b, 2)
                + 5.0 * powi(cc - d, 2)
                + powi(b - 2.0 * cc, 4)
                + 10.0 * powi(a - d, 4)
        })
        .sum()
}

pub(super) fn power_sum(x: &[f64]) -> f64 {
    const B: [f64; 4] = [8.0, 18.0, 44.0, 114.0];
    (1..=4)
        .map(|k| {
            let s: f64 = x.iter().map(|&v| powi(v, k as u32)).sum();
            powi(s - B[k - 1], 2)
        })
        .sum()
}

pub(super) fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * cos(2.0 * PI * v))
            .sum::<f64>()
}

pub(super) fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * powi(w[1] - w[0] * w[0], 2) + powi(w[0] - 1.0, 2))
        .sum()
}

/// Per-dimension value of `x * sin(sqrt(x))` at its maximizer on `[0, 500]`;
/// subtracting the sum from `SCHWEFEL_C * n` puts the minimum at zero.
pub(super) const SCHWEFEL_C: f64 = 418.982_887_272_433_69;

pub(super) fn schwefel(x: &[f64]) -> f64 {
    SCHWEFEL_C * x.len() as f64 - x.iter().map(|v| v * sin(sqrt(v.abs()))).sum::<f64>()
}

const SHEKEL_A: [[f64; 4]; 10] = [
    [4.0, 4.0, 4.0, 4.0],
    [1.0, 1.0, 1.0, 1.0],
    [8.0, 8.0, 8.0, 8.0],
    [6.0, 6.0, 6.0, 6.0],
    [3.0, 7.0, 3.0, 7.0],
    [2.0, 9.0, 2.0, 9.0],
    [5.0, 5.0, 3.0, 3.0],
    [8.0, 1.0, 8.0, 1.0],
    [6.0, 2.0, 6.0, 2.0],
    [7.0, 3.6, 7.0, 3.6],
];
const SHEKEL_C: [f64; 10] = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5];

fn shekel(x: &[f64], m: usize) -> f64 {
    -(0..m)
        .map(|j| {
            let dist: f64 = (0..4).map(|i| powi(x[i] - SHEKEL_A[j][i], 2)).sum();
            1.0 / (dist + SHEKEL_C[j])
        })
        .sum::<f64>()
}

pub(super) fn shekel5(x: &[f64]) -> f64 {
    shekel(x, 5)
}

pub(super) fn shekel7(x: &[f64]) -> f64 {
    shekel(x, 7)
}

pub(super) fn shekel10(x: &[f64]) -> f64 {
    shekel(x, 10)
}

pub(super) fn shubert(x: &[f64]) -> f64 {
    let factor = |v: f64| -> f64 {
        (1..=5)
            .map(|j| j as f64 * cos((j + 1) as f64 * v + j as f64))
            .sum()
    };
    factor(x[0]) * factor(x[1])
}
