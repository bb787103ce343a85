// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Special functions: the Gamma function and Poisson tails.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;

// Lanczos coefficients for g = 7, n = 9.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// The Gamma function, via the Lanczos approximation.
///
/// Arguments below 1/2 go through the reflection formula. Poles at the
/// non-positive integers return NaN.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let w = x + LANCZOS_G + 0.5;
    // Split the power so that w^(x+1/2) does not overflow before exp(-w) is applied.
    let half = w.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * (-w).exp() * half * sum
}

/// Natural log of |Gamma(x)| for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let w = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * w.ln() - w + sum.ln()
}

/// Upper tail P(n >= k) of a Poisson distribution with the given mean.
///
/// Summed upward from the k-th term so small tails keep full relative precision.
pub fn poisson_upper_tail(mean: f64, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if mean <= 0.0 {
        return 0.0;
    }
    let kf = k as f64;
    if mean > kf {
        // Bulk of the mass lies above k: use the complement.
        let mut term = (-mean).exp();
        let mut below = term;
        for n in 1..k {
            term *= mean / n as f64;
            below += term;
        }
        return (1.0 - below).max(0.0);
    }
    let ln_term = -mean + kf * mean.ln() - ln_gamma(kf + 1.0);
    let mut term = ln_term.exp();
    let mut sum = 0.0;
    let mut n = kf;
    while term > sum * 1e-17 && term > 0.0 {
        sum += term;
        n += 1.0;
        term *= mean / n;
    }
    sum
}
