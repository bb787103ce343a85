// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Bosonic bath with an exponential-cutoff spectral density
//! `J(w) = G w^s w_c^(1-s) exp(-w / w_c)`.
//!
//! The two kernels driving the qubit dynamics are
//!
//! ```text
//! Gamma(t) = int_0^inf dw J(w)/w^2 (1 - cos wt) coth(beta w / 2)
//! Delta(t) = int_0^inf dw J(w)/w^2 (sin wt - wt)
//! ```
//!
//! At zero temperature both have closed forms in terms of
//! `phi(t) = (1 - (1 - i w_c t)^(1-s)) / (s - 1)`:
//! `Gamma = G Gamma(s) Re phi` and `Delta = -G Gamma(s) (Im phi + w_c t)`.
//! `phi` is analytic in `s`, so the Ohmic point `s = 1` (where `phi` becomes
//! `ln(1 - i w_c t)`) is evaluated through a series instead of a special case.
//!
//! The quadrature routes in this module never touch the closed forms and
//! serve as the cross-check for them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{self, Tolerance};
use crate::special::gamma;

/// Default relative tolerance of the quadrature paths.
pub const QUADRATURE_RTOL: f64 = 1e-10;

/// Inverse temperature of the bath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InverseTemperature {
    /// Zero temperature (`beta = inf`).
    Infinite,
    Finite(f64),
}

impl InverseTemperature {
    pub fn is_zero_temperature(self) -> bool {
        matches!(self, InverseTemperature::Infinite)
    }
}

/// Parameters of the spectral density and the bath temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    coupling: f64,
    ohmicity: f64,
    cutoff: f64,
    beta: InverseTemperature,
}

impl SpectralParams {
    pub fn new(coupling: f64, ohmicity: f64, cutoff: f64, beta: InverseTemperature) -> Result<Self> {
        if !(coupling.is_finite() && coupling >= 0.0) {
            return Err(Error::invalid("G", format!("coupling must be finite and >= 0, got {coupling}")));
        }
        if !(ohmicity.is_finite() && ohmicity > 0.0) {
            return Err(Error::invalid("s", format!("ohmicity must be finite and > 0, got {ohmicity}")));
        }
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(Error::invalid("omega_c", format!("cutoff must be finite and > 0, got {cutoff}")));
        }
        let beta = match beta {
            InverseTemperature::Finite(b) if b == f64::INFINITY => InverseTemperature::Infinite,
            InverseTemperature::Finite(b) if !(b.is_finite() && b > 0.0) => {
                return Err(Error::invalid("beta", format!("inverse temperature must be > 0, got {b}")));
            }
            other => other,
        };
        Ok(SpectralParams {
            coupling,
            ohmicity,
            cutoff,
            beta,
        })
    }

    pub fn zero_temperature(coupling: f64, ohmicity: f64, cutoff: f64) -> Result<Self> {
        Self::new(coupling, ohmicity, cutoff, InverseTemperature::Infinite)
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn ohmicity(&self) -> f64 {
        self.ohmicity
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn beta(&self) -> InverseTemperature {
        self.beta
    }

    pub fn with_coupling(&self, coupling: f64) -> Result<Self> {
        Self::new(coupling, self.ohmicity, self.cutoff, self.beta)
    }

    pub fn with_ohmicity(&self, ohmicity: f64) -> Result<Self> {
        Self::new(self.coupling, ohmicity, self.cutoff, self.beta)
    }

    pub fn with_cutoff(&self, cutoff: f64) -> Result<Self> {
        Self::new(self.coupling, self.ohmicity, cutoff, self.beta)
    }

    /// `J(w) / w^power`, evaluated without forming `w^s` separately.
    fn density_over_power(&self, omega: f64, power: f64) -> f64 {
        self.coupling
            * self.cutoff.powf(1.0 - self.ohmicity)
            * omega.powf(self.ohmicity - power)
            * (-omega / self.cutoff).exp()
    }
}

/// Decoherence exponent, indirect phase and their time derivatives at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValues {
    pub gamma: f64,
    pub delta: f64,
    pub gamma_rate: f64,
    pub delta_rate: f64,
}

impl KernelValues {
    pub const ZERO: KernelValues = KernelValues {
        gamma: 0.0,
        delta: 0.0,
        gamma_rate: 0.0,
        delta_rate: 0.0,
    };
}

/// A limit that may fail to exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Limit {
    Finite(f64),
    Divergent,
}

impl Limit {
    pub fn finite(self) -> Option<f64> {
        match self {
            Limit::Finite(v) => Some(v),
            Limit::Divergent => None,
        }
    }
}

/// Asymptotics `Gamma(t) -> gamma_limit` and `Delta(t) ~ delta_offset + delta_slope t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LongTimeLimits {
    pub gamma_limit: Limit,
    pub delta_slope: f64,
    pub delta_offset: Limit,
}

/// Spectral density `J(w)`.
pub fn spectral_density(p: &SpectralParams, omega: f64) -> f64 {
    if omega <= 0.0 {
        return 0.0;
    }
    p.density_over_power(omega, 0.0)
}

/// Returns `(Re phi, Im phi + x)` for `x = w_c t`.
fn phi_parts(s: f64, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 0.0);
    }
    if x < 0.1 {
        // phi = -sum_{k>=1} (s)_{k-1}/k! (ix)^k; the k = 1 term is the -ix cancelled by +x.
        let mut c = x;
        let (mut re, mut im) = (0.0, 0.0);
        for k in 1..200usize {
            c *= (s + k as f64 - 1.0) * x / (k as f64 + 1.0);
            match (k + 1) % 4 {
                0 => re -= c,
                1 => im -= c,
                2 => re += c,
                _ => im += c,
            }
            if c <= 1e-18 * (re.abs() + im.abs()) {
                break;
            }
        }
        return (re, im);
    }
    let eps = s - 1.0;
    // z = ln(1 - ix)
    let z = Complex64::new(0.5 * (x * x).ln_1p(), -x.atan());
    let w = z * eps;
    let phi = if w.norm() < 0.5 {
        // (1 - e^{-w}) / eps = z * sum_k (-w)^k / (k+1)!
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 1..60 {
            term *= -w / (k as f64 + 1.0);
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        z * sum
    } else {
        (Complex64::new(1.0, 0.0) - (-w).exp()) / eps
    };
    (phi.re, phi.im + x)
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::ContractViolation(format!("time must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// `Gamma(t)`: closed form at zero temperature, quadrature otherwise.
pub fn gamma_exact(p: &SpectralParams, t: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 || p.coupling == 0.0 {
        return Ok(0.0);
    }
    match p.beta {
        InverseTemperature::Infinite => {
            let (re, _) = phi_parts(p.ohmicity, p.cutoff * t);
            Ok(p.coupling * gamma(p.ohmicity) * re)
        }
        InverseTemperature::Finite(_) => gamma_quadrature(p, t, QUADRATURE_RTOL),
    }
}

/// `Delta(t)`, which does not depend on temperature.
pub fn delta_exact(p: &SpectralParams, t: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 || p.coupling == 0.0 {
        return Ok(0.0);
    }
    let (_, im_plus_x) = phi_parts(p.ohmicity, p.cutoff * t);
    Ok(-p.coupling * gamma(p.ohmicity) * im_plus_x)
}

/// `(dGamma/dt, dDelta/dt)`.
pub fn kernel_rates(p: &SpectralParams, t: f64) -> Result<(f64, f64)> {
    check_time(t)?;
    if t == 0.0 || p.coupling == 0.0 {
        return Ok((0.0, 0.0));
    }
    let s = p.ohmicity;
    let x = p.cutoff * t;
    let prefactor = p.coupling * gamma(s) * p.cutoff;
    let half_log = 0.5 * (x * x).ln_1p();
    let angle = s * x.atan();
    let delta_rate = {
        // (1+x^2)^{-s/2} cos(s atan x) - 1 without cancellation at small x.
        let half = (0.5 * angle).sin();
        prefactor * ((-s * half_log).exp_m1() * angle.cos() - 2.0 * half * half)
    };
    let gamma_rate = match p.beta {
        InverseTemperature::Infinite => prefactor * (-s * half_log).exp() * angle.sin(),
        InverseTemperature::Finite(_) => gamma_rate_quadrature(p, t, QUADRATURE_RTOL)?,
    };
    Ok((gamma_rate, delta_rate))
}

/// All four kernel values through the production path.
pub fn kernel_values(p: &SpectralParams, t: f64) -> Result<KernelValues> {
    let gamma = gamma_exact(p, t)?;
    let delta = delta_exact(p, t)?;
    let (gamma_rate, delta_rate) = kernel_rates(p, t)?;
    Ok(KernelValues {
        gamma,
        delta,
        gamma_rate,
        delta_rate,
    })
}

/// All four kernel values by adaptive quadrature of their defining
/// integrals, at relative tolerance [`QUADRATURE_RTOL`].
pub fn kernel_quadrature(p: &SpectralParams, t: f64) -> Result<KernelValues> {
    kernel_quadrature_with(p, t, QUADRATURE_RTOL)
}

pub fn kernel_quadrature_with(p: &SpectralParams, t: f64, rtol: f64) -> Result<KernelValues> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(KernelValues::ZERO);
    }
    Ok(KernelValues {
        gamma: gamma_quadrature(p, t, rtol)?,
        delta: delta_quadrature(p, t, rtol)?,
        gamma_rate: gamma_rate_quadrature(p, t, rtol)?,
        delta_rate: delta_rate_quadrature(p, t, rtol)?,
    })
}

pub fn long_time_limits(p: &SpectralParams) -> LongTimeLimits {
    let s = p.ohmicity;
    let g = p.coupling;
    let gamma_limit = if s > 1.0 {
        // G Gamma(s-1), written through Gamma(s) to stay off the pole.
        Limit::Finite(g * gamma(s) / (s - 1.0))
    } else {
        Limit::Divergent
    };
    let delta_offset = if s == 1.0 {
        Limit::Finite(0.5 * std::f64::consts::PI * g)
    } else if s > 1.0 {
        Limit::Finite(0.0)
    } else {
        Limit::Divergent
    };
    LongTimeLimits {
        gamma_limit,
        delta_slope: -g * gamma(s) * p.cutoff,
        delta_offset,
    }
}

// ---------------------------------------------------------------------------
// Quadrature paths

fn coth(y: f64) -> f64 {
    if y < 1e-6 {
        1.0 / y + y / 3.0
    } else {
        1.0 / y.tanh()
    }
}

/// `coth(beta w / 2)`, which is identically 1 at zero temperature.
fn thermal_factor(p: &SpectralParams, omega: f64) -> f64 {
    match p.beta {
        InverseTemperature::Infinite => 1.0,
        InverseTemperature::Finite(beta) => coth(0.5 * beta * omega),
    }
}

/// `sin y - y`, with its Taylor series near zero.
fn sin_minus_id(y: f64) -> f64 {
    if y.abs() < 0.1 {
        let y2 = y * y;
        -y * y2 / 6.0 * (1.0 - y2 / 20.0 * (1.0 - y2 / 42.0 * (1.0 - y2 / 72.0 * (1.0 - y2 / 110.0))))
    } else {
        y.sin() - y
    }
}

/// Breakpoints in the substituted variable `u = sqrt(w)`.
///
/// The frequency axis is split at `w_c max(1, 1/t)`, truncated where the
/// exponential cutoff makes the remainder negligible, and cut at every
/// half-period of the oscillation when `w_c t > 10`.
fn breakpoints(p: &SpectralParams, t: f64) -> Vec<f64> {
    let s = p.ohmicity;
    let mut x_max: f64 = 40.0;
    while (s + 1.0) * x_max.ln() - x_max > -46.0 {
        x_max += 5.0;
    }
    let upper = p.cutoff * x_max;
    let split = (p.cutoff * (1.0 / t).max(1.0)).min(upper);
    let mut omegas = vec![0.0, split, upper];
    if p.cutoff * t > 10.0 {
        let half_period = std::f64::consts::PI / t;
        let count = (upper / half_period) as usize;
        omegas.extend((1..=count).map(|k| k as f64 * half_period));
    }
    omegas.sort_by(f64::total_cmp);
    omegas.dedup();
    omegas.into_iter().map(f64::sqrt).collect()
}

fn integrate_spectral<F: Fn(f64) -> f64>(p: &SpectralParams, t: f64, rtol: f64, integrand: F) -> Result<f64> {
    let points = breakpoints(p, t);
    let est = quadrature::integrate(
        |u| {
            let omega = u * u;
            if omega == 0.0 {
                0.0
            } else {
                2.0 * u * integrand(omega)
            }
        },
        &points,
        Tolerance::relative(rtol),
    )?;
    Ok(est.value)
}

fn gamma_quadrature(p: &SpectralParams, t: f64, rtol: f64) -> Result<f64> {
    integrate_spectral(p, t, rtol, |w| {
        let half = (0.5 * w * t).sin();
        p.density_over_power(w, 2.0) * 2.0 * half * half * thermal_factor(p, w)
    })
}

fn delta_quadrature(p: &SpectralParams, t: f64, rtol: f64) -> Result<f64> {
    integrate_spectral(p, t, rtol, |w| p.density_over_power(w, 2.0) * sin_minus_id(w * t))
}

fn gamma_rate_quadrature(p: &SpectralParams, t: f64, rtol: f64) -> Result<f64> {
    integrate_spectral(p, t, rtol, |w| {
        p.density_over_power(w, 1.0) * (w * t).sin() * thermal_factor(p, w)
    })
}

fn delta_rate_quadrature(p: &SpectralParams, t: f64, rtol: f64) -> Result<f64> {
    integrate_spectral(p, t, rtol, |w| {
        let half = (0.5 * w * t).sin();
        -2.0 * p.density_over_power(w, 1.0) * half * half
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn zt(g: f64, s: f64, wc: f64) -> SpectralParams {
        SpectralParams::zero_temperature(g, s, wc).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / (1.0 + b.abs())
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(SpectralParams::zero_temperature(-1.0, 1.0, 1.0).is_err());
        assert!(SpectralParams::zero_temperature(1.0, 0.0, 1.0).is_err());
        assert!(SpectralParams::zero_temperature(1.0, 1.0, 0.0).is_err());
        assert!(SpectralParams::new(1.0, 1.0, 1.0, InverseTemperature::Finite(-2.0)).is_err());
        let p = SpectralParams::new(1.0, 1.0, 1.0, InverseTemperature::Finite(f64::INFINITY)).unwrap();
        assert!(p.beta().is_zero_temperature());
    }

    #[test]
    fn spectral_density_values() {
        assert_eq!(spectral_density(&zt(1.0, 1.0, 3.0), 0.0), 0.0);
        assert!((spectral_density(&zt(1.0, 1.0, 1.0), 1.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert!((spectral_density(&zt(2.0, 0.5, 2.0), 2.0) - 4.0 / std::f64::consts::E).abs() < 1e-14);
    }

    #[test]
    fn kernels_vanish_at_origin() {
        for s in [0.5, 1.0, 3.0] {
            let p = zt(1.3, s, 2.0);
            assert_eq!(kernel_values(&p, 0.0).unwrap(), KernelValues::ZERO);
            assert_eq!(kernel_quadrature(&p, 0.0).unwrap(), KernelValues::ZERO);
        }
    }

    #[test]
    fn ohmic_reference_values() {
        let p = zt(1.0, 1.0, 1.0);
        assert!((gamma_exact(&p, 1.0).unwrap() - 0.5 * LN_2).abs() < 1e-15);
        assert!((delta_exact(&p, 1.0).unwrap() - (PI / 4.0 - 1.0)).abs() < 1e-15);
        let q = kernel_quadrature(&p, 1.0).unwrap();
        assert!((q.gamma - 0.346_573_590_279_972_65).abs() < 1e-10);
        assert!((q.delta + 0.214_601_836_602_551_7).abs() < 1e-10);
        let tight = kernel_quadrature_with(&p, 1.0, 1e-13).unwrap();
        assert!((tight.gamma - q.gamma).abs() < 1e-10);
        assert!((tight.delta - q.delta).abs() < 1e-10);
    }

    #[test]
    fn super_ohmic_gamma_saturates() {
        let p = zt(1.0, 3.0, 3.0);
        assert!((gamma_exact(&p, 100.0).unwrap() - 1.0).abs() < 1e-2);
        assert!((long_time_limits(&p).gamma_limit.finite().unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ohmic_delta_slope() {
        let p = zt(1.0, 1.0, 3.0);
        let slope = delta_exact(&p, 51.0).unwrap() - delta_exact(&p, 50.0).unwrap();
        assert!((slope + 3.0).abs() < 1e-3, "slope {slope}");
        let lim = long_time_limits(&p);
        assert!((lim.delta_slope + 3.0).abs() < 1e-14);
        assert_eq!(lim.delta_offset, Limit::Finite(PI / 2.0));
        assert_eq!(lim.gamma_limit, Limit::Divergent);
        let t = 1e4;
        let asymptote = PI / 2.0 + lim.delta_slope * t;
        assert!((delta_exact(&p, t).unwrap() - asymptote).abs() < 1e-4);
    }

    #[test]
    fn sub_ohmic_limits_diverge() {
        let lim = long_time_limits(&zt(1.0, 0.5, 3.0));
        assert_eq!(lim.gamma_limit, Limit::Divergent);
        assert_eq!(lim.delta_offset, Limit::Divergent);
        assert!(lim.delta_slope < 0.0);
    }

    #[test]
    fn rates_at_reference_point() {
        let (gr, dr) = kernel_rates(&zt(1.0, 1.0, 1.0), 1.0).unwrap();
        assert!((gr - 0.5).abs() < 1e-14);
        assert!((dr + 0.5).abs() < 1e-14);
        assert_eq!(kernel_rates(&zt(1.0, 2.0, 3.0), 0.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn super_ohmic_rate_sign_change() {
        let p = zt(1.0, 3.0, 3.0);
        let t_star = 3f64.sqrt() / 3.0;
        for i in 1..400 {
            let t = i as f64 * 0.05;
            let (gr, _) = kernel_rates(&p, t).unwrap();
            if t < t_star - 1e-9 {
                assert!(gr > 0.0, "t = {t}");
            } else if t > t_star + 1e-9 {
                assert!(gr < 0.0, "t = {t}");
            }
        }
    }

    #[test]
    fn rates_match_finite_differences() {
        let h = 1e-5;
        for s in [0.5, 1.0, 1.5, 2.0, 3.0] {
            let p = zt(1.0, s, 3.0);
            for i in 1..40 {
                let t = i as f64 * 0.5;
                let (gr, dr) = kernel_rates(&p, t).unwrap();
                let fd_g = (gamma_exact(&p, t + h).unwrap() - gamma_exact(&p, t - h).unwrap()) / (2.0 * h);
                let fd_d = (delta_exact(&p, t + h).unwrap() - delta_exact(&p, t - h).unwrap()) / (2.0 * h);
                assert!(rel(gr, fd_g) < 1e-6, "s {s} t {t}: {gr} vs {fd_g}");
                assert!(rel(dr, fd_d) < 1e-6, "s {s} t {t}: {dr} vs {fd_d}");
            }
        }
    }

    #[test]
    fn closed_forms_match_quadrature_near_ohmic_pole() {
        for s in [0.5, 1.0 - 1e-7, 1.0 + 1e-7, 1.5, 2.0, 2.5, 3.0] {
            let p = zt(1.0, s, 3.0);
            for i in 0..=20 {
                let t = i as f64;
                let q = kernel_quadrature(&p, t).unwrap();
                let e = kernel_values(&p, t).unwrap();
                assert!(rel(e.gamma, q.gamma) < 1e-8, "gamma s {s} t {t}: {} vs {}", e.gamma, q.gamma);
                assert!(rel(e.delta, q.delta) < 1e-8, "delta s {s} t {t}: {} vs {}", e.delta, q.delta);
                assert!(rel(e.gamma_rate, q.gamma_rate) < 1e-6, "gamma' s {s} t {t}");
                assert!(rel(e.delta_rate, q.delta_rate) < 1e-6, "delta' s {s} t {t}");
            }
        }
    }

    #[test]
    fn small_time_series_branch_is_continuous() {
        // x = w_c t crosses the series threshold 0.1.
        for s in [0.5, 1.0, 2.7] {
            let p = zt(1.0, s, 1.0);
            let h = 1e-12;
            let below = kernel_values(&p, 0.1 - h).unwrap();
            let above = kernel_values(&p, 0.1 + h).unwrap();
            let jump_g = above.gamma - below.gamma - 2.0 * h * below.gamma_rate;
            let jump_d = above.delta - below.delta - 2.0 * h * below.delta_rate;
            assert!(jump_g.abs() < 1e-15, "s {s}: {jump_g:e}");
            assert!(jump_d.abs() < 1e-15, "s {s}: {jump_d:e}");
        }
    }

    #[test]
    fn finite_temperature_against_reference() {
        // Reference values from a 30-digit tanh-sinh evaluation of the defining integrals.
        let p = SpectralParams::new(1.0, 1.0, 1.0, InverseTemperature::Finite(1.0)).unwrap();
        assert!(rel(gamma_exact(&p, 1.0).unwrap(), 0.955_272_808_323_74) < 1e-9);
        assert!(rel(kernel_rates(&p, 1.0).unwrap().0, 1.653_348_094_937_162_3) < 1e-9);
        let p = SpectralParams::new(0.5, 2.5, 3.0, InverseTemperature::Finite(2.0)).unwrap();
        assert!(rel(gamma_exact(&p, 2.0).unwrap(), 0.499_962_590_314_869) < 1e-9);
        assert!(rel(kernel_rates(&p, 2.0).unwrap().0, 0.014_831_520_089_758_755) < 1e-9);
        let p = SpectralParams::new(1.0, 0.5, 1.0, InverseTemperature::Finite(1.0)).unwrap();
        assert!(rel(gamma_exact(&p, 3.0).unwrap(), 12.808_895_335_497_159) < 1e-9);
    }

    #[test]
    fn finite_temperature_dominates_zero_temperature() {
        let cold = zt(1.0, 2.0, 3.0);
        let warm = SpectralParams::new(1.0, 2.0, 3.0, InverseTemperature::Finite(5.0)).unwrap();
        let nearly_cold = SpectralParams::new(1.0, 2.0, 3.0, InverseTemperature::Finite(1e6)).unwrap();
        for t in [0.3, 1.0, 4.0] {
            let g0 = gamma_exact(&cold, t).unwrap();
            assert!(gamma_exact(&warm, t).unwrap() > g0);
            assert!(rel(gamma_exact(&nearly_cold, t).unwrap(), g0) < 1e-8);
            assert_eq!(delta_exact(&warm, t).unwrap(), delta_exact(&cold, t).unwrap());
        }
    }

    #[test]
    fn gamma_nonnegative_delta_nonpositive() {
        for s in [0.3, 1.0, 1.7, 2.0, 4.0] {
            let p = zt(0.8, s, 2.0);
            for i in 0..2000 {
                let t = i as f64 * 0.01;
                let g = gamma_exact(&p, t).unwrap();
                let d = delta_exact(&p, t).unwrap();
                assert!(g >= 0.0, "s {s} t {t}");
                assert!(d <= 0.0, "s {s} t {t}");
                if s <= 2.0 {
                    assert!(kernel_rates(&p, t).unwrap().0 >= 0.0);
                }
                if s == 1.0 {
                    assert!(kernel_rates(&p, t).unwrap().1 <= 0.0);
                }
            }
        }
    }

    /// The alternative closed form for Delta at s != 1 that circulates in the
    /// literature, kept only to report how far it sits from the quadrature.
    #[test]
    fn printed_delta_form_comparison_report() {
        let printed = |g: f64, s: f64, wc: f64, t: f64| {
            let x = wc * t;
            g * gamma(s - 1.0)
                * ((s - 1.0) * x + (1.0 + x * x).powf(-s / 2.0) * x / 2.0 * (2.0 * s * x.atan()).sin())
        };
        for s in [1.5, 2.0, 3.0] {
            let p = zt(1.0, s, 3.0);
            for t in [0.5, 2.0, 10.0] {
                let q = kernel_quadrature(&p, t).unwrap().delta;
                eprintln!(
                    "s = {s}, t = {t}: quadrature {q:.10}, printed form {:.10}, deviation {:.3e}",
                    printed(1.0, s, 3.0, t),
                    printed(1.0, s, 3.0, t) - q
                );
            }
        }
    }
}
