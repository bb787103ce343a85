// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Reduced dynamics of one qubit out of `N` that dephase in a common bath.
//!
//! Every qubit starts in `|+>` (or every qubit in `|->`). Populations are
//! frozen; the coherence of the kept qubit is
//! `eta(t) = e^{i w0 t} f(t) g(t) e^{i chi(t)}` with `f = e^{-Gamma}` and `g`
//! the factor contributed by the traced-out partners through `Delta`.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bath::{self, KernelValues, SpectralParams};
use crate::error::{Error, Result};

/// Which formula supplies the partner factor `g(t)` when `N > 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `g = |cos(N Delta / 2)|`, from the phase `-(N/4) Delta (p_n' - p_n)`.
    Paper,
    /// `g = |cos Delta|^(N-1)`, from the pair-sum phase `-(Delta/2)(q_n' - q_n)`.
    Pairwise,
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(Variant::Paper),
            "pairwise" => Ok(Variant::Pairwise),
            other => Err(format!("unknown variant `{other}` (expected paper or pairwise)")),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Paper => "paper",
            Variant::Pairwise => "pairwise",
        })
    }
}

/// Qubit register and observation window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    qubits: usize,
    omega0: f64,
    variant: Variant,
    horizon: f64,
}

impl ModelConfig {
    pub fn new(qubits: usize, omega0: f64, variant: Variant, horizon: f64) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::invalid("N", "qubit count must be >= 1"));
        }
        if !omega0.is_finite() {
            return Err(Error::invalid("omega0", format!("splitting must be finite, got {omega0}")));
        }
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::invalid("T", format!("horizon must be finite and > 0, got {horizon}")));
        }
        Ok(ModelConfig {
            qubits,
            omega0,
            variant,
            horizon,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn with_qubits(&self, qubits: usize) -> Result<Self> {
        Self::new(qubits, self.omega0, self.variant, self.horizon)
    }

    pub fn with_horizon(&self, horizon: f64) -> Result<Self> {
        Self::new(self.qubits, self.omega0, self.variant, horizon)
    }

    pub fn with_omega0(&self, omega0: f64) -> Result<Self> {
        Self::new(self.qubits, omega0, self.variant, self.horizon)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceFactors {
    /// `e^{-Gamma(t)}`
    pub f: f64,
    /// Partner factor, kept nonnegative.
    pub g: f64,
    /// Sign of the partner factor folded into a phase: 0 or pi.
    pub chi: f64,
    /// `f g e^{i (w0 t + chi)}`
    pub alpha_offdiag: Complex64,
}

/// Signed partner factor and its time derivative, before the absolute value.
#[derive(Debug, Clone, Copy)]
struct PartnerFactor {
    value: f64,
    rate: f64,
    /// `g` has a corner where `value` crosses zero.
    kinks: bool,
}

fn partner_factor(m: &ModelConfig, k: &KernelValues) -> PartnerFactor {
    let n = m.qubits;
    if n == 1 {
        return PartnerFactor {
            value: 1.0,
            rate: 0.0,
            kinks: false,
        };
    }
    match m.variant {
        Variant::Paper => {
            let half_n = 0.5 * n as f64;
            let arg = half_n * k.delta;
            PartnerFactor {
                value: arg.cos(),
                rate: -arg.sin() * half_n * k.delta_rate,
                kinks: true,
            }
        }
        Variant::Pairwise => {
            let c = k.delta.cos();
            let dc = -k.delta.sin() * k.delta_rate;
            let power = (n - 1) as i32;
            PartnerFactor {
                value: c.powi(power),
                rate: power as f64 * c.powi(power - 1) * dc,
                kinks: power == 1,
            }
        }
    }
}

/// The signed function whose zeros are the zeros of `g(t)`, or `None` for `N = 1`.
///
/// For both variants this is smooth in `t`; the interval finder brackets
/// its sign changes to locate the corners of `g`.
pub fn partner_zero_function(m: &ModelConfig, p: &SpectralParams, t: f64) -> Option<f64> {
    if m.qubits == 1 {
        return None;
    }
    let delta = bath::delta_exact(p, t).ok()?;
    Some(match m.variant {
        Variant::Paper => (0.5 * m.qubits as f64 * delta).cos(),
        Variant::Pairwise => delta.cos(),
    })
}

fn factors_from_kernels(m: &ModelConfig, t: f64, k: &KernelValues) -> CoherenceFactors {
    let pf = partner_factor(m, k);
    let f = (-k.gamma).exp();
    let g = pf.value.abs().min(1.0);
    let chi = if pf.value < 0.0 { std::f64::consts::PI } else { 0.0 };
    let alpha_offdiag = Complex64::from_polar(f * g, m.omega0 * t + chi);
    CoherenceFactors {
        f,
        g,
        chi,
        alpha_offdiag,
    }
}

pub fn coherence_factors(m: &ModelConfig, p: &SpectralParams, t: f64) -> Result<CoherenceFactors> {
    let k = bath::kernel_values(p, t)?;
    Ok(factors_from_kernels(m, t, &k))
}

/// Largest modulus among complex entries.
pub fn max_norm<'a>(entries: impl IntoIterator<Item = &'a Complex64>) -> f64 {
    entries.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A single-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState(pub Matrix2<Complex64>);

impl QubitState {
    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn trace(&self) -> Complex64 {
        self.0[(0, 0)] + self.0[(1, 1)]
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        max_norm((self.0 - self.0.adjoint()).iter())
    }

    /// Eigenvalues in ascending order, treating the matrix as Hermitian.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.0[(0, 0)].re;
        let d = self.0[(1, 1)].re;
        let b = self.0[(0, 1)];
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }
}

/// `(rho_1, rho_2)`: the kept qubit when all qubits start in `|+>`, resp. `|->`.
pub fn reduced_pair(m: &ModelConfig, p: &SpectralParams, t: f64) -> Result<(QubitState, QubitState)> {
    let cf = coherence_factors(m, p, t)?;
    let half = Complex64::new(0.5, 0.0);
    let off = cf.alpha_offdiag * 0.5;
    let rho1 = Matrix2::new(half, off, off.conj(), half);
    let rho2 = Matrix2::new(half, -off, -off.conj(), half);
    Ok((QubitState(rho1), QubitState(rho2)))
}

/// A computational basis string `|n_1 ... n_N>` with `n_i = +-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisString {
    entries: Vec<i8>,
    sum: i64,
    product: i64,
    pair_sum: i64,
}

impl BasisString {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ContractViolation("basis string must be nonempty".into()));
        }
        if let Some(bad) = entries.iter().find(|&&e| e != 1 && e != -1) {
            return Err(Error::ContractViolation(format!("basis entries must be +1 or -1, got {bad}")));
        }
        let n = entries.len() as i64;
        let sum: i64 = entries.iter().map(|&e| e as i64).sum();
        let product: i64 = entries.iter().map(|&e| e as i64).product();
        let pair_sum = (sum * sum - n) / 2;
        Ok(BasisString {
            entries,
            sum,
            product,
            pair_sum,
        })
    }

    /// The basis string for a register index; qubit 1 is the most significant
    /// bit and a 0 bit means `n_i = +1`.
    pub fn from_index(index: usize, qubits: usize) -> Self {
        let entries = (0..qubits)
            .map(|i| if (index >> (qubits - 1 - i)) & 1 == 0 { 1 } else { -1 })
            .collect();
        Self::new(entries).expect("valid entries")
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `s_n`
    pub fn sum(&self) -> i64 {
        self.sum
    }

    /// `p_n`
    pub fn product(&self) -> i64 {
        self.product
    }

    /// `q_n = sum_{i<j} n_i n_j`
    pub fn pair_sum(&self) -> i64 {
        self.pair_sum
    }
}

/// Matrix element `<n'| rho_S(t) |n>` of the full register with all qubits
/// initially in `|+>`.
pub fn n_qubit_element(
    m: &ModelConfig,
    p: &SpectralParams,
    t: f64,
    row: &BasisString,
    col: &BasisString,
) -> Result<Complex64> {
    let k = bath::kernel_values(p, t)?;
    element_from_kernels(m, t, &k, row, col)
}

fn element_from_kernels(
    m: &ModelConfig,
    t: f64,
    k: &KernelValues,
    row: &BasisString,
    col: &BasisString,
) -> Result<Complex64> {
    let n = m.qubits;
    if row.len() != n || col.len() != n {
        return Err(Error::ContractViolation(format!(
            "basis strings of length {} and {} for a {n}-qubit register",
            row.len(),
            col.len()
        )));
    }
    let initial = 0.5f64.powi(n as i32);
    let ds = (row.sum - col.sum) as f64;
    let phase = match m.variant {
        Variant::Paper => -(n as f64 / 4.0) * k.delta * (row.product - col.product) as f64,
        Variant::Pairwise => -0.5 * k.delta * (row.pair_sum - col.pair_sum) as f64,
    };
    let envelope = (-0.25 * ds * ds * k.gamma).exp();
    Ok(Complex64::from_polar(initial * envelope, 0.5 * m.omega0 * t * ds + phase))
}

/// The full `2^N x 2^N` register state, assembled element by element.
pub fn n_qubit_density_matrix(m: &ModelConfig, p: &SpectralParams, t: f64) -> Result<DMatrix<Complex64>> {
    let n = m.qubits;
    if n > 12 {
        return Err(Error::ContractViolation(format!("dense register assembly limited to 12 qubits, got {n}")));
    }
    let k = bath::kernel_values(p, t)?;
    let dim = 1usize << n;
    let strings: Vec<BasisString> = (0..dim).map(|i| BasisString::from_index(i, n)).collect();
    let mut rho = DMatrix::zeros(dim, dim);
    for (i, row) in strings.iter().enumerate() {
        for (j, col) in strings.iter().enumerate() {
            rho[(i, j)] = element_from_kernels(m, t, &k, row, col)?;
        }
    }
    Ok(rho)
}

/// Trace out every qubit except the first (most significant) one.
pub fn keep_first_qubit(rho: &DMatrix<Complex64>) -> QubitState {
    let half = rho.nrows() / 2;
    let mut out = Matrix2::zeros();
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..half {
                acc += rho[(a * half + r, b * half + r)];
            }
            out[(a, b)] = acc;
        }
    }
    QubitState(out)
}

/// `D(t) = f(t) g(t)`
pub fn trace_distance(m: &ModelConfig, p: &SpectralParams, t: f64) -> Result<f64> {
    let cf = coherence_factors(m, p, t)?;
    Ok(cf.f * cf.g)
}

/// `S = D ln((1+D)/(1-D))`, infinite at `D = 1`.
pub fn relative_entropy(d: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::ContractViolation(format!("trace distance must lie in [0, 1], got {d}")));
    }
    if d == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(2.0 * d * d.atanh())
}

/// `dS/dD`, so that `dS/dt = dD/dt * entropy_slope(D)`.
fn entropy_slope(d: f64) -> f64 {
    2.0 * d.atanh() + 2.0 * d / (1.0 - d * d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePair {
    /// `dD/dt`
    pub trace_distance: f64,
    /// `dS/dt`
    pub entropy: f64,
}

/// Time derivatives of `D` and `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rates {
    Smooth(RatePair),
    /// Evaluated exactly at a zero of `g`, where `D` has a corner.
    Kink { left: RatePair, right: RatePair },
}

impl Rates {
    /// The derivative, or the right-sided one at a kink.
    pub fn forward(&self) -> RatePair {
        match *self {
            Rates::Smooth(r) => r,
            Rates::Kink { right, .. } => right,
        }
    }
}

pub fn rates(m: &ModelConfig, p: &SpectralParams, t: f64) -> Result<Rates> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::ContractViolation(format!("rates need t > 0, got {t}")));
    }
    let k = bath::kernel_values(p, t)?;
    Ok(rates_from_kernels(m, &k))
}

/// Partner factors this close to zero are treated as sitting on the corner of `g`.
const KINK_THRESHOLD: f64 = 4.0 * f64::EPSILON;

pub(crate) fn rates_from_kernels(m: &ModelConfig, k: &KernelValues) -> Rates {
    let pf = partner_factor(m, k);
    let f = (-k.gamma).exp();
    let g = pf.value.abs().min(1.0);
    let d = f * g;
    let slope = entropy_slope(d);
    let pair = |g_rate: f64| {
        let dd = f * (g_rate - k.gamma_rate * g);
        RatePair {
            trace_distance: dd,
            entropy: dd * slope,
        }
    };
    if pf.kinks && pf.value.abs() <= KINK_THRESHOLD {
        let r = pf.rate.abs();
        return Rates::Kink {
            left: pair(-r),
            right: pair(r),
        };
    }
    Rates::Smooth(pair(pf.rate * pf.value.signum()))
}
