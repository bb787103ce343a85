// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference: a finite set of bath modes, the full
//! qubits-times-Fock Hilbert space, and a dense matrix exponential.
//!
//! Nothing here uses the displaced-oscillator solution. The Hamiltonian is
//! assembled entry by entry, split into the connected blocks of its nonzero
//! pattern, and each block is exponentiated by Pade scaling and squaring.

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bath::{spectral_density, SpectralParams};
use crate::dynamics::{max_norm, BasisString, QubitState, Variant};
use crate::error::{Error, Result};
use crate::expm::expm;
use crate::special::poisson_upper_tail;

/// Largest full Hilbert-space dimension the oracle will build.
pub const MAX_DIMENSION: usize = 1 << 14;
/// Fock dimensions chosen automatically keep each mode's tail below this.
pub const AUTO_TRUNCATION_TAIL: f64 = 1e-12;
pub const DEFAULT_LEAKAGE_BOUND: f64 = 1e-10;
/// Largest register [`arbitrate_variants`] accepts.
pub const MAX_ARBITRATION_QUBITS: usize = 3;
const AGREEMENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub omega: f64,
    pub coupling: Complex64,
}

/// How many Fock levels to keep per mode.
#[derive(Debug, Clone, PartialEq)]
pub enum FockTruncation {
    /// Smallest dimension whose tail bound is below [`AUTO_TRUNCATION_TAIL`].
    Auto,
    Uniform(usize),
    PerMode(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBath {
    modes: Vec<Mode>,
    truncation: FockTruncation,
}

impl DiscreteBath {
    pub fn new(modes: Vec<Mode>, truncation: FockTruncation) -> Result<Self> {
        for (k, m) in modes.iter().enumerate() {
            if !(m.omega.is_finite() && m.omega > 0.0) {
                return Err(Error::invalid("omega_k", format!("mode {k} has frequency {}", m.omega)));
            }
            if !(m.coupling.re.is_finite() && m.coupling.im.is_finite()) {
                return Err(Error::invalid("g_k", format!("mode {k} has a non-finite coupling")));
            }
        }
        let mut sorted: Vec<f64> = modes.iter().map(|m| m.omega).collect();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("omega_k", "mode frequencies must be distinct"));
        }
        let bath = DiscreteBath { modes, truncation: FockTruncation::Auto };
        bath.with_truncation(truncation)
    }

    pub fn single_mode(omega: f64, coupling: Complex64, fock_dim: usize) -> Result<Self> {
        Self::new(vec![Mode { omega, coupling }], FockTruncation::Uniform(fock_dim))
    }

    pub fn with_truncation(mut self, truncation: FockTruncation) -> Result<Self> {
        match &truncation {
            FockTruncation::Auto => {}
            FockTruncation::Uniform(d) => check_fock_dim(*d)?,
            FockTruncation::PerMode(dims) => {
                if dims.len() != self.modes.len() {
                    return Err(Error::invalid(
                        "d_k",
                        format!("{} Fock dimensions for {} modes", dims.len(), self.modes.len()),
                    ));
                }
                dims.iter().try_for_each(|&d| check_fock_dim(d))?;
            }
        }
        self.truncation = truncation;
        Ok(self)
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn truncation(&self) -> &FockTruncation {
        &self.truncation
    }

    /// Mean occupation bound per mode for an `N`-qubit register: `(2 N |g_k| / w_k)^2`.
    fn occupation_bounds(&self, qubits: usize) -> Vec<f64> {
        self.modes
            .iter()
            .map(|m| (2.0 * qubits as f64 * m.coupling.norm() / m.omega).powi(2))
            .collect()
    }

    /// Fock dimensions used for an `N`-qubit register.
    pub fn fock_dims(&self, qubits: usize) -> Vec<usize> {
        match &self.truncation {
            FockTruncation::Uniform(d) => vec![*d; self.modes.len()],
            FockTruncation::PerMode(dims) => dims.clone(),
            FockTruncation::Auto => self
                .occupation_bounds(qubits)
                .into_iter()
                .map(|lambda| {
                    let mut d = 2;
                    while poisson_upper_tail(lambda, d - 1) >= AUTO_TRUNCATION_TAIL {
                        d += 1;
                    }
                    d
                })
                .collect(),
        }
    }

    /// Bound on the displaced-state mass that reaches the top kept Fock level.
    ///
    /// The truncated ladder operators are wrong from level `d_k - 1` on, so the
    /// tail is counted from there rather than from `d_k`.
    pub fn truncation_leakage(&self, qubits: usize) -> f64 {
        self.occupation_bounds(qubits)
            .into_iter()
            .zip(self.fock_dims(qubits))
            .map(|(lambda, d)| poisson_upper_tail(lambda, d - 1))
            .sum()
    }
}

fn check_fock_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::invalid("d_k", format!("Fock dimension must be >= 2, got {d}")));
    }
    Ok(())
}

/// Midpoint-rule bath: `w_k = (k - 1/2) w_max / K`, `|g_k|^2 = J(w_k) (w_max / K) / 4`.
pub fn discretize(p: &SpectralParams, modes: usize, omega_max: f64) -> Result<DiscreteBath> {
    if !p.beta().is_zero_temperature() {
        return Err(Error::ContractViolation(
            "the exact reference is zero-temperature only; use beta = inf".into(),
        ));
    }
    if modes == 0 {
        return Err(Error::invalid("K", "at least one mode is required"));
    }
    if !(omega_max.is_finite() && omega_max > 0.0) {
        return Err(Error::invalid("omega_max", format!("must be positive and finite, got {omega_max}")));
    }
    let h = omega_max / modes as f64;
    let list = (0..modes)
        .map(|k| {
            let omega = (k as f64 + 0.5) * h;
            let g = (0.25 * spectral_density(p, omega) * h).sqrt();
            Mode {
                omega,
                coupling: Complex64::new(g, 0.0),
            }
        })
        .collect();
    DiscreteBath::new(list, FockTruncation::Auto)
}

/// `(Gamma_K, Delta_K)` at zero temperature.
pub fn discrete_kernels(b: &DiscreteBath, t: f64) -> (f64, f64) {
    let mut gamma = 0.0;
    let mut delta = 0.0;
    for m in &b.modes {
        let w = 4.0 * m.coupling.norm_sqr() / (m.omega * m.omega);
        let x = m.omega * t;
        gamma += w * 2.0 * (0.5 * x).sin().powi(2);
        delta += w * (x.sin() - x);
    }
    (gamma, delta)
}

/// Product state every qubit starts in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialSign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactOptions {
    /// Qubit splitting in the Hamiltonian.
    pub omega0: f64,
    /// Largest acceptable [`ExactResult::truncation_leakage`].
    pub leakage_bound: f64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            omega0: 0.0,
            leakage_bound: DEFAULT_LEAKAGE_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    /// State of qubit 1 after tracing out the modes and the other qubits.
    pub reduced: QubitState,
    /// `|Tr rho - 1|` of the full state.
    pub norm_error: f64,
    /// `|Tr rho^2 - 1|` of the full state.
    pub purity_error: f64,
    /// Largest entry of `U^dag U - 1` over all blocks.
    pub unitarity_error: f64,
    pub truncation_leakage: f64,
    pub fock_dims: Vec<usize>,
    pub dimension: usize,
}

impl ExactResult {
    /// `|eta| = 2 |<0| rho |1>|`
    pub fn coherence(&self) -> f64 {
        2.0 * self.reduced.0[(0, 1)].norm()
    }
}

/// Full Hamiltonian as a list of nonzero entries, basis index `q * M + m`
/// with the qubit register most significant and mode 1 the leading Fock digit.
struct SparseHamiltonian {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

fn build_hamiltonian(qubits: usize, modes: &[Mode], dims: &[usize], omega0: f64) -> SparseHamiltonian {
    let fock: usize = dims.iter().product();
    let dim = (1usize << qubits) * fock;
    // stride[k]: index step for one quantum in mode k.
    let mut stride = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * dims[k + 1];
    }
    let mut entries = Vec::new();
    for q in 0..1usize << qubits {
        let s = BasisString::from_index(q, qubits).sum() as f64;
        for f in 0..fock {
            let i = q * fock + f;
            let mut diag = 0.5 * omega0 * s;
            for (k, mode) in modes.iter().enumerate() {
                let n = (f / stride[k]) % dims[k];
                diag += mode.omega * n as f64;
                if n + 1 < dims[k] {
                    // <n+1| s g b^dag |n> and its conjugate.
                    let amp = mode.coupling * (s * ((n + 1) as f64).sqrt());
                    let j = i + stride[k];
                    if amp != Complex64::new(0.0, 0.0) {
                        entries.push((j, i, amp));
                        entries.push((i, j, amp.conj()));
                    }
                }
            }
            entries.push((i, i, Complex64::new(diag, 0.0)));
        }
    }
    SparseHamiltonian { dim, entries }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Index sets of the connected components of the nonzero pattern.
fn connected_blocks(h: &SparseHamiltonian) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..h.dim).collect();
    for &(i, j, _) in &h.entries {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = vec![usize::MAX; h.dim];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..h.dim {
        let root = find(&mut parent, i);
        if label[root] == usize::MAX {
            label[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[label[root]].push(i);
    }
    blocks
}

fn initial_amplitude(index: usize, qubits: usize, fock: usize, sign: InitialSign) -> Complex64 {
    if !index.is_multiple_of(fock) {
        return Complex64::new(0.0, 0.0);
    }
    let q = index / fock;
    let norm = 0.5f64.powf(0.5 * qubits as f64);
    let flips = match sign {
        InitialSign::Plus => 0,
        InitialSign::Minus => q.count_ones(),
    };
    Complex64::new(if flips % 2 == 0 { norm } else { -norm }, 0.0)
}

/// Exact state of qubit 1 at time `t`, with the bath starting in its vacuum.
pub fn exact_reduced_state(
    qubits: usize,
    b: &DiscreteBath,
    t: f64,
    sign: InitialSign,
    options: &ExactOptions,
) -> Result<ExactResult> {
    if qubits == 0 {
        return Err(Error::invalid("N", "at least one qubit is required"));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::invalid("t", format!("must be finite and >= 0, got {t}")));
    }
    if !options.omega0.is_finite() {
        return Err(Error::invalid("omega0", "must be finite"));
    }
    let dims = b.fock_dims(qubits);
    let dimension = dims
        .iter()
        .try_fold(1usize.checked_shl(qubits as u32).unwrap_or(0), |acc, &d| acc.checked_mul(d))
        .filter(|&d| d > 0)
        .unwrap_or(usize::MAX);
    if dimension > MAX_DIMENSION {
        return Err(Error::ContractViolation(format!(
            "full dimension 2^{qubits} x {dims:?} = {dimension} exceeds the limit of {MAX_DIMENSION}"
        )));
    }
    let truncation_leakage = b.truncation_leakage(qubits);
    if truncation_leakage > options.leakage_bound {
        return Err(Error::numerical(
            "exact reference",
            format!(
                "Fock truncation {dims:?} leaks up to {truncation_leakage:e} (bound {:e}); raise d_k",
                options.leakage_bound
            ),
            truncation_leakage,
        ));
    }

    let fock: usize = dims.iter().product();
    let h = build_hamiltonian(qubits, &b.modes, &dims, options.omega0);
    let blocks = connected_blocks(&h);
    let mut block_of = vec![(0usize, 0usize); h.dim];
    for (bi, block) in blocks.iter().enumerate() {
        for (pos, &i) in block.iter().enumerate() {
            block_of[i] = (bi, pos);
        }
    }
    let mut dense: Vec<DMatrix<Complex64>> = blocks.iter().map(|bl| DMatrix::zeros(bl.len(), bl.len())).collect();
    for &(i, j, v) in &h.entries {
        let (bi, pi) = block_of[i];
        let (_, pj) = block_of[j];
        dense[bi][(pi, pj)] += v;
    }

    // Blocks with identical entries share one propagator.
    let mut unique: Vec<DMatrix<Complex64>> = Vec::new();
    let mut which = Vec::with_capacity(dense.len());
    for hb in dense {
        match unique.iter().position(|u| *u == hb) {
            Some(i) => which.push(i),
            None => {
                which.push(unique.len());
                unique.push(hb);
            }
        }
    }
    let propagators: Vec<(DMatrix<Complex64>, f64)> = unique
        .into_par_iter()
        .map(|hb| {
            let n = hb.nrows();
            let u = expm(&(hb * Complex64::new(0.0, -t)));
            let err = max_norm((u.adjoint() * &u - DMatrix::identity(n, n)).iter());
            (u, err)
        })
        .collect();

    let mut psi = vec![Complex64::new(0.0, 0.0); h.dim];
    let mut unitarity_error: f64 = 0.0;
    for (block, &ui) in blocks.iter().zip(&which) {
        let psi0 = DVector::from_iterator(
            block.len(),
            block.iter().map(|&i| initial_amplitude(i, qubits, fock, sign)),
        );
        let (u, err) = &propagators[ui];
        unitarity_error = unitarity_error.max(*err);
        for (&i, a) in block.iter().zip((u * psi0).iter()) {
            psi[i] = *a;
        }
    }

    let norm_sqr: f64 = psi.iter().map(Complex64::norm_sqr).sum();
    let half = h.dim / 2;
    let mut reduced = Matrix2::zeros();
    for a in 0..2 {
        for c in 0..2 {
            reduced[(a, c)] = (0..half).map(|r| psi[a * half + r] * psi[c * half + r].conj()).sum();
        }
    }
    Ok(ExactResult {
        reduced: QubitState(reduced),
        norm_error: (norm_sqr - 1.0).abs(),
        purity_error: (norm_sqr * norm_sqr - 1.0).abs(),
        unitarity_error,
        truncation_leakage,
        fock_dims: dims,
        dimension,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArbitrationPoint {
    pub t: f64,
    pub gamma_k: f64,
    pub delta_k: f64,
    pub exact: f64,
    pub paper: f64,
    pub pairwise: f64,
    pub paper_deviation: f64,
    pub pairwise_deviation: f64,
    pub norm_error: f64,
    pub truncation_leakage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArbitrationReport {
    pub qubits: usize,
    pub omegas: Vec<f64>,
    pub couplings: Vec<f64>,
    pub fock_dims: Vec<usize>,
    pub points: Vec<ArbitrationPoint>,
    pub max_paper_deviation: f64,
    pub max_pairwise_deviation: f64,
    /// Formula with the smaller worst-case deviation; `None` on a tie.
    pub closest: Option<Variant>,
}

/// Compare `|eta|` from exact evolution with both partner-factor formulas.
///
/// For one and two qubits the formulas coincide and must match the exact
/// value to 1e-6; a mismatch there is reported as a numerical failure.
pub fn arbitrate_variants(
    qubits: usize,
    b: &DiscreteBath,
    times: &[f64],
    options: &ExactOptions,
) -> Result<ArbitrationReport> {
    if qubits == 0 || qubits > MAX_ARBITRATION_QUBITS {
        return Err(Error::ContractViolation(format!(
            "variant arbitration needs 1 to {MAX_ARBITRATION_QUBITS} qubits, got {qubits}"
        )));
    }
    let n = qubits as f64;
    let mut points = Vec::with_capacity(times.len());
    for &t in times {
        let exact = exact_reduced_state(qubits, b, t, InitialSign::Plus, options)?;
        let (gamma_k, delta_k) = discrete_kernels(b, t);
        let f = (-gamma_k).exp();
        let paper = if qubits == 1 { f } else { f * (0.5 * n * delta_k).cos().abs() };
        let pairwise = f * delta_k.cos().abs().powi(qubits as i32 - 1);
        let eta = exact.coherence();
        let point = ArbitrationPoint {
            t,
            gamma_k,
            delta_k,
            exact: eta,
            paper,
            pairwise,
            paper_deviation: (paper - eta).abs(),
            pairwise_deviation: (pairwise - eta).abs(),
            norm_error: exact.norm_error,
            truncation_leakage: exact.truncation_leakage,
        };
        if qubits <= 2 && point.paper_deviation.max(point.pairwise_deviation) > AGREEMENT_TOL {
            return Err(Error::numerical(
                "variant arbitration",
                format!("at t = {t} exact |eta| = {eta} disagrees with the closed form {paper}"),
                point.paper_deviation.max(point.pairwise_deviation),
            ));
        }
        points.push(point);
    }
    let max_paper_deviation = points.iter().map(|p| p.paper_deviation).fold(0.0, f64::max);
    let max_pairwise_deviation = points.iter().map(|p| p.pairwise_deviation).fold(0.0, f64::max);
    let closest = if max_paper_deviation < max_pairwise_deviation {
        Some(Variant::Paper)
    } else if max_pairwise_deviation < max_paper_deviation {
        Some(Variant::Pairwise)
    } else {
        None
    };
    Ok(ArbitrationReport {
        qubits,
        omegas: b.modes.iter().map(|m| m.omega).collect(),
        couplings: b.modes.iter().map(|m| m.coupling.norm()).collect(),
        fock_dims: b.fock_dims(qubits),
        points,
        max_paper_deviation,
        max_pairwise_deviation,
        closest,
    })
}
