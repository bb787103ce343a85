// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Backflow intervals and the BLP / relative-entropy non-Markovianity measures.
//!
//! Both measures are sums of rises of a monotone function of `D(t)` over the
//! maximal intervals on which `D` increases, so they share one interval list
//! and are evaluated endpoint-to-endpoint rather than by integrating a rate.

use rayon::prelude::*;
use serde::Serialize;

use crate::bath::SpectralParams;
use crate::dynamics::{partner_zero_function, relative_entropy, trace_distance, ModelConfig};
use crate::error::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 20_001;
pub const MIN_GRID_POINTS: usize = 1_000;

/// Default extremum refinement tolerance for a horizon `T`.
pub fn default_tolerance(horizon: f64) -> f64 {
    1e-9 * horizon
}

/// Steps smaller than this, relative to `D`, count as flat.
const ROUNDOFF_FLOOR: f64 = 8.0 * f64::EPSILON;
/// Allowed violation of monotonicity when auditing an interval.
const AUDIT_SLACK: f64 = 1e-10;
const AUDIT_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotoneInterval {
    pub t_start: f64,
    pub t_end: f64,
    pub d_start: f64,
    pub d_end: f64,
    pub s_start: f64,
    pub s_end: f64,
    /// The interval opens at a zero of the partner factor.
    pub kink_start: bool,
}

impl MonotoneInterval {
    fn new(t_start: f64, t_end: f64, d_start: f64, d_end: f64, kink_start: bool) -> Result<Self> {
        Ok(MonotoneInterval {
            t_start,
            t_end,
            d_start,
            d_end,
            s_start: relative_entropy(d_start)?,
            s_end: relative_entropy(d_end)?,
            kink_start,
        })
    }

    pub fn trace_distance_rise(&self) -> f64 {
        self.d_end - self.d_start
    }

    pub fn entropy_rise(&self) -> f64 {
        self.s_end - self.s_start
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureResult {
    pub blp: f64,
    pub entropy: f64,
    pub intervals: Vec<MonotoneInterval>,
    pub horizon: f64,
    pub grid_points: usize,
    pub refinement_tol: f64,
}

impl MeasureResult {
    fn from_intervals(intervals: Vec<MonotoneInterval>, horizon: f64, grid_points: usize, tol: f64) -> Self {
        let blp = intervals.iter().map(MonotoneInterval::trace_distance_rise).fold(0.0, |a, b| a + b);
        let entropy = intervals.iter().map(MonotoneInterval::entropy_rise).fold(0.0, |a, b| a + b);
        MeasureResult {
            blp,
            entropy,
            intervals,
            horizon,
            grid_points,
            refinement_tol: tol,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    t: f64,
    d: f64,
    kink: bool,
}

struct Curve<'a> {
    model: &'a ModelConfig,
    params: &'a SpectralParams,
}

impl Curve<'_> {
    fn d(&self, t: f64) -> Result<f64> {
        trace_distance(self.model, self.params, t)
    }

    /// Zero of the partner factor in `[a, b]`, given a sign change there.
    fn bisect_zero(&self, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = partner_zero_function(self.model, self.params, mid).unwrap_or(0.0);
            if fm == 0.0 {
                return mid;
            }
            if (fm > 0.0) == (fa > 0.0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }

    /// Golden-section search for a minimum (`sign = 1`) or maximum (`sign = -1`) of `D` on `[a, b]`.
    fn golden(&self, mut a: f64, mut b: f64, tol: f64, sign: f64) -> Result<(f64, f64)> {
        let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = sign * self.d(c)?;
        let mut fd = sign * self.d(d)?;
        while b - a > tol {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = sign * self.d(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = sign * self.d(d)?;
            }
            if c >= d {
                break;
            }
        }
        let (t, f) = if fc < fd { (c, fc) } else { (d, fd) };
        Ok((t, sign * f))
    }

    /// Checks that `D` moves in the stated direction on `[a, b]`.
    fn audit(&self, a: f64, b: f64, increasing: bool) -> Result<()> {
        let mut prev = self.d(a)?;
        for k in 1..=AUDIT_SAMPLES + 1 {
            let t = a + (b - a) * k as f64 / (AUDIT_SAMPLES + 1) as f64;
            let cur = self.d(t)?;
            let violation = if increasing { prev - cur } else { cur - prev };
            if violation > AUDIT_SLACK {
                return Err(Error::numerical(
                    "backflow interval search",
                    format!(
                        "trace distance is not {} on [{a}, {b}]; the grid is too coarse to bracket its extrema, use more grid points",
                        if increasing { "nondecreasing" } else { "nonincreasing" }
                    ),
                    violation,
                ));
            }
            prev = cur;
        }
        Ok(())
    }
}

fn check_grid(grid_points: usize, tol: f64) -> Result<()> {
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::ContractViolation(format!(
            "grid_points must be >= {MIN_GRID_POINTS}, got {grid_points}"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::ContractViolation(format!("tolerance must be > 0, got {tol}")));
    }
    Ok(())
}

fn sample_curve(curve: &Curve<'_>, horizon: f64, grid_points: usize) -> Result<Vec<Sample>> {
    let last = (grid_points - 1) as f64;
    let mut samples = Vec::with_capacity(grid_points + 64);
    let mut prev_zero: Option<(f64, f64)> = None;
    for i in 0..grid_points {
        let t = horizon * i as f64 / last;
        let zero_fn = partner_zero_function(curve.model, curve.params, t);
        if let (Some((tp, cp)), Some(c)) = (prev_zero, zero_fn) {
            if cp != 0.0 && c != 0.0 && (cp > 0.0) != (c > 0.0) {
                let tz = curve.bisect_zero(tp, t, cp);
                if tz > tp && tz < t {
                    samples.push(Sample {
                        t: tz,
                        d: curve.d(tz)?,
                        kink: true,
                    });
                }
            }
        }
        samples.push(Sample {
            t,
            d: curve.d(t)?,
            kink: zero_fn == Some(0.0),
        });
        prev_zero = zero_fn.map(|c| (t, c));
    }
    Ok(samples)
}

fn rises(a: &Sample, b: &Sample) -> bool {
    b.d - a.d > ROUNDOFF_FLOOR * a.d.max(b.d)
}

/// Maximal intervals of `[0, T]` on which the trace distance increases.
///
/// Extrema are bracketed on a uniform grid of `grid_points` points, with the
/// zeros of the partner factor added as extra nodes, and then refined by
/// golden-section search to a window below `tol`. Intervals with no
/// resolvable rise are not reported.
pub fn find_increase_intervals(
    m: &ModelConfig,
    p: &SpectralParams,
    grid_points: usize,
    tol: f64,
) -> Result<Vec<MonotoneInterval>> {
    check_grid(grid_points, tol)?;
    let curve = Curve { model: m, params: p };
    let horizon = m.horizon();
    let samples = sample_curve(&curve, horizon, grid_points)?;

    // Turning points as (index, is_minimum).
    let mut turning = Vec::new();
    let steps: Vec<bool> = samples.windows(2).map(|w| rises(&w[0], &w[1])).collect();
    if steps.first() == Some(&true) {
        turning.push((0, true));
    }
    for j in 1..steps.len() {
        match (steps[j - 1], steps[j]) {
            (false, true) => turning.push((j, true)),
            (true, false) => turning.push((j, false)),
            _ => {}
        }
    }

    let refine = |j: usize, minimum: bool| -> Result<(f64, f64)> {
        let s = samples[j];
        if (minimum && s.kink) || j == 0 || j + 1 == samples.len() {
            return Ok((s.t, s.d));
        }
        let (t, d) = curve.golden(samples[j - 1].t, samples[j + 1].t, tol, if minimum { 1.0 } else { -1.0 })?;
        // The grid node itself may be the better extremum when the bracket is flat.
        let better = if minimum { s.d < d } else { s.d > d };
        Ok(if better { (s.t, s.d) } else { (t, d) })
    };

    let mut intervals = Vec::new();
    let mut last_t = 0.0;
    let mut idx = 0;
    while idx < turning.len() {
        let (j_min, is_min) = turning[idx];
        if !is_min {
            // A maximum not preceded by a rise: only the leading descent follows it.
            let (t_max, _) = refine(j_min, false)?;
            curve.audit(last_t, t_max, false)?;
            last_t = t_max;
            idx += 1;
            continue;
        }
        let (t0, d0) = refine(j_min, true)?;
        if t0 > last_t {
            curve.audit(last_t, t0, false)?;
        }
        let (t1, d1) = match turning.get(idx + 1) {
            Some(&(j_max, false)) => refine(j_max, false)?,
            _ => {
                let end = samples.last().expect("samples");
                (end.t, end.d)
            }
        };
        curve.audit(t0, t1, true)?;
        if d1 > d0 {
            intervals.push(MonotoneInterval::new(t0, t1, d0, d1, samples[j_min].kink)?);
        }
        last_t = t1;
        idx += 2;
    }
    if last_t < horizon {
        curve.audit(last_t, horizon, false)?;
    }
    Ok(intervals)
}

/// BLP measure over `[0, T]`.
pub fn blp_measure(m: &ModelConfig, p: &SpectralParams, grid_points: usize, tol: f64) -> Result<MeasureResult> {
    measure(m, p, grid_points, tol)
}

/// Relative-entropy measure over `[0, T]`. Uses the same intervals as [`blp_measure`].
pub fn entropy_measure(m: &ModelConfig, p: &SpectralParams, grid_points: usize, tol: f64) -> Result<MeasureResult> {
    measure(m, p, grid_points, tol)
}

/// Both measures from one interval search.
pub fn measure(m: &ModelConfig, p: &SpectralParams, grid_points: usize, tol: f64) -> Result<MeasureResult> {
    let intervals = find_increase_intervals(m, p, grid_points, tol)?;
    Ok(MeasureResult::from_intervals(intervals, m.horizon(), grid_points, tol))
}

/// Restrict an interval list computed on `[0, T_max]` to `[0, horizon]`.
fn truncate_intervals(
    intervals: &[MonotoneInterval],
    m: &ModelConfig,
    p: &SpectralParams,
    horizon: f64,
) -> Result<Vec<MonotoneInterval>> {
    let mut out = Vec::new();
    for iv in intervals {
        if iv.t_start >= horizon {
            break;
        }
        if iv.t_end <= horizon {
            out.push(*iv);
        } else {
            let d_end = trace_distance(m, p, horizon)?;
            if d_end > iv.d_start {
                out.push(MonotoneInterval::new(iv.t_start, horizon, iv.d_start, d_end, iv.kink_start)?);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Ohmicity,
    Coupling,
    Cutoff,
    Horizon,
    QubitCount,
}

impl SweepAxis {
    /// Column label used in tables and on the command line.
    pub fn label(self) -> &'static str {
        match self {
            SweepAxis::Ohmicity => "s",
            SweepAxis::Coupling => "G",
            SweepAxis::Cutoff => "omega_c",
            SweepAxis::Horizon => "T",
            SweepAxis::QubitCount => "N",
        }
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "s" | "ohmicity" => SweepAxis::Ohmicity,
            "G" | "g" | "coupling" => SweepAxis::Coupling,
            "omega_c" | "omega-c" | "cutoff" => SweepAxis::Cutoff,
            "T" | "horizon" => SweepAxis::Horizon,
            "N" | "qubit_count" | "qubits" => SweepAxis::QubitCount,
            other => return Err(format!("unknown sweep axis `{other}` (expected s, G, omega_c, T or N)")),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    axis: SweepAxis,
    values: Vec<f64>,
    model: ModelConfig,
    params: SpectralParams,
}

impl SweepSpec {
    pub fn new(axis: SweepAxis, values: Vec<f64>, model: ModelConfig, params: SpectralParams) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("values", "sweep needs at least one value"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("values", "sweep values must be finite"));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("values", "sweep values must be strictly increasing"));
        }
        if axis == SweepAxis::QubitCount && values.iter().any(|&v| v < 1.0 || v.fract() != 0.0) {
            return Err(Error::invalid("values", "qubit counts must be positive integers"));
        }
        Ok(SweepSpec {
            axis,
            values,
            model,
            params,
        })
    }

    pub fn axis(&self) -> SweepAxis {
        self.axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn row_inputs(&self, value: f64) -> Result<(ModelConfig, SpectralParams)> {
        let (m, p) = (self.model, self.params);
        Ok(match self.axis {
            SweepAxis::Ohmicity => (m, p.with_ohmicity(value)?),
            SweepAxis::Coupling => (m, p.with_coupling(value)?),
            SweepAxis::Cutoff => (m, p.with_cutoff(value)?),
            SweepAxis::Horizon => (m.with_horizon(value)?, p),
            SweepAxis::QubitCount => (m.with_qubits(value as usize)?, p),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSummary {
    pub blp: f64,
    pub entropy: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: std::result::Result<SweepSummary, Error>,
}

fn summarize(intervals: &[MonotoneInterval]) -> SweepSummary {
    SweepSummary {
        blp: intervals.iter().map(MonotoneInterval::trace_distance_rise).fold(0.0, |a, b| a + b),
        entropy: intervals.iter().map(MonotoneInterval::entropy_rise).fold(0.0, |a, b| a + b),
        intervals: intervals.len(),
    }
}

/// Evaluate both measures for every value of the sweep axis.
///
/// Rows come back in the order of `spec.values()` whatever `jobs` is. A
/// horizon sweep evaluates one trajectory up to the largest horizon and
/// truncates it for the others.
pub fn sweep(spec: &SweepSpec, grid_points: usize, tol: f64, jobs: usize) -> Result<Vec<SweepRow>> {
    check_grid(grid_points, tol)?;
    if spec.axis == SweepAxis::Horizon {
        let t_max = *spec.values.last().expect("nonempty");
        let (m, p) = spec.row_inputs(t_max)?;
        return Ok(match find_increase_intervals(&m, &p, grid_points, tol) {
            Ok(all) => spec
                .values
                .iter()
                .map(|&value| SweepRow {
                    value,
                    outcome: spec
                        .row_inputs(value)
                        .and_then(|_| truncate_intervals(&all, &m, &p, value))
                        .map(|iv| summarize(&iv)),
                })
                .collect(),
            Err(e) => spec
                .values
                .iter()
                .map(|&value| SweepRow {
                    value,
                    outcome: Err(e.clone()),
                })
                .collect(),
        });
    }

    let row = |&value: &f64| {
        let outcome = spec
            .row_inputs(value)
            .and_then(|(m, p)| find_increase_intervals(&m, &p, grid_points, tol))
            .map(|iv| summarize(&iv));
        if let Err(e) = &outcome {
            log::warn!("sweep row {}={value} failed: {e}", spec.axis.label());
        }
        SweepRow { value, outcome }
    };
    if jobs <= 1 {
        return Ok(spec.values.iter().map(row).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::ContractViolation(format!("cannot start {jobs} worker threads: {e}")))?;
    Ok(pool.install(|| spec.values.par_iter().map(row).collect()))
}
