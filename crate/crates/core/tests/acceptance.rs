// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use dephasim::bath::{self, SpectralParams};
use dephasim::dynamics::{self, ModelConfig, Variant};
use dephasim::measures::{self, SweepAxis, SweepSpec, DEFAULT_GRID_POINTS};
use dephasim::oracle::{self, DiscreteBath, ExactOptions, FockTruncation, InitialSign, Mode};
use num_complex::Complex64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn zero_t(g: f64, s: f64, wc: f64) -> SpectralParams {
    SpectralParams::zero_temperature(g, s, wc).unwrap()
}

fn model(n: usize, horizon: f64) -> ModelConfig {
    ModelConfig::new(n, 0.0, Variant::Paper, horizon).unwrap()
}

fn measure(n: usize, p: &SpectralParams, horizon: f64) -> measures::MeasureResult {
    measures::measure(&model(n, horizon), p, DEFAULT_GRID_POINTS, measures::default_tolerance(horizon)).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, budget_s: u64, detail: String) -> Outcome {
    check(elapsed.as_secs_f64() < budget_s as f64, format!("{detail}; {:.1} s of {budget_s} s", elapsed.as_secs_f64()))
}

/// Central difference, switching to a second-order one-sided rule near t = 0.
fn derivative(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    if t >= 2.0 * h {
        (f(t + h) - f(t - h)) / (2.0 * h)
    } else {
        (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h)
    }
}

fn kernels_vs_quadrature() -> Outcome {
    let start = Instant::now();
    let (mut worst_gamma, mut worst_delta, mut worst_rate) = (0.0f64, 0.0f64, 0.0f64);
    let mut cases = 0;
    for s in [0.5, 1.0, 1.5, 2.0, 3.0] {
        for g in [0.5, 1.0, 3.0] {
            for wc in [0.5, 1.0, 3.0] {
                let p = zero_t(g, s, wc);
                let rate_scale = g * dephasim::special::gamma(s) * wc;
                let h = 1e-4 / wc;
                for i in 0..50 {
                    let t = 20.0 * i as f64 / 49.0;
                    let k = bath::kernel_values(&p, t).unwrap();
                    let q = bath::kernel_quadrature(&p, t).unwrap();
                    worst_gamma = worst_gamma.max(rel(k.gamma, q.gamma));
                    worst_delta = worst_delta.max(rel(k.delta, q.delta));
                    let fd_gamma = derivative(|u| bath::gamma_exact(&p, u).unwrap(), t, h);
                    let fd_delta = derivative(|u| bath::delta_exact(&p, u).unwrap(), t, h);
                    for (fd, exact) in [(fd_gamma, k.gamma_rate), (fd_delta, k.delta_rate)] {
                        // Rates vanish at t = 0, where only an absolute comparison is meaningful.
                        let err = if exact == 0.0 { fd.abs() / rate_scale } else { rel(fd, exact) };
                        worst_rate = worst_rate.max(err);
                    }
                    cases += 1;
                }
            }
        }
    }
    let detail = format!(
        "{cases} points: max rel err Gamma {worst_gamma:.1e}, Delta {worst_delta:.1e} (< 1e-8), rates vs finite differences {worst_rate:.1e} (< 1e-6)"
    );
    if worst_gamma < 1e-8 && worst_delta < 1e-8 && worst_rate < 1e-6 {
        within(start.elapsed(), 60, detail)
    } else {
        Err(detail)
    }
}

fn exact_zeros() -> Outcome {
    let mut nonzero = Vec::new();
    let mut count = 0;
    for s in [0.5, 1.0, 2.0] {
        for g in [0.5, 1.0, 3.0] {
            for wc in [0.5, 1.0, 3.0] {
                let r = measure(1, &zero_t(g, s, wc), 20.0);
                count += 1;
                if r.blp != 0.0 || r.entropy != 0.0 {
                    nonzero.push(format!("s={s} G={g} wc={wc}: {} / {}", r.blp, r.entropy));
                }
            }
        }
    }
    check(nonzero.is_empty(), format!("{count} cases, nonzero: {nonzero:?}"))
}

/// Independent reference for N = 1, s = 3, G = 1, w_c = 3:
/// Gamma = 1 - (1 - x^2) / (1 + x^2)^2 with x = 3t, so D = e^{-Gamma}.
fn single_qubit_reference() -> (f64, f64) {
    let d = |t: f64| {
        let x2 = 9.0 * t * t;
        (-(1.0 - (1.0 - x2) / ((1.0 + x2) * (1.0 + x2)))).exp()
    };
    let entropy = |d: f64| d * ((1.0 + d) / (1.0 - d)).ln();
    let n = 1_000_000;
    let grid = |i: usize| 20.0 * i as f64 / n as f64;
    let i_min = (0..=n).min_by(|&a, &b| d(grid(a)).total_cmp(&d(grid(b)))).unwrap();
    let (mut a, mut b) = (grid(i_min.saturating_sub(1)), grid((i_min + 1).min(n)));
    let r = 0.5 * (5f64.sqrt() - 1.0);
    while b - a > 1e-12 {
        let (c, e) = (b - r * (b - a), a + r * (b - a));
        if d(c) < d(e) {
            b = e;
        } else {
            a = c;
        }
    }
    let d_min = d(0.5 * (a + b));
    (d(20.0) - d_min, entropy(d(20.0)) - entropy(d_min))
}

fn single_qubit_super_ohmic() -> Outcome {
    let start = Instant::now();
    let r = measure(1, &zero_t(1.0, 3.0, 3.0), 20.0);
    let (ref_blp, ref_entropy) = single_qubit_reference();
    let ok = (r.blp - 0.0431).abs() < 1e-3
        && (r.entropy - 0.065).abs() < 2e-3
        && (r.blp - ref_blp).abs() < 1e-3
        && (r.entropy - ref_entropy).abs() < 2e-3;
    let detail = format!(
        "blp {:.10} (0.0431 +- 1e-3, reference {ref_blp:.10}), entropy {:.10} (0.065 +- 2e-3, reference {ref_entropy:.10})",
        r.blp, r.entropy
    );
    if ok {
        within(start.elapsed(), 10, detail)
    } else {
        Err(detail)
    }
}

fn enhancement() -> Outcome {
    let p3 = zero_t(1.0, 3.0, 3.0);
    let p1 = zero_t(1.0, 1.0, 3.0);
    let (one, two) = (measure(1, &p3, 20.0).blp, measure(2, &p3, 20.0).blp);
    let (one_ohmic, two_ohmic) = (measure(1, &p1, 20.0).blp, measure(2, &p1, 20.0).blp);
    check(
        two / one > 10.0 && two_ohmic > 0.0 && one_ohmic == 0.0,
        format!("s=3 ratio {:.1} (> 10); s=1 N=2 {two_ohmic:.4} (> 0), N=1 {one_ohmic} (= 0)", two / one),
    )
}

fn unbounded_growth() -> Outcome {
    let p = zero_t(1.0, 3.0, 3.0);
    let r: Vec<_> = [10.0, 20.0, 40.0].iter().map(|&t| measure(2, &p, t)).collect();
    check(
        r[2].blp > r[1].blp && r[1].blp > r[0].blp && r[2].entropy > r[1].entropy && r[1].entropy > r[0].entropy,
        format!(
            "blp {:.4} < {:.4} < {:.4}, entropy {:.4} < {:.4} < {:.4} at T = 10, 20, 40",
            r[0].blp, r[1].blp, r[2].blp, r[0].entropy, r[1].entropy, r[2].entropy
        ),
    )
}

fn sweep_blp(axis: SweepAxis, values: Vec<f64>, n: usize) -> Vec<f64> {
    let spec = SweepSpec::new(axis, values, model(n, 20.0), zero_t(1.0, 3.0, 3.0)).unwrap();
    measures::sweep(&spec, DEFAULT_GRID_POINTS, measures::default_tolerance(20.0), 1)
        .unwrap()
        .into_iter()
        .map(|r| r.outcome.unwrap().blp)
        .collect()
}

fn qubit_scaling() -> Outcome {
    let blp = sweep_blp(SweepAxis::QubitCount, vec![2.0, 3.0, 4.0, 5.0, 6.0], 2);
    check(
        blp.windows(2).all(|w| w[1] >= w[0]),
        format!("blp for N = 2..6: {:?}", blp.iter().map(|b| format!("{b:.3}")).collect::<Vec<_>>()),
    )
}

fn coupling_maximum() -> Outcome {
    let values: Vec<f64> = (1..=40).map(|i| i as f64 / 10.0).collect();
    let blp = sweep_blp(SweepAxis::Coupling, values.clone(), 2);
    let (imax, max) = blp.iter().enumerate().fold((0, f64::MIN), |acc, (i, &b)| if b > acc.1 { (i, b) } else { acc });
    check(
        imax > 0 && imax + 1 < blp.len() && max > blp[0] && max > blp[blp.len() - 1],
        format!(
            "maximum {max:.4} at G = {} (ends: G = 0.1 -> {:.4}, G = 4 -> {:.4})",
            values[imax],
            blp[0],
            blp[blp.len() - 1]
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let opts = ExactOptions::default();
    let t1 = std::f64::consts::PI;
    let single = DiscreteBath::single_mode(1.0, Complex64::new(0.5, 0.0), 24).unwrap();
    let r1 = oracle::exact_reduced_state(1, &single, t1, InitialSign::Plus, &opts).unwrap();
    let (g1, _) = oracle::discrete_kernels(&single, t1);
    let err1 = (r1.reduced.0[(0, 1)].norm() - 0.5 * (-g1).exp()).abs();

    let g = Complex64::new(0.02f64.sqrt(), 0.0);
    let pair = DiscreteBath::new(
        vec![Mode { omega: 1.0, coupling: g }, Mode { omega: 1.6, coupling: g }],
        FockTruncation::Uniform(16),
    )
    .unwrap();
    let t2 = 8.0;
    let r2 = oracle::exact_reduced_state(2, &pair, t2, InitialSign::Plus, &opts).unwrap();
    let (g2, d2) = oracle::discrete_kernels(&pair, t2);
    let err2 = (r2.reduced.0[(0, 1)].norm() - 0.5 * (-g2).exp() * d2.cos().abs()).abs();

    let trace = r1.norm_error.max(r2.norm_error);
    let purity = r1.purity_error.max(r2.purity_error);
    let detail = format!(
        "N=1 err {err1:.1e} (< 1e-8), N=2 err {err2:.1e} (< 1e-6, Delta_K = {d2:.3}), trace {trace:.1e}, purity {purity:.1e} (< 1e-8)"
    );
    if err1 < 1e-8 && err2 < 1e-6 && trace < 1e-8 && purity < 1e-8 {
        within(start.elapsed(), 120, detail)
    } else {
        Err(detail)
    }
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

fn measure_condition_identity() -> Outcome {
    let configs = [(1, 3.0), (2, 3.0), (2, 1.0), (3, 0.5), (4, 2.0)];
    let mut identical = true;
    for &(n, s) in &configs {
        let (m, p) = (model(n, 20.0), zero_t(1.0, s, 3.0));
        let tol = measures::default_tolerance(20.0);
        let a = measures::blp_measure(&m, &p, DEFAULT_GRID_POINTS, tol).unwrap().intervals;
        let b = measures::entropy_measure(&m, &p, DEFAULT_GRID_POINTS, tol).unwrap().intervals;
        identical &= a == b;
    }
    let (mut sampled, mut mismatched) = (0, 0);
    let per_config = 2000;
    for &(n, s) in &configs {
        let (m, p) = (model(n, 20.0), zero_t(1.0, s, 3.0));
        for i in 1..=per_config {
            let t = 20.0 * i as f64 / per_config as f64;
            let d = dynamics::trace_distance(&m, &p, t).unwrap();
            if !(d > 0.0 && d < 1.0) {
                continue;
            }
            let r = dynamics::rates(&m, &p, t).unwrap().forward();
            sampled += 1;
            if sign(r.trace_distance) != sign(r.entropy) {
                mismatched += 1;
            }
        }
    }
    check(
        identical && mismatched == 0 && sampled >= 10_000,
        format!("interval lists identical: {identical}; sign mismatches {mismatched} of {sampled} points"),
    )
}

fn determinism() -> Outcome {
    let run = |jobs: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_dephasim"))
            .args(["sweep", "--axis", "s", "--from", "0.5", "--to", "5", "--step", "0.25", "--N", "2", "--jobs", jobs])
            .env_remove("DEPHASIM_LOG")
            .output()
            .expect("binary runs");
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        o.stdout
    };
    let (one, eight) = (run("1"), run("8"));
    let rows = one.iter().filter(|&&b| b == b'\n').count() - 1;
    check(one == eight, format!("{rows} sweep rows, {} bytes, --jobs 1 vs --jobs 8 byte-identical: {}", one.len(), one == eight))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("kernel closed forms vs quadrature", kernels_vs_quadrature),
        ("exact zeros for N=1, s <= 2", exact_zeros),
        ("single-qubit super-Ohmic values", single_qubit_super_ohmic),
        ("enhancement by a second qubit", enhancement),
        ("growth with the horizon", unbounded_growth),
        ("N-scaling, paper variant", qubit_scaling),
        ("non-monotonicity in G", coupling_maximum),
        ("oracle equivalence", oracle_equivalence),
        ("measure-condition identity", measure_condition_identity),
        ("sweep determinism across job counts", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
