// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Settings resolve in three layers: built-in defaults, then a flat TOML file
//! (`--config`), then flags. Floats are written with 17 significant digits so
//! identical settings give byte-identical files.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bath::{self, InverseTemperature, SpectralParams};
use crate::dynamics::{self, ModelConfig, Variant};
use crate::error::Error;
use crate::measures::{self, SweepAxis, SweepSpec, DEFAULT_GRID_POINTS};
use crate::oracle::{self, ExactOptions, FockTruncation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

pub const TRAJECTORY_COLUMNS: &str = "t,f,g,chi,D,S,dDdt,dSdt";
pub const KERNEL_COLUMNS: &str = "t,gamma,delta,gamma_rate,delta_rate";
pub const SWEEP_COLUMNS: &str = "axis,value,blp,entropy,intervals";
pub const INTERVAL_COLUMNS: &str = "t_start,t_end,d_start,d_end,s_start,s_end,kink_start";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

/// Fully resolved settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub bath: SpectralParams,
    pub grid_points: usize,
    pub tol: f64,
    pub output: Option<PathBuf>,
    /// `None` lets each subcommand pick its own default.
    pub format: Option<Format>,
}

/// A failure mapped to an exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(m) => write!(f, "{m}"),
        }
    }
}

/// Config key a library parameter name belongs to.
fn key_for(name: &str) -> &str {
    match name {
        "G" => "bath.G",
        "s" => "bath.s",
        "omega_c" => "bath.omega_c",
        "beta" => "bath.beta",
        "N" => "model.N",
        "omega0" => "model.omega0",
        "T" => "model.T",
        other => other,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { name, reason } => CliError::Config(format!("`{}`: {reason}", key_for(name))),
            Error::ContractViolation(m) => CliError::Config(m),
            e @ Error::NumericalFailure { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "dephasim", version, about = "Pure-dephasing qubits in a common bosonic bath")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Default, Args)]
struct CommonArgs {
    /// Flat TOML file with dotted keys (model.N, bath.s, ...)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Ohmicity
    #[arg(long = "s", global = true, allow_negative_numbers = true)]
    s: Option<f64>,
    /// Coupling strength
    #[arg(long = "G", global = true, allow_negative_numbers = true)]
    g: Option<f64>,
    /// Cutoff frequency
    #[arg(long = "omega-c", global = true, allow_negative_numbers = true)]
    omega_c: Option<f64>,
    /// Inverse temperature, a number or `inf`
    #[arg(long, global = true, allow_negative_numbers = true)]
    beta: Option<String>,
    /// Number of qubits
    #[arg(long = "N", global = true)]
    n: Option<usize>,
    /// Qubit splitting
    #[arg(long, global = true, allow_negative_numbers = true)]
    omega0: Option<f64>,
    /// Time horizon
    #[arg(long = "T", global = true, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Partner-factor formula: paper or pairwise
    #[arg(long, global = true)]
    variant: Option<String>,
    /// Uniform grid size for interval search (default 20001)
    #[arg(long, global = true)]
    grid_points: Option<usize>,
    /// Extremum refinement tolerance (default 1e-9 T)
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol: Option<f64>,
    /// Write here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// csv or json
    #[arg(long, global = true)]
    format: Option<String>,
    /// Worker threads for sweeps
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gamma, Delta and their rates on [0, T]
    Kernels {
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Coherence factors, trace distance and relative entropy on (0, T]
    Trajectory {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// BLP and relative-entropy measures with their backflow intervals
    Measure,
    /// Both measures along one parameter axis
    Sweep {
        /// s, G, omega_c, T or N
        #[arg(long)]
        axis: String,
        /// Comma-separated axis values
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["from", "to", "step"])]
        values: Option<Vec<f64>>,
        /// First grid value, used with --to and --step
        #[arg(long, allow_negative_numbers = true, requires_all = ["to", "step"])]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        step: Option<f64>,
    },
    /// Compare the closed forms with exact evolution of a discretized bath
    OracleCheck {
        /// Bath modes in the discretization
        #[arg(long, default_value_t = 2)]
        modes: usize,
        #[arg(long, default_value_t = 4.0)]
        omega_max: f64,
        /// Fock levels per mode (default: chosen from the tail bound)
        #[arg(long)]
        fock_dim: Option<usize>,
        /// Comma-separated comparison times
        #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
        times: Vec<f64>,
    },
}

const ALLOWED_KEYS: [&str; 12] = [
    "model.N",
    "model.omega0",
    "model.variant",
    "model.T",
    "bath.G",
    "bath.s",
    "bath.omega_c",
    "bath.beta",
    "grid_points",
    "tol",
    "output",
    "format",
];

/// Unresolved settings; `None` means "not given at this layer".
#[derive(Debug, Default, Clone)]
struct Layer {
    n: Option<usize>,
    omega0: Option<f64>,
    variant: Option<Variant>,
    t: Option<f64>,
    g: Option<f64>,
    s: Option<f64>,
    omega_c: Option<f64>,
    beta: Option<InverseTemperature>,
    grid_points: Option<usize>,
    tol: Option<f64>,
    output: Option<PathBuf>,
    format: Option<Format>,
}

impl Layer {
    fn over(self, base: Layer) -> Layer {
        Layer {
            n: self.n.or(base.n),
            omega0: self.omega0.or(base.omega0),
            variant: self.variant.or(base.variant),
            t: self.t.or(base.t),
            g: self.g.or(base.g),
            s: self.s.or(base.s),
            omega_c: self.omega_c.or(base.omega_c),
            beta: self.beta.or(base.beta),
            grid_points: self.grid_points.or(base.grid_points),
            tol: self.tol.or(base.tol),
            output: self.output.or(base.output),
            format: self.format.or(base.format),
        }
    }

    fn resolve(self) -> CliResult<RunConfig> {
        let horizon = self.t.unwrap_or(20.0);
        let model = ModelConfig::new(
            self.n.unwrap_or(2),
            self.omega0.unwrap_or(0.0),
            self.variant.unwrap_or(Variant::Paper),
            horizon,
        )?;
        let bath = SpectralParams::new(
            self.g.unwrap_or(1.0),
            self.s.unwrap_or(1.0),
            self.omega_c.unwrap_or(3.0),
            self.beta.unwrap_or(InverseTemperature::Infinite),
        )?;
        let grid_points = self.grid_points.unwrap_or(DEFAULT_GRID_POINTS);
        if grid_points < measures::MIN_GRID_POINTS {
            return Err(CliError::Config(format!(
                "`grid_points` must be >= {}, got {grid_points}",
                measures::MIN_GRID_POINTS
            )));
        }
        let tol = self.tol.unwrap_or_else(|| measures::default_tolerance(horizon));
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Config(format!("`tol` must be positive, got {tol}")));
        }
        Ok(RunConfig {
            model,
            bath,
            grid_points,
            tol,
            output: self.output,
            format: self.format,
        })
    }
}

fn parse_beta(text: &str, key: &str) -> CliResult<InverseTemperature> {
    if text.eq_ignore_ascii_case("inf") || text.eq_ignore_ascii_case("infinite") {
        return Ok(InverseTemperature::Infinite);
    }
    text.parse::<f64>()
        .map(InverseTemperature::Finite)
        .map_err(|_| CliError::Config(format!("`{key}` must be a number or \"inf\", got {text:?}")))
}

fn flatten(prefix: &str, table: &toml::Table, out: &mut BTreeMap<String, toml::Value>) {
    for (k, v) in table {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            toml::Value::Table(inner) => flatten(&key, inner, out),
            other => {
                out.insert(key, other.clone());
            }
        }
    }
}

fn type_error(key: &str, expected: &str, v: &toml::Value) -> CliError {
    CliError::Config(format!("`{key}` must be {expected}, got {} `{v}`", v.type_str()))
}

fn as_float(key: &str, v: &toml::Value) -> CliResult<f64> {
    match v {
        toml::Value::Float(x) => Ok(*x),
        toml::Value::Integer(i) => Ok(*i as f64),
        _ => Err(type_error(key, "a number", v)),
    }
}

fn as_count(key: &str, v: &toml::Value) -> CliResult<usize> {
    match v {
        toml::Value::Integer(i) if *i >= 0 => Ok(*i as usize),
        _ => Err(type_error(key, "a nonnegative integer", v)),
    }
}

fn as_str<'a>(key: &str, v: &'a toml::Value) -> CliResult<&'a str> {
    v.as_str().ok_or_else(|| type_error(key, "a string", v))
}

/// Parse a settings file; everything not mentioned stays unset.
fn parse_file(text: &str) -> CliResult<Layer> {
    let table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::Config(format!("cannot parse config file: {}", e.message())))?;
    let mut flat = BTreeMap::new();
    flatten("", &table, &mut flat);
    let mut layer = Layer::default();
    for (key, v) in &flat {
        let key = key.as_str();
        match key {
            "model.N" => layer.n = Some(as_count(key, v)?),
            "model.omega0" => layer.omega0 = Some(as_float(key, v)?),
            "model.variant" => {
                layer.variant = Some(as_str(key, v)?.parse().map_err(|e| CliError::Config(format!("`{key}`: {e}")))?)
            }
            "model.T" => layer.t = Some(as_float(key, v)?),
            "bath.G" => layer.g = Some(as_float(key, v)?),
            "bath.s" => layer.s = Some(as_float(key, v)?),
            "bath.omega_c" => layer.omega_c = Some(as_float(key, v)?),
            "bath.beta" => {
                layer.beta = Some(match v {
                    toml::Value::String(s) => parse_beta(s, key)?,
                    _ => InverseTemperature::Finite(as_float(key, v)?),
                })
            }
            "grid_points" => layer.grid_points = Some(as_count(key, v)?),
            "tol" => layer.tol = Some(as_float(key, v)?),
            "output" => layer.output = Some(PathBuf::from(as_str(key, v)?)),
            "format" => {
                layer.format = Some(as_str(key, v)?.parse().map_err(|e| CliError::Config(format!("`{key}`: {e}")))?)
            }
            _ => {
                return Err(CliError::Config(format!(
                    "unknown key `{key}` (allowed: {})",
                    ALLOWED_KEYS.join(", ")
                )))
            }
        }
    }
    Ok(layer)
}

fn flag_layer(args: &CommonArgs) -> CliResult<Layer> {
    Ok(Layer {
        n: args.n,
        omega0: args.omega0,
        variant: args
            .variant
            .as_deref()
            .map(|v| v.parse().map_err(|e| CliError::Config(format!("`--variant`: {e}"))))
            .transpose()?,
        t: args.t,
        g: args.g,
        s: args.s,
        omega_c: args.omega_c,
        beta: args.beta.as_deref().map(|b| parse_beta(b, "--beta")).transpose()?,
        grid_points: args.grid_points,
        tol: args.tol,
        output: args.output.clone(),
        format: args
            .format
            .as_deref()
            .map(|f| f.parse().map_err(|e| CliError::Config(format!("`--format`: {e}"))))
            .transpose()?,
    })
}

/// Resolve settings from an optional file and flag overrides given as `argv`-style strings.
pub fn load_config(path: Option<&Path>, flags: &[&str]) -> CliResult<RunConfig> {
    let argv = std::iter::once("dephasim").chain(flags.iter().copied()).chain(["measure"]);
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Config(e.to_string()))?;
    let file = match path.or(cli.common.config.as_deref()) {
        Some(p) => read_config_file(p)?,
        None => Layer::default(),
    };
    flag_layer(&cli.common)?.over(file).resolve()
}

fn read_config_file(path: &Path) -> CliResult<Layer> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_file(&text)
}

/// `{:.16e}`: 17 significant digits, independent of platform and locale.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// JSON formatter that writes every float with 17 significant digits.
struct FixedFloats;

impl serde_json::ser::Formatter for FixedFloats {
    fn write_f64<W: ?Sized + std::io::Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        writer.write_all(fmt_float(value).as_bytes())
    }

    fn write_f32<W: ?Sized + std::io::Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Compact JSON with fixed float formatting and a trailing newline; non-finite floats become `null`.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats);
    value.serialize(&mut ser).expect("in-memory serialization");
    let mut s = String::from_utf8(buf).expect("JSON is UTF-8");
    s.push('\n');
    s
}

fn csv_row(out: &mut String, cells: &[String]) {
    out.push_str(&cells.join(","));
    out.push('\n');
}

#[derive(Serialize)]
struct JsonTable<'a> {
    columns: Vec<&'a str>,
    rows: Vec<Vec<f64>>,
}

fn table(columns: &str, rows: Vec<Vec<f64>>, format: Format) -> String {
    match format {
        Format::Json => to_json(&JsonTable {
            columns: columns.split(',').collect(),
            rows,
        }),
        Format::Csv => {
            let mut out = String::new();
            out.push_str(columns);
            out.push('\n');
            for r in rows {
                csv_row(&mut out, &r.iter().map(|x| fmt_float(*x)).collect::<Vec<_>>());
            }
            out
        }
    }
}

fn check_samples(samples: usize) -> CliResult<()> {
    if samples < 2 {
        return Err(CliError::Config(format!("`--samples` must be >= 2, got {samples}")));
    }
    Ok(())
}

fn kernels(cfg: &RunConfig, samples: usize) -> CliResult<String> {
    check_samples(samples)?;
    let horizon = cfg.model.horizon();
    let mut rows = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = horizon * i as f64 / (samples - 1) as f64;
        let k = bath::kernel_values(&cfg.bath, t)?;
        rows.push(vec![t, k.gamma, k.delta, k.gamma_rate, k.delta_rate]);
    }
    Ok(table(KERNEL_COLUMNS, rows, cfg.format.unwrap_or(Format::Csv)))
}

fn trajectory(cfg: &RunConfig, samples: usize) -> CliResult<String> {
    check_samples(samples)?;
    let horizon = cfg.model.horizon();
    let mut rows = Vec::with_capacity(samples);
    for i in 1..=samples {
        let t = horizon * i as f64 / samples as f64;
        let cf = dynamics::coherence_factors(&cfg.model, &cfg.bath, t)?;
        let d = cf.f * cf.g;
        let r = dynamics::rates(&cfg.model, &cfg.bath, t)?.forward();
        rows.push(vec![
            t,
            cf.f,
            cf.g,
            cf.chi,
            d,
            dynamics::relative_entropy(d)?,
            r.trace_distance,
            r.entropy,
        ]);
    }
    Ok(table(TRAJECTORY_COLUMNS, rows, cfg.format.unwrap_or(Format::Csv)))
}

fn measure(cfg: &RunConfig) -> CliResult<String> {
    let r = measures::measure(&cfg.model, &cfg.bath, cfg.grid_points, cfg.tol)?;
    log::info!("{} backflow intervals, blp = {}, entropy = {}", r.intervals.len(), r.blp, r.entropy);
    Ok(match cfg.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&r),
        Format::Csv => {
            let mut out = String::from(INTERVAL_COLUMNS);
            out.push('\n');
            for iv in &r.intervals {
                let mut cells: Vec<String> = [iv.t_start, iv.t_end, iv.d_start, iv.d_end, iv.s_start, iv.s_end]
                    .iter()
                    .map(|x| fmt_float(*x))
                    .collect();
                cells.push(iv.kink_start.to_string());
                csv_row(&mut out, &cells);
            }
            out
        }
    })
}

/// `from, from + step, ...` up to `to`, each rounded to 12 significant digits.
fn axis_values(from: f64, to: f64, step: f64) -> CliResult<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && step.is_finite() && step > 0.0 && to >= from) {
        return Err(CliError::Config(format!(
            "`--from {from} --to {to} --step {step}` is not an increasing range"
        )));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(CliError::Config(format!("range has {count} values; at most 1000000 allowed")));
    }
    Ok((0..count)
        .map(|i| {
            let v = from + i as f64 * step;
            format!("{v:.11e}").parse().expect("formatted float")
        })
        .collect())
}

#[derive(Serialize)]
struct JsonSweepRow<'a> {
    axis: &'a str,
    value: f64,
    blp: Option<f64>,
    entropy: Option<f64>,
    intervals: Option<usize>,
    error: Option<String>,
}

fn sweep(cfg: &RunConfig, axis: SweepAxis, values: Vec<f64>, jobs: usize) -> CliResult<(String, Option<CliError>)> {
    let spec = SweepSpec::new(axis, values, cfg.model, cfg.bath)?;
    let rows = measures::sweep(&spec, cfg.grid_points, cfg.tol, jobs.max(1))?;
    let label = axis.label();
    let first_error = rows
        .iter()
        .find_map(|r| r.outcome.as_ref().err())
        .map(|e| CliError::from(e.clone()));
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = String::from(SWEEP_COLUMNS);
            out.push('\n');
            for r in &rows {
                let cells = match &r.outcome {
                    Ok(s) => vec![
                        label.to_string(),
                        fmt_float(r.value),
                        fmt_float(s.blp),
                        fmt_float(s.entropy),
                        s.intervals.to_string(),
                    ],
                    Err(_) => vec![label.to_string(), fmt_float(r.value), "NaN".into(), "NaN".into(), String::new()],
                };
                csv_row(&mut out, &cells);
            }
            out
        }
        Format::Json => to_json(
            &rows
                .iter()
                .map(|r| JsonSweepRow {
                    axis: label,
                    value: r.value,
                    blp: r.outcome.as_ref().ok().map(|s| s.blp),
                    entropy: r.outcome.as_ref().ok().map(|s| s.entropy),
                    intervals: r.outcome.as_ref().ok().map(|s| s.intervals),
                    error: r.outcome.as_ref().err().map(|e| e.to_string()),
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok((text, first_error))
}

fn oracle_check(cfg: &RunConfig, modes: usize, omega_max: f64, fock_dim: Option<usize>, times: &[f64]) -> CliResult<String> {
    if cfg.format == Some(Format::Csv) {
        return Err(CliError::Config("oracle-check writes JSON only".into()));
    }
    let mut b = oracle::discretize(&cfg.bath, modes, omega_max)?;
    if let Some(d) = fock_dim {
        b = b.with_truncation(FockTruncation::Uniform(d))?;
    }
    let opts = ExactOptions {
        omega0: cfg.model.omega0(),
        ..ExactOptions::default()
    };
    let report = oracle::arbitrate_variants(cfg.model.qubits(), &b, times, &opts)?;
    if let Some(v) = report.closest {
        log::info!("{v} formula is closest to exact evolution");
    }
    Ok(to_json(&report))
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Config(format!("cannot write to stdout: {e}")))
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<()> {
    let file = match &cli.common.config {
        Some(p) => read_config_file(p)?,
        None => Layer::default(),
    };
    let cfg = flag_layer(&cli.common)?.over(file).resolve()?;
    log::debug!("resolved configuration: {cfg:?}");
    let (text, deferred) = match cli.command {
        Command::Kernels { samples } => (kernels(&cfg, samples)?, None),
        Command::Trajectory { samples } => (trajectory(&cfg, samples)?, None),
        Command::Measure => (measure(&cfg)?, None),
        Command::Sweep {
            axis,
            values,
            from,
            to,
            step,
        } => {
            let axis: SweepAxis = axis.parse().map_err(|e| CliError::Config(format!("`--axis`: {e}")))?;
            let values = match (values, from, to, step) {
                (Some(v), ..) => v,
                (None, Some(f), Some(t), Some(s)) => axis_values(f, t, s)?,
                _ => return Err(CliError::Config("sweep needs --values or --from/--to/--step".into())),
            };
            sweep(&cfg, axis, values, cli.common.jobs)?
        }
        Command::OracleCheck {
            modes,
            omega_max,
            fock_dim,
            times,
        } => (oracle_check(&cfg, modes, omega_max, fock_dim, &times)?, None),
    };
    emit(&text, cfg.output.as_deref())?;
    deferred.map_or(Ok(()), Err)
}

/// Run the command line and return the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Install the logger, reading the level from `DEPHASIM_LOG`.
pub fn init_logging() {
    let env = env_logger::Env::new().filter_or("DEPHASIM_LOG", "warn");
    let _ = env_logger::Builder::from_env(env).format_timestamp(None).try_init();
}
