//! Command-line front end. The binary is a thin wrapper around [`run_cli`];
//! everything here is also callable in-process.
//!
//! Exit codes: 0 success, 1 a verification or check failed, 2 usage or
//! domain error.

use crate::classical::ClassicalFamily;
use crate::electrostatics::{
    equilibrium_residual, ode_residual, sample_points, structure_relation, QZeros, StructureCase,
};
use crate::error::OpolyError;
use crate::transforms::{MeasureSpec, PerturbedFamily};
use crate::verify::{run_verify, VerifyOptions, VerifyReport};
use crate::zeros::{
    facing_endpoint, hermite_type_jet, hermite_type_zeros, mass_scan, min_mass, uvarov_zeros,
    Endpoint, MassScanResult, Verdict, ZeroSet,
};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::path::PathBuf;

/// Version of the JSON envelope written by every command.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Jacobi,
    Laguerre,
    Hermite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Precision {
    /// Six significant figures.
    #[value(name = "6")]
    Six,
    /// Shortest representation that round-trips.
    Full,
}

#[derive(Debug, Parser)]
#[command(
    name = "opoly",
    version,
    about = "Zeros of orthogonal polynomials under Christoffel and Uvarov perturbations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value = "jacobi", global = true)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 0.0, global = true, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, global = true, allow_hyphen_values = true)]
    pub beta: f64,
    /// Degree.
    #[arg(long, default_value_t = 3, global = true)]
    pub n: usize,
    /// Perturbation point (default: the right Jacobi endpoint, or 0).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Christoffel level (0, 1 or 2) applied before the mass.
    #[arg(long, default_value_t = 0, global = true)]
    pub level: u8,
    /// Single mass N.
    #[arg(long, global = true)]
    pub mass: Option<f64>,
    /// Comma-separated list of masses.
    #[arg(long, value_delimiter = ',', global = true)]
    pub masses: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Digits in CSV output; JSON always carries full precision.
    #[arg(long, value_enum, default_value = "6", global = true)]
    pub precision: Precision,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Zeros for a list of masses, one row per mass.
    Table,
    /// Zeros of one polynomial.
    Zeros,
    /// Zeros over a mass grid with monotonicity verdicts and rates.
    Scan,
    /// Mass at which the extreme zero reaches the support endpoint.
    MinMass,
    /// Structure-relation, ODE and equilibrium residuals.
    Residual,
    /// Run the verification suites.
    Verify {
        /// Restrict to these suites (repeatable).
        #[arg(long)]
        suite: Vec<String>,
        /// Add this constant to every structure coefficient B(x,n).
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        inject_b_perturbation: f64,
    },
    /// Samples of p_n for masses N + eps, for external plotting.
    PlotData {
        #[arg(long, allow_hyphen_values = true)]
        x_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x_max: Option<f64>,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        /// Comma-separated mass increments.
        #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
        eps: Vec<f64>,
    },
}

/// Subcommand-specific settings after validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Task {
    Table { masses: Vec<f64> },
    Zeros { mass: f64 },
    Scan { grid: Vec<f64> },
    MinMass,
    Residual { mass: f64 },
    Verify { suites: Vec<String>, b_perturbation: f64 },
    PlotData { masses: Vec<f64>, eps: Vec<f64>, x_min: f64, x_max: f64, samples: usize },
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub family: ClassicalFamily,
    pub a: f64,
    pub level: u8,
    pub n: usize,
    pub task: Task,
    pub format: Format,
    pub precision: Precision,
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(OpolyError),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<OpolyError> for CliError {
    fn from(e: OpolyError) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(
                OpolyError::InvalidMeasure(_) | OpolyError::Domain(_) | OpolyError::Length { .. },
            ) => 2,
            CliError::Lib(_) | CliError::Io(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> CliResult<Self> {
        let family = match cli.family {
            FamilyArg::Jacobi => ClassicalFamily::jacobi(cli.alpha, cli.beta)?,
            FamilyArg::Laguerre => ClassicalFamily::laguerre(cli.alpha)?,
            FamilyArg::Hermite => ClassicalFamily::hermite(),
        };
        let a = cli.a.unwrap_or(match family {
            ClassicalFamily::Jacobi { .. } => 1.0,
            _ => 0.0,
        });
        if cli.n == 0 {
            return usage("--n must be at least 1");
        }
        if cli.mass.is_some() && cli.masses.is_some() {
            return usage("give either --mass or --masses, not both");
        }
        let masses = cli.masses.clone().unwrap_or_else(|| vec![cli.mass.unwrap_or(0.0)]);
        if masses.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
            return usage("masses must be finite and >= 0");
        }
        let single = || -> CliResult<f64> {
            match (cli.mass, &cli.masses) {
                (_, Some(v)) if v.len() != 1 => usage("this command takes a single --mass"),
                (_, Some(v)) => Ok(v[0]),
                (Some(m), None) => Ok(m),
                (None, None) => Ok(0.0),
            }
        };
        let hermite = matches!(family, ClassicalFamily::Hermite);
        if hermite && a != 0.0 {
            return usage("the Hermite-type family carries its mass at a = 0");
        }
        if hermite && cli.level > 0 {
            return usage("Christoffel levels need a finite support endpoint or exterior point");
        }
        let task = match &cli.command {
            Command::Table => {
                let mut masses = cli
                    .masses
                    .clone()
                    .ok_or_else(|| CliError::Usage("table needs --masses".into()))?;
                if masses.is_empty() {
                    return usage("--masses is empty");
                }
                masses.sort_by(|x, y| x.total_cmp(y));
                masses.dedup();
                Task::Table { masses }
            }
            Command::Zeros => Task::Zeros { mass: single()? },
            Command::Scan => {
                let grid = cli.masses.clone().unwrap_or_default();
                if grid.is_empty() {
                    return usage("scan needs a non-empty --masses grid");
                }
                if grid.windows(2).any(|w| w[0] >= w[1]) {
                    return usage("the --masses grid must be strictly increasing");
                }
                if hermite {
                    return usage("scan supports the jacobi and laguerre families");
                }
                Task::Scan { grid }
            }
            Command::MinMass => {
                if hermite {
                    return usage("min-mass supports the jacobi and laguerre families");
                }
                Task::MinMass
            }
            Command::Residual => {
                if hermite {
                    return usage("residual supports the jacobi and laguerre families");
                }
                if cli.n < 2 {
                    return usage("residual needs --n >= 2");
                }
                Task::Residual { mass: single()? }
            }
            Command::Verify {
                suite,
                inject_b_perturbation,
            } => Task::Verify {
                suites: suite.clone(),
                b_perturbation: *inject_b_perturbation,
            },
            Command::PlotData {
                x_min,
                x_max,
                samples,
                eps,
            } => {
                let hull = family.support();
                let default_hi = match family {
                    ClassicalFamily::Laguerre { .. } => 12.0,
                    ClassicalFamily::Hermite => 4.0,
                    _ => hull.eta,
                };
                let default_lo = match family {
                    ClassicalFamily::Hermite => -4.0,
                    _ => hull.xi,
                };
                let (lo, hi) = (x_min.unwrap_or(default_lo), x_max.unwrap_or(default_hi));
                if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
                    return usage(format!("empty x-range [{lo}, {hi}]"));
                }
                if *samples < 2 {
                    return usage("--samples must be at least 2");
                }
                if eps.is_empty() {
                    return usage("--eps is empty");
                }
                let base = single()?;
                if eps.iter().any(|e| !(base + e).is_finite() || base + e < 0.0) {
                    return usage("N + eps must be finite and >= 0");
                }
                Task::PlotData {
                    masses: vec![base],
                    eps: eps.clone(),
                    x_min: lo,
                    x_max: hi,
                    samples: *samples,
                }
            }
        };
        let cfg = RunConfig {
            family,
            a,
            level: cli.level,
            n: cli.n,
            task,
            format: cli.format,
            precision: cli.precision,
            out: cli.out.clone(),
        };
        if !hermite && !matches!(cfg.task, Task::Verify { .. }) {
            cfg.spec(0.0)?;
        }
        Ok(cfg)
    }

    pub fn spec(&self, mass: f64) -> CliResult<MeasureSpec> {
        Ok(MeasureSpec::new(self.family, self.level, self.a, mass)?)
    }

    fn is_hermite(&self) -> bool {
        matches!(self.family, ClassicalFamily::Hermite)
    }
}

/// JSON wrapper shared by every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub command: String,
    pub result: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub mass: f64,
    pub zeros: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableResult {
    pub family: ClassicalFamily,
    pub a: f64,
    pub level: u8,
    pub n: usize,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZerosResult {
    pub family: ClassicalFamily,
    pub a: f64,
    pub level: u8,
    pub mass: f64,
    pub zero_set: ZeroSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinMassResult {
    pub spec: MeasureSpec,
    pub n: usize,
    pub endpoint: f64,
    pub n0: f64,
    pub below: TableRow,
    pub above: TableRow,
    /// The extreme zero is inside the hull just below `N_0` and outside
    /// just above it.
    pub straddle: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualResult {
    pub spec: MeasureSpec,
    pub case: StructureCase,
    pub n: usize,
    pub c_n: f64,
    pub lemma: f64,
    pub structure: f64,
    pub lifted: f64,
    pub ode: f64,
    pub q: Vec<f64>,
    pub q_zeros: QZeros,
    /// Stationarity residuals at the zeros (empty when `N = 0`).
    pub stationarity: Vec<f64>,
    pub zeros: Vec<f64>,
    pub energy: Option<f64>,
    pub lower_neighbors: Option<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub eps: f64,
    pub mass: f64,
    pub x: Vec<f64>,
    pub value: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotDataResult {
    pub family: ClassicalFamily,
    pub a: f64,
    pub n: usize,
    pub series: Vec<Series>,
}

/// Rendered output of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub exit_code: i32,
}

/// Formats `x` with six significant figures, or the shortest round-trip
/// representation.
pub fn format_number(x: f64, precision: Precision) -> String {
    // print -0 as 0
    let x = if x == 0.0 { 0.0 } else { x };
    match precision {
        Precision::Full => format!("{x}"),
        Precision::Six => {
            if x == 0.0 || !x.is_finite() {
                return format!("{x}");
            }
            let e = x.abs().log10().floor() as i32;
            if (-5..6).contains(&e) {
                let decimals = (5 - e).max(0) as usize;
                let s = format!("{x:.decimals$}");
                // rounding may have pushed a digit to the left of the point
                let digits = s.chars().filter(|c| c.is_ascii_digit()).collect::<String>();
                if digits.trim_start_matches('0').len() > 6 && decimals > 0 {
                    let d = decimals - 1;
                    format!("{x:.d$}")
                } else {
                    s
                }
            } else {
                format!("{x:.5e}")
            }
        }
    }
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_text<T: Serialize>(command: &str, result: &T) -> CliResult<String> {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        result,
    };
    let mut s = serde_json::to_string_pretty(&env)
        .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
    s.push('\n');
    Ok(s)
}

fn zeros_for(cfg: &RunConfig, mass: f64) -> CliResult<ZeroSet> {
    if cfg.is_hermite() {
        Ok(hermite_type_zeros(mass, cfg.n)?)
    } else {
        Ok(uvarov_zeros(&cfg.spec(mass)?, cfg.n)?)
    }
}

/// Runs a validated configuration and renders its output.
pub fn execute(cfg: &RunConfig) -> CliResult<Rendered> {
    let f = |x: f64| format_number(x, cfg.precision);
    // inputs are echoed as given
    let g = |x: f64| format_number(x, Precision::Full);
    let json = cfg.format == Format::Json;
    let ok = |text: String| Rendered { text, exit_code: 0 };
    match &cfg.task {
        Task::Table { masses } => {
            let rows = masses
                .par_iter()
                .map(|&m| Ok(TableRow { mass: m, zeros: zeros_for(cfg, m)?.zeros }))
                .collect::<CliResult<Vec<_>>>()?;
            let res = TableResult { family: cfg.family, a: cfg.a, level: cfg.level, n: cfg.n, rows };
            if json {
                return Ok(ok(json_text("table", &res)?));
            }
            let mut header = vec!["N".to_string()];
            header.extend((1..=cfg.n).map(|k| format!("x{k}")));
            let body: Vec<Vec<String>> = res
                .rows
                .iter()
                .map(|r| std::iter::once(g(r.mass)).chain(r.zeros.iter().map(|&z| f(z))).collect())
                .collect();
            Ok(ok(csv_text(&header, &body)?))
        }
        Task::Zeros { mass } => {
            let zs = zeros_for(cfg, *mass)?;
            let res = ZerosResult { family: cfg.family, a: cfg.a, level: cfg.level, mass: *mass, zero_set: zs };
            if json {
                return Ok(ok(json_text("zeros", &res)?));
            }
            let header: Vec<String> = ["k", "zero", "bracket_lo", "bracket_hi"].map(String::from).to_vec();
            let body: Vec<Vec<String>> = res
                .zero_set
                .zeros
                .iter()
                .zip(&res.zero_set.brackets)
                .enumerate()
                .map(|(k, (&z, &(lo, hi)))| vec![(k + 1).to_string(), f(z), f(lo), f(hi)])
                .collect();
            Ok(ok(csv_text(&header, &body)?))
        }
        Task::Scan { grid } => {
            let res: MassScanResult = mass_scan(&cfg.spec(0.0)?, cfg.n, grid)?;
            let code = if res.verdicts.iter().any(|v| *v == Verdict::Fail) { 1 } else { 0 };
            let text = if json {
                json_text("scan", &res)?
            } else {
                let header: Vec<String> = ["N", "k", "zero", "rate_estimate", "limit", "rate_limit", "verdict"]
                    .map(String::from)
                    .to_vec();
                let mut body = Vec::new();
                for (i, (&m, zs)) in res.grid.iter().zip(&res.zero_sets).enumerate() {
                    for k in 0..res.n {
                        body.push(vec![
                            g(m),
                            (k + 1).to_string(),
                            f(zs.zeros[k]),
                            f(res.rate_estimates[i][k]),
                            f(res.limits[k]),
                            f(res.rate_limits[k]),
                            format!("{:?}", res.verdicts[k]).to_lowercase(),
                        ]);
                    }
                }
                csv_text(&header, &body)?
            };
            Ok(Rendered { text, exit_code: code })
        }
        Task::MinMass => {
            let spec = cfg.spec(0.0)?;
            let ep = facing_endpoint(&spec)?;
            let mm = min_mass(&spec, cfg.n, ep)?;
            let row = |m: f64| -> CliResult<TableRow> {
                Ok(TableRow { mass: m, zeros: uvarov_zeros(&spec.with_mass(m)?, cfg.n)?.zeros })
            };
            let below = row(mm.n0 * (1.0 - 1e-3))?;
            let above = row(mm.n0 * (1.0 + 1e-3))?;
            let idx = if ep == Endpoint::Xi { 0 } else { cfg.n - 1 };
            let e = mm.endpoint;
            let straddle = match ep {
                Endpoint::Xi => below.zeros[idx] > e && above.zeros[idx] < e,
                Endpoint::Eta => below.zeros[idx] < e && above.zeros[idx] > e,
            };
            let res = MinMassResult { spec, n: cfg.n, endpoint: e, n0: mm.n0, below, above, straddle };
            let text = if json {
                json_text("min-mass", &res)?
            } else {
                let mut header = vec!["row".to_string(), "N".to_string()];
                header.extend((1..=cfg.n).map(|k| format!("x{k}")));
                let line = |label: &str, r: &TableRow| -> Vec<String> {
                    [label.to_string(), f(r.mass)].into_iter().chain(r.zeros.iter().map(|&z| f(z))).collect()
                };
                let mut n0_line = vec!["N0".to_string(), f(res.n0)];
                n0_line.extend(std::iter::repeat_n(String::new(), cfg.n));
                let body = vec![n0_line, line("below", &res.below), line("above", &res.above)];
                csv_text(&header, &body)?
            };
            Ok(Rendered { text, exit_code: if straddle { 0 } else { 1 } })
        }
        Task::Residual { mass } => {
            let spec = cfg.spec(*mass)?;
            let n = cfg.n;
            let sr = structure_relation(&spec, n)?;
            let xs = sample_points(&spec, n, 20);
            let lemma = sr.lemma_residual(n, &xs)?;
            let structure = sr.structure_residual(n, &xs)?;
            let lifted = sr.lifted_residual(n, &xs)?;
            let ode = ode_residual(&sr, n, &xs)?;
            let q = sr.q_polynomial(n)?;
            let eq = if *mass > 0.0 { Some(equilibrium_residual(&spec, n)?) } else { None };
            let stat_max = eq.as_ref().map_or(0.0, |r| r.max_residual);
            let passed = lemma < 1e-9 && lifted < 1e-8 && ode < 1e-7 && stat_max < 1e-6;
            let res = ResidualResult {
                spec,
                case: sr.case(),
                n,
                c_n: sr.c_n(n)?,
                lemma,
                structure,
                lifted,
                ode,
                q_zeros: crate::electrostatics::q_zeros(&q),
                q: q.coeffs,
                stationarity: eq.as_ref().map(|r| r.residuals.clone()).unwrap_or_default(),
                zeros: match &eq {
                    Some(r) => r.zeros.clone(),
                    None => uvarov_zeros(&spec, n)?.zeros,
                },
                energy: eq.as_ref().map(|r| r.energy),
                lower_neighbors: eq.as_ref().map(|r| r.lower_neighbors),
                passed,
            };
            let text = if json {
                json_text("residual", &res)?
            } else {
                let header = vec!["quantity".to_string(), "value".to_string()];
                let mut body = vec![
                    vec!["case".into(), res.case.tag().into()],
                    vec!["c_n".into(), f(res.c_n)],
                    vec!["lemma".into(), f(res.lemma)],
                    vec!["structure".into(), f(res.structure)],
                    vec!["lifted".into(), f(res.lifted)],
                    vec!["ode".into(), f(res.ode)],
                    vec!["stationarity_max".into(), f(stat_max)],
                ];
                for (k, c) in res.q.iter().enumerate() {
                    body.push(vec![format!("q{k}"), f(*c)]);
                }
                body.push(vec!["passed".into(), res.passed.to_string()]);
                csv_text(&header, &body)?
            };
            Ok(Rendered { text, exit_code: if passed { 0 } else { 1 } })
        }
        Task::Verify { suites, b_perturbation } => {
            let opts = VerifyOptions {
                suites: if suites.is_empty() { None } else { Some(suites.clone()) },
                b_perturbation: *b_perturbation,
            };
            let rep: VerifyReport = run_verify(&opts)?;
            let text = if json {
                json_text("verify", &rep)?
            } else {
                let header: Vec<String> = ["suite", "checks", "failures", "status", "first_failure"]
                    .map(String::from)
                    .to_vec();
                let body: Vec<Vec<String>> = rep
                    .suites
                    .iter()
                    .map(|s| {
                        vec![
                            s.name.clone(),
                            s.checks.to_string(),
                            s.failures.to_string(),
                            if s.passed { "pass" } else { "fail" }.to_string(),
                            s.examples.first().cloned().unwrap_or_default(),
                        ]
                    })
                    .collect();
                csv_text(&header, &body)?
            };
            Ok(Rendered { text, exit_code: if rep.passed { 0 } else { 1 } })
        }
        Task::PlotData { masses, eps, x_min, x_max, samples } => {
            let base = masses[0];
            let xs: Vec<f64> = (0..*samples)
                .map(|i| x_min + (x_max - x_min) * i as f64 / (*samples - 1) as f64)
                .collect();
            let series = eps
                .par_iter()
                .map(|&e| -> CliResult<Series> {
                    let mass = base + e;
                    let value = if cfg.is_hermite() {
                        xs.iter()
                            .map(|&x| hermite_type_jet(mass, cfg.n, x).map(|j| j.v))
                            .collect::<std::result::Result<Vec<_>, _>>()?
                    } else {
                        let fam = PerturbedFamily::new(&cfg.spec(mass)?, cfg.n)?;
                        xs.iter()
                            .map(|&x| fam.jet(cfg.n, x).map(|j| j.v))
                            .collect::<std::result::Result<Vec<_>, _>>()?
                    };
                    Ok(Series { eps: e, mass, x: xs.clone(), value })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let res = PlotDataResult { family: cfg.family, a: cfg.a, n: cfg.n, series };
            if json {
                return Ok(ok(json_text("plot-data", &res)?));
            }
            let header: Vec<String> = ["eps", "N", "x", "value"].map(String::from).to_vec();
            let body: Vec<Vec<String>> = res
                .series
                .iter()
                .flat_map(|s| {
                    s.x.iter()
                        .zip(&s.value)
                        .map(|(&x, &v)| vec![g(s.eps), g(s.mass), f(x), f(v)])
                        .collect::<Vec<_>>()
                })
                .collect();
            Ok(ok(csv_text(&header, &body)?))
        }
    }
}

fn thread_pool() -> CliResult<Option<rayon::ThreadPool>> {
    match std::env::var("OPOLY_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => {
            let k: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&k| k > 0)
                .ok_or_else(|| CliError::Usage(format!("OPOLY_THREADS must be a positive integer, got '{v}'")))?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map(Some)
                .map_err(|e| CliError::Io(std::io::Error::other(e)))
        }
    }
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_parsed(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("opoly: {e}");
            e.exit_code()
        }
    }
}

fn run_parsed(cli: &Cli) -> CliResult<i32> {
    let cfg = RunConfig::from_cli(cli)?;
    let rendered = match thread_pool()? {
        Some(pool) => pool.install(|| execute(&cfg))?,
        None => execute(&cfg)?,
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, &rendered.text).map_err(CliError::Io)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(rendered.text.as_bytes()).map_err(CliError::Io)?;
        }
    }
    Ok(rendered.exit_code)
}

/// Parses and validates without running; used by tests.
pub fn parse_config<I, T>(args: I) -> CliResult<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    RunConfig::from_cli(&cli)
}
