mod format;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spherical_collapse::approx::{approx_error_report, resolve_shape, Shape};
use spherical_collapse::refode::{
    oracle_series, parametric_at, validate_explicit, IntegratorConfig,
};
use spherical_collapse::scenarios::{
    build_scenario, physical_collapse_time, to_physical, transform_k, PhysicalScenario,
    ScenarioKind,
};
use spherical_collapse::{
    collapse_time, make_gamma, rdot_at_collapse, CollapseSolution, Error, Sample, SampleSeries,
    Source, DEFAULT_CRITICAL_BAND,
};

use format::{num, velocity, write_header, write_sample_row};

/// Allowed validation error before `validate` reports failure.
const VALIDATION_LIMIT: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "collapse",
    version,
    about = "Explicit solutions of r'' = -r^gamma"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Collapse time and velocity for one exponent.
    Tau {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// Sample the solution on a uniform grid over [0, tau].
    Solve {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Extra curves on the same grid.
        #[arg(long, value_enum, value_delimiter = ',')]
        include: Vec<Overlay>,
        /// Shape rule for the approx overlay.
        #[arg(long)]
        shape: Option<Shape>,
    },
    /// Time at which the solution reaches radius r.
    Invert {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
    },
    /// Compare the explicit solution with a numerical integration.
    Validate {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
    /// Sample a polynomial approximation, or report its error.
    Approx {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long)]
        shape: Option<Shape>,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Print the error against the exact solution as JSON.
        #[arg(long)]
        report: bool,
    },
    /// Dimensional solution for a physical system.
    Scenario {
        kind: ScenarioKind,
        /// Parameters as key=value in SI units.
        #[arg(value_parser = parse_key_value)]
        params: Vec<(String, f64)>,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Overlay {
    Oracle,
    Approx,
    Parametric,
}

fn parse_key_value(s: &str) -> Result<(String, f64), String> {
    let (key, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    Ok((key.trim().to_string(), value))
}

enum Failure {
    Usage(String),
    Unsupported(String),
    Internal(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Unsupported(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Unsupported(m)
            | Failure::Internal(m)
            | Failure::Check(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_convergence_failure() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> CmdResult {
    match command {
        Command::Tau { gamma } => cmd_tau(gamma, out),
        Command::Solve {
            gamma,
            n,
            format,
            include,
            shape,
        } => cmd_solve(gamma, n, format, &include, shape, out),
        Command::Invert { gamma, r } => cmd_invert(gamma, r, out),
        Command::Validate { gamma, n } => cmd_validate(gamma, n, out),
        Command::Approx {
            gamma,
            shape,
            n,
            format,
            report,
        } => cmd_approx(gamma, shape, n, format, report, out),
        Command::Scenario {
            kind,
            params,
            n,
            format,
        } => cmd_scenario(kind, params, n, format, out),
    }
}

fn cmd_tau(gamma: f64, out: &mut impl Write) -> CmdResult {
    let param = make_gamma(gamma, DEFAULT_CRITICAL_BAND)?;
    writeln!(out, "gamma = {}", num(gamma))?;
    writeln!(out, "tau = {}", num(collapse_time(&param)?))?;
    writeln!(out, "rdot_tau = {}", velocity(rdot_at_collapse(&param)))?;
    writeln!(out, "eta = {}", num(param.eta()))?;
    writeln!(out, "alpha = {}", num(param.alpha()))?;
    Ok(())
}

fn default_shape(gamma: f64) -> Shape {
    if gamma <= -1.0 {
        Shape::P2
    } else {
        Shape::Q2
    }
}

fn check_count(n: usize) -> CmdResult {
    if n < 2 {
        return Err(Failure::Usage(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

fn approx_series(gamma: f64, shape: Option<Shape>, n: usize) -> Result<SampleSeries, Failure> {
    let shape = shape.unwrap_or_else(|| default_shape(gamma));
    let spec = resolve_shape(gamma, shape).map_err(|e| match e {
        Error::IncompatibleShape { .. } => Failure::Unsupported(e.to_string()),
        e => e.into(),
    })?;
    Ok(SampleSeries::approx(&spec, n)?)
}

fn parametric_overlay(explicit: &SampleSeries) -> Result<Vec<Sample>, Failure> {
    if explicit.gamma != -2.0 {
        return Err(Failure::Unsupported(format!(
            "the parametric overlay exists only for gamma = -2, got {}",
            explicit.gamma
        )));
    }
    explicit
        .samples
        .iter()
        .map(|s| {
            let p = parametric_at(s.t)?;
            Ok(Sample {
                t: s.t,
                r: p.r,
                rdot: p.rdot(),
                source: Source::Parametric,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    gamma: f64,
    tau: f64,
    samples: &'a [Sample],
}

fn emit_series(
    gamma: f64,
    tau: f64,
    samples: &[Sample],
    format: Format,
    out: &mut impl Write,
) -> CmdResult {
    match format {
        Format::Csv => {
            write_header(out)?;
            for s in samples {
                write_sample_row(out, s)?;
            }
        }
        Format::Json => {
            serde_json::to_writer(
                &mut *out,
                &SolveOutput {
                    gamma,
                    tau,
                    samples,
                },
            )?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn cmd_solve(
    gamma: f64,
    n: usize,
    format: Format,
    include: &[Overlay],
    shape: Option<Shape>,
    out: &mut impl Write,
) -> CmdResult {
    check_count(n)?;
    let sol = CollapseSolution::new(gamma)?;
    let explicit = SampleSeries::explicit(&sol, n)?;
    let mut samples = explicit.samples.clone();
    for overlay in [Overlay::Oracle, Overlay::Approx, Overlay::Parametric] {
        if !include.contains(&overlay) {
            continue;
        }
        match overlay {
            Overlay::Oracle => {
                samples.extend(oracle_series(gamma, n, &IntegratorConfig::default())?.samples)
            }
            Overlay::Approx => samples.extend(approx_series(gamma, shape, n)?.samples),
            Overlay::Parametric => samples.extend(parametric_overlay(&explicit)?),
        }
    }
    emit_series(gamma, sol.tau(), &samples, format, out)
}

fn cmd_invert(gamma: f64, r: f64, out: &mut impl Write) -> CmdResult {
    let sol = CollapseSolution::new(gamma)?;
    writeln!(out, "{}", num(sol.evaluate_t(r)?))?;
    Ok(())
}

fn cmd_validate(gamma: f64, n: usize, out: &mut impl Write) -> CmdResult {
    let report = validate_explicit(gamma, n, &IntegratorConfig::default())?;
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    // also fails on NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(report.max_abs_err <= VALIDATION_LIMIT) {
        return Err(Failure::Check(format!(
            "max_abs_err = {} exceeds {}",
            num(report.max_abs_err),
            num(VALIDATION_LIMIT)
        )));
    }
    Ok(())
}

fn cmd_approx(
    gamma: f64,
    shape: Option<Shape>,
    n: usize,
    format: Format,
    report: bool,
    out: &mut impl Write,
) -> CmdResult {
    check_count(n)?;
    if report {
        let shape = shape.unwrap_or_else(|| default_shape(gamma));
        let rep = approx_error_report(gamma, shape, n).map_err(|e| match e {
            Error::IncompatibleShape { .. } => Failure::Unsupported(e.to_string()),
            e => e.into(),
        })?;
        serde_json::to_writer_pretty(&mut *out, &rep)?;
        writeln!(out)?;
        return Ok(());
    }
    let series = approx_series(gamma, shape, n)?;
    let tau = series.samples.last().map_or(0.0, |s| s.t);
    emit_series(gamma, tau, &series.samples, format, out)
}

/// One `# key = value unit` line of the scenario header.
#[derive(Serialize)]
struct HeaderEntry {
    key: String,
    value: HeaderValue,
    unit: String,
}

#[derive(Serialize)]
#[serde(untagged)]
enum HeaderValue {
    Number(f64),
    Text(String),
}

fn scenario_header(sc: &PhysicalScenario) -> Result<Vec<HeaderEntry>, Failure> {
    let entry = |key: &str, value: HeaderValue, unit: &str| HeaderEntry {
        key: key.to_string(),
        value,
        unit: unit.to_string(),
    };
    let text = |s: &str| HeaderValue::Text(s.to_string());
    let (ru, tu) = (sc.roles.r_unit, sc.roles.t_unit);
    let mut h = vec![
        entry("scenario", text(sc.kind.name()), ""),
        entry("R", text(&format!("{} ({ru})", sc.roles.r)), ""),
        entry("T", text(&format!("{} ({tu})", sc.roles.t)), ""),
    ];
    for spec in sc.kind.schema() {
        h.push(entry(
            spec.name,
            HeaderValue::Number(sc.params[spec.name]),
            spec.unit,
        ));
    }
    let tau = collapse_time(&make_gamma(sc.gamma, DEFAULT_CRITICAL_BAND)?)?;
    h.push(entry("gamma", HeaderValue::Number(sc.gamma), ""));
    h.push(entry("k", HeaderValue::Number(sc.k), &sc.k_unit()));
    if sc.gamma < 1.0 {
        // Z = R^δ carries R^{δ(1-γ')} = R² for every γ
        let unit = format!(
            "{}/{tu}^2",
            spherical_collapse::scenarios::unit_power(ru, 2.0)
        );
        h.push(entry(
            "k_transformed",
            HeaderValue::Number(transform_k(sc)?),
            &unit,
        ));
    }
    if !sc.params.contains_key("R0") {
        h.push(entry("R0", HeaderValue::Number(sc.r0), ru));
    }
    h.push(entry("T0", HeaderValue::Number(sc.t0), tu));
    h.push(entry("tau", HeaderValue::Number(tau), ""));
    h.push(entry(
        "T_c",
        HeaderValue::Number(physical_collapse_time(sc)?),
        tu,
    ));
    Ok(h)
}

#[derive(Serialize)]
struct ScenarioOutput<'a> {
    header: &'a [HeaderEntry],
    warnings: &'a [String],
    samples: &'a [spherical_collapse::scenarios::DimensionalSample],
}

fn cmd_scenario(
    kind: ScenarioKind,
    params: Vec<(String, f64)>,
    n: usize,
    format: Format,
    out: &mut impl Write,
) -> CmdResult {
    check_count(n)?;
    let mut map = BTreeMap::new();
    for (k, v) in params {
        if map.insert(k.clone(), v).is_some() {
            return Err(Failure::Usage(format!("parameter `{k}` given twice")));
        }
    }
    let sc = build_scenario(kind, &map)?;
    for w in &sc.warnings {
        eprintln!("warning: {w}");
    }
    let header = scenario_header(&sc)?;
    let series = SampleSeries::explicit(&CollapseSolution::new(sc.gamma)?, n)?;
    let samples = to_physical(&sc, &series);
    match format {
        Format::Csv => {
            for e in &header {
                let value = match &e.value {
                    HeaderValue::Number(v) => num(*v),
                    HeaderValue::Text(s) => s.clone(),
                };
                if e.unit.is_empty() {
                    writeln!(out, "# {} = {}", e.key, value)?;
                } else {
                    writeln!(out, "# {} = {} {}", e.key, value, e.unit)?;
                }
            }
            for w in &sc.warnings {
                writeln!(out, "# warning: {w}")?;
            }
            writeln!(out, "T,R,Rdot,source")?;
            for s in &samples {
                format::write_row(out, s.T, s.R, s.Rdot, s.source)?;
            }
        }
        Format::Json => {
            serde_json::to_writer(
                &mut *out,
                &ScenarioOutput {
                    header: &header,
                    warnings: &sc.warnings,
                    samples: &samples,
                },
            )?;
            writeln!(out)?;
        }
    }
    Ok(())
}
