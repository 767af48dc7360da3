//! `minkres` — resistance tables, extremals, and invariant suites for
//! Newton's problem in Lorentz–Minkowski space.
//!
//! Exit codes: 0 success, 1 invariant-suite failure, 2 usage error,
//! 3 numerical failure.

// `!(x > 0.0)` guards reject NaN inputs along with nonpositive ones.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use minkres::checks::{run_suite, Suite};
use minkres::ssc::{probe_to_csv, ssc_check, ExtensionPolicy};
use minkres::{
    divergence_scan, resistance_closed_form, resistance_radial, table1, BoundaryData, Domain2,
    Error as CoreError, ParametricExtremal, RadialProfile,
};

const ROOT_TOL: f64 = minkres::tol::ROOT_TOL;

#[derive(Parser)]
#[command(
    name = "minkres",
    version,
    about = "Newton's problem of minimal resistance in Lorentz-Minkowski space",
    disable_help_subcommand = true
)]
struct Cli {
    /// Absolute quadrature tolerance
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Output format for machine-readable payloads
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write the payload to PATH instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Significant digits in CSV/tabular output
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Resistance of the radial extremal vs. the cone, per boundary height
    Table1 {
        #[arg(long = "R", default_value_t = 1.0)]
        radius: f64,
        /// Comma-separated heights M (default 0.1..0.9)
        #[arg(long = "M-list", value_delimiter = ',')]
        m_list: Option<Vec<f64>>,
    },
    /// Resistance of one profile: quadrature and closed form side by side
    Resist {
        /// flat | cap | cone | truncated-cone | truncated-cap | extremal
        #[arg(long)]
        profile: String,
        #[arg(long = "R", default_value_t = 1.0)]
        radius: f64,
        /// Cone slope λ ∈ (0,1)
        #[arg(long)]
        lambda: Option<f64>,
        /// Cap radius ρ > 0
        #[arg(long)]
        rho: Option<f64>,
        /// Boundary height M ∈ (0,R) (truncated kinds, extremal)
        #[arg(long = "M")]
        height: Option<f64>,
        /// Sequence index n ≥ 1 (truncated kinds)
        #[arg(long)]
        n: Option<u32>,
    },
    /// Solve the radial extremal through (R, M); optionally emit curve data
    Extremal {
        #[arg(long = "R")]
        radius: f64,
        #[arg(long = "M")]
        height: f64,
        /// Write generating-curve samples (CSV r,u,du,d2u) to this path
        #[arg(long)]
        emit_curve: Option<PathBuf>,
        /// Number of curve samples
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Run an invariant suite; exit 0 iff every check passes
    Check {
        /// core | resistance | variational | ssc | all
        #[arg(long)]
        suite: String,
    },
    /// Divergent truncated-cone sequence E[u_n], closed form and quadrature
    Diverge {
        #[arg(long = "R")]
        radius: f64,
        #[arg(long = "M")]
        height: f64,
        #[arg(long)]
        n_max: u32,
    },
    /// Probe the single shock condition on a profile at random points
    Ssc {
        /// flat | cap | cone | truncated-cone | truncated-cap | extremal
        #[arg(long)]
        profile: String,
        #[arg(long = "R", default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long = "M")]
        height: Option<f64>,
        #[arg(long)]
        n: Option<u32>,
        /// Number of probe points
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Largest ray parameter probed (default 4·diam Ω)
        #[arg(long)]
        t_max: Option<f64>,
        /// RNG seed for the probe points
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum CliError {
    Usage(String),
    Suite,
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Suite => 1,
            CliError::Numerical(_) => 3,
        }
    }
}

/// Usage errors are bad inputs; everything the solver itself raises on valid
/// input is a numerical failure.
fn classify(err: CoreError) -> CliError {
    match err {
        CoreError::BadBoundaryData { .. }
        | CoreError::SlopeOutOfRange { .. }
        | CoreError::DomainError { .. }
        | CoreError::NotSpacelike { .. }
        | CoreError::ZeroGradient => CliError::Usage(err.to_string()),
        other => CliError::Numerical(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version requests are not errors
            use clap::error::ErrorKind;
            let kind = err.kind();
            let _ = err.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            };
        }
    };
    match run(&cli) {
        Ok(payload) => {
            if let Some(path) = &cli.output {
                if let Err(err) = std::fs::write(path, payload) {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return ExitCode::from(3);
                }
            } else {
                print!("{payload}");
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            match &err {
                CliError::Usage(msg) => eprintln!("usage error: {msg}"),
                CliError::Suite => eprintln!("invariant suite failed"),
                CliError::Numerical(msg) => eprintln!("numerical failure: {msg}"),
            }
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    if !(cli.tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be > 0, got {}",
            cli.tol
        )));
    }
    match &cli.command {
        Command::Table1 { radius, m_list } => cmd_table1(cli, *radius, m_list.as_deref()),
        Command::Resist {
            profile,
            radius,
            lambda,
            rho,
            height,
            n,
        } => cmd_resist(cli, profile, *radius, *lambda, *rho, *height, *n),
        Command::Extremal {
            radius,
            height,
            emit_curve,
            samples,
        } => cmd_extremal(cli, *radius, *height, emit_curve.as_deref(), *samples),
        Command::Check { suite } => cmd_check(cli, suite),
        Command::Diverge {
            radius,
            height,
            n_max,
        } => cmd_diverge(cli, *radius, *height, *n_max),
        Command::Ssc {
            profile,
            radius,
            lambda,
            rho,
            height,
            n,
            points,
            t_max,
            seed,
        } => cmd_ssc(
            cli, profile, *radius, *lambda, *rho, *height, *n, *points, *t_max, *seed,
        ),
    }
}

/// `sig`-significant-digit fixed-point rendering with '.' decimal separator.
fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn require(flag: &str, value: Option<f64>) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this profile")))
}

fn build_profile(
    kind: &str,
    radius: f64,
    lambda: Option<f64>,
    rho: Option<f64>,
    height: Option<f64>,
    n: Option<u32>,
) -> Result<RadialProfile<f64>, CliError> {
    let profile = match kind {
        "flat" => RadialProfile::flat(radius),
        "cap" => RadialProfile::hyperbolic_cap(radius, require("rho", rho)?),
        "cone" => RadialProfile::cone(radius, require("lambda", lambda)?),
        "truncated-cone" => {
            RadialProfile::truncated_cone(radius, require("M", height)?, n.unwrap_or(1))
        }
        "truncated-cap" => {
            RadialProfile::truncated_cap(radius, require("M", height)?, n.unwrap_or(1))
        }
        "extremal" => {
            let boundary = BoundaryData::new(radius, require("M", height)?).map_err(classify)?;
            let extremal = ParametricExtremal::solve(&boundary, ROOT_TOL).map_err(classify)?;
            return Ok(extremal.to_profile());
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown profile kind `{other}` (expected flat | cap | cone | \
                 truncated-cone | truncated-cap | extremal)"
            )))
        }
    };
    profile.map_err(classify)
}

fn cmd_table1(cli: &Cli, radius: f64, m_list: Option<&[f64]>) -> Result<String, CliError> {
    let default: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    let heights: Vec<f64> = m_list.map(|s| s.to_vec()).unwrap_or(default);
    if heights.is_empty() {
        return Err(CliError::Usage("--M-list must be nonempty".into()));
    }
    for &m in &heights {
        if !(m > 0.0 && m < radius) {
            return Err(CliError::Usage(format!(
                "M = {m} outside (0, R) with R = {radius}"
            )));
        }
    }
    let rows = table1(radius, &heights).map_err(classify)?;
    match cli.format {
        Format::Csv => {
            let mut out = String::from("M,p_R,E_extremal,E_cone\n");
            for row in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    fmt_sig(row.height, cli.precision),
                    fmt_sig(row.p_boundary, cli.precision),
                    fmt_sig(row.resistance_extremal, cli.precision),
                    fmt_sig(row.resistance_cone, cli.precision)
                );
            }
            Ok(out)
        }
        Format::Json => {
            let json = serde_json::to_string_pretty(&rows).expect("serializable rows");
            Ok(format!("{json}\n"))
        }
    }
}

fn cmd_resist(
    cli: &Cli,
    kind: &str,
    radius: f64,
    lambda: Option<f64>,
    rho: Option<f64>,
    height: Option<f64>,
    n: Option<u32>,
) -> Result<String, CliError> {
    let profile = build_profile(kind, radius, lambda, rho, height, n)?;
    let quadrature = resistance_radial(&profile, cli.tol).map_err(classify)?;
    // extremal closed form lives with the extremal; canonical kinds here
    let closed = match profile.kind() {
        minkres::ProfileKind::Extremal(e) => Some(minkres::ResistanceReport {
            value: e.resistance(),
            method: minkres::Method::ClosedForm,
            abs_error_estimate: 0.0,
        }),
        _ => resistance_closed_form(&profile).ok(),
    };
    match cli.format {
        Format::Csv => {
            let mut out = String::from("method,value,abs_error_estimate\n");
            let _ = writeln!(
                out,
                "Quadrature1D,{},{}",
                fmt_sig(quadrature.value, cli.precision),
                fmt_sig(quadrature.abs_error_estimate, 3)
            );
            if let Some(c) = &closed {
                let _ = writeln!(out, "ClosedForm,{},0", fmt_sig(c.value, cli.precision));
            }
            Ok(out)
        }
        Format::Json => {
            let json = serde_json::json!({
                "profile": profile.descriptor(),
                "quadrature": quadrature,
                "closed_form": closed,
            });
            Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&json).expect("serializable")
            ))
        }
    }
}

fn cmd_extremal(
    cli: &Cli,
    radius: f64,
    height: f64,
    emit_curve: Option<&std::path::Path>,
    samples: usize,
) -> Result<String, CliError> {
    let boundary = BoundaryData::new(radius, height).map_err(classify)?;
    let extremal = ParametricExtremal::solve(&boundary, ROOT_TOL).map_err(classify)?;
    if let Some(path) = emit_curve {
        if samples == 0 {
            return Err(CliError::Usage("--samples must be >= 1".into()));
        }
        let mut csv = String::from("r,u,du,d2u\n");
        for row in extremal.sample_curve(samples) {
            let _ = writeln!(
                csv,
                "{},{},{},{}",
                fmt_sig(row.r, cli.precision),
                fmt_sig(row.u, cli.precision),
                fmt_sig(row.du, cli.precision),
                fmt_sig(row.d2u, cli.precision)
            );
        }
        std::fs::write(path, csv)
            .map_err(|e| CliError::Numerical(format!("cannot write curve: {e}")))?;
    }
    match cli.format {
        Format::Csv => {
            let mut out = String::from("p_R,c1,E\n");
            let _ = writeln!(
                out,
                "{},{},{}",
                fmt_sig(extremal.p_boundary(), cli.precision),
                fmt_sig(extremal.c1(), cli.precision),
                fmt_sig(extremal.resistance(), cli.precision)
            );
            Ok(out)
        }
        Format::Json => {
            let quadrature = extremal.resistance_quadrature(cli.tol).map_err(classify)?;
            let json = serde_json::json!({
                "R": radius,
                "M": height,
                "p_R": extremal.p_boundary(),
                "c1": extremal.c1(),
                "c2": extremal.c2(),
                "E": extremal.resistance(),
                "E_quadrature": quadrature.value,
            });
            Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&json).expect("serializable")
            ))
        }
    }
}

fn cmd_check(cli: &Cli, suite_name: &str) -> Result<String, CliError> {
    let suite = Suite::parse(suite_name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown suite `{suite_name}` (expected core | resistance | variational | ssc | all)"
        ))
    })?;
    let outcomes = run_suite(suite);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let payload = match cli.format {
        Format::Csv => {
            let mut out = String::new();
            for o in &outcomes {
                let _ = writeln!(
                    out,
                    "{} {}: {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                );
            }
            let _ = writeln!(out, "{} checks, {} failed", outcomes.len(), failed);
            out
        }
        Format::Json => {
            let entries: Vec<serde_json::Value> = outcomes
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "name": o.name,
                        "passed": o.passed,
                        "detail": o.detail,
                    })
                })
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&serde_json::json!({
                    "checks": entries,
                    "failed": failed,
                }))
                .expect("serializable")
            )
        }
    };
    if failed > 0 {
        // still print the report before failing
        if let Some(path) = &cli.output {
            let _ = std::fs::write(path, &payload);
        } else {
            print!("{payload}");
        }
        return Err(CliError::Suite);
    }
    Ok(payload)
}

fn cmd_diverge(cli: &Cli, radius: f64, height: f64, n_max: u32) -> Result<String, CliError> {
    if n_max < 1 {
        return Err(CliError::Usage("--n-max must be >= 1".into()));
    }
    BoundaryData::new(radius, height).map_err(classify)?;
    let n_list: Vec<u32> = (1..=n_max).collect();
    let rows = divergence_scan(radius, height, &n_list, cli.tol).map_err(classify)?;
    eprintln!(
        "note: E_sloped is the sloped-part closed form pi*a_n^4/(a_n^2-M^2); \
         E_total adds the flat annulus pi*(R^2-a_n^2), matching the polar \
         integral over all of [0, R] (and the quadrature column)"
    );
    match cli.format {
        Format::Csv => {
            let mut out = String::from("n,E_sloped,E_total,E_quadrature\n");
            for row in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    row.n,
                    fmt_sig(row.closed_sloped, cli.precision),
                    fmt_sig(row.closed_total, cli.precision),
                    fmt_sig(row.quadrature, cli.precision)
                );
            }
            Ok(out)
        }
        Format::Json => Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&rows).expect("serializable")
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_ssc(
    cli: &Cli,
    kind: &str,
    radius: f64,
    lambda: Option<f64>,
    rho: Option<f64>,
    height: Option<f64>,
    n: Option<u32>,
    points: usize,
    t_max: Option<f64>,
    seed: u64,
) -> Result<String, CliError> {
    if points == 0 {
        return Err(CliError::Usage("--points must be >= 1".into()));
    }
    let profile = build_profile(kind, radius, lambda, rho, height, n)?;
    let domain = Domain2::Disk { radius };
    let t_max = t_max.unwrap_or(4.0 * domain.diameter());
    if !(t_max > 0.0) {
        return Err(CliError::Usage("--t-max must be > 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    let mut csv = String::from("x,y,t,margin\n");
    for _ in 0..points {
        let ang: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = radius * rng.gen_range(0.0001f64..1.0).sqrt();
        let point = (r * ang.cos(), r * ang.sin());
        let probe = ssc_check(
            &profile,
            &domain,
            point,
            t_max,
            64,
            ExtensionPolicy::Natural,
        )
        .map_err(classify)?;
        worst = worst.min(probe.worst_margin);
        // full (x,y,t,margin) rows land in the payload only under --output;
        // stdout stays a small summary
        if cli.output.is_some() {
            csv.push_str(probe_to_csv(&probe).split_once('\n').unwrap().1);
        }
    }
    let satisfied = worst >= -1e-12;
    let summary = match cli.format {
        Format::Csv => format!(
            "points,t_values,worst_margin,satisfied\n{},{},{},{}\n",
            points,
            64,
            fmt_sig(worst, cli.precision),
            satisfied
        ),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&serde_json::json!({
                "points": points,
                "t_values": 64,
                "worst_margin": worst,
                "satisfied": satisfied,
            }))
            .expect("serializable")
        ),
    };
    if cli.output.is_some() && cli.format == Format::Csv {
        // payload written to the file is the full probe table
        print!("{summary}");
        return Ok(csv);
    }
    Ok(summary)
}
