//! Command-line front end: ingest matrices or space specs, dispatch the
//! four-point computations, and emit machine-readable reports.
//!
//! Exit codes: 0 success/pass, 1 mathematical failure or violation found,
//! 2 input error.

mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use quasihyp::invariants::multiset_count;
use quasihyp::optimize::snowflake_line;
use quasihyp::spaces::EXHAUSTIVE_CAP;
use quasihyp::{
    c0_finite, delta_hyp_finite, estimate_c, maximize_delta, roundness_finite, Error, Extremum,
    FiniteMetricSpace, Point, Quadruple, Result, SampleBounds, SpaceSpec,
};

#[derive(Parser)]
#[command(
    name = "quasihyp",
    version,
    about = "Four-point invariants and quasi-hyperbolicity constants of metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a distance matrix file against the metric axioms
    Validate(ValidateArgs),
    /// Exact supremum of the four-point ratio over a finite space
    C0(FiniteArgs),
    /// Least δ for the (1, δ)-four-point inequality on a finite space
    DeltaHyp(FiniteArgs),
    /// Supremal roundness exponent of a finite space
    Roundness(RoundnessArgs),
    /// Maximize the four-point ratio over a parametric space
    Maximize(MaximizeArgs),
    /// Scale-filtered profile estimating the quasi-hyperbolicity constant
    EstimateC(EstimateArgs),
    /// Closed-form constant of the snowflaked Euclidean line
    SnowflakeLine(SnowflakeLineArgs),
    /// Recompute every claimed closed-form constant and report pass/fail
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format (CSV applies to profiles and tables only)
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Omit the meta block (wall time, timestamp) for byte-stable output
    #[arg(long)]
    no_meta: bool,
}

#[derive(Args)]
struct SpaceSel {
    /// Distance matrix file, CSV or JSON {"n":..,"dist":[[..]]}
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline space spec JSON {"kind":..,"params":{..}}
    #[arg(long)]
    space: Option<String>,
    /// Shortcut for the p-norm plane ℓ²_p; accepts "inf"
    #[arg(long)]
    p: Option<String>,
    /// Shortcut for the vee graph y = m|x| in the Euclidean plane
    #[arg(long)]
    m: Option<f64>,
    /// Snowflake exponent; combines with --p/--m, alone it snowflakes the line
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Args)]
struct SampleArgs {
    /// Points to sample when restricting a parametric space (default 40)
    #[arg(long)]
    sample_count: Option<usize>,
    /// Sampling bounds LO,HI (radius bound HI for the hyperbolic plane)
    #[arg(long, value_delimiter = ',', num_args = 2)]
    bounds: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct FiniteArgs {
    #[command(flatten)]
    sel: SpaceSel,
    #[command(flatten)]
    sample: SampleArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct RoundnessArgs {
    #[command(flatten)]
    sel: SpaceSel,
    #[command(flatten)]
    sample: SampleArgs,
    /// Bisection tolerance on the exponent
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct MaximizeArgs {
    #[command(flatten)]
    sel: SpaceSel,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long, default_value_t = 20)]
    restarts: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    sel: SpaceSel,
    /// Ascending scale floors R1,R2,...
    #[arg(long, value_delimiter = ',', required = true)]
    profile: Vec<f64>,
    /// Evaluation budget per scale floor
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SnowflakeLineArgs {
    #[arg(long)]
    alpha: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::MetricViolation(_) | Error::InfeasibleScale { .. } => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Validate(a) => cmd_validate(a),
        Command::C0(a) => cmd_extremum(a, "c0", c0_finite),
        Command::DeltaHyp(a) => cmd_extremum(a, "delta-hyp", delta_hyp_finite),
        Command::Roundness(a) => cmd_roundness(a),
        Command::Maximize(a) => cmd_maximize(a),
        Command::EstimateC(a) => cmd_estimate_c(a),
        Command::SnowflakeLine(a) => cmd_snowflake_line(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

// ---------------------------------------------------------------------------
// Space selection
// ---------------------------------------------------------------------------

impl SpaceSel {
    fn to_spec(&self) -> Result<SpaceSpec> {
        let shortcuts = self.p.is_some() || self.m.is_some() || self.alpha.is_some();
        let chosen = [self.input.is_some(), self.space.is_some(), shortcuts]
            .iter()
            .filter(|&&b| b)
            .count();
        if chosen != 1 {
            return Err(Error::Parse(
                "pick exactly one of --input, --space, or the --p/--m/--alpha shortcuts".into(),
            ));
        }
        if let Some(path) = &self.input {
            return Ok(SpaceSpec::FiniteMatrix(quasihyp::io::read_matrix(path)?));
        }
        if let Some(text) = &self.space {
            return quasihyp::io::space_from_json(text);
        }
        let base = if let Some(p) = &self.p {
            let p = match p.trim().to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "∞" => f64::INFINITY,
                s => s
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad --p value {p:?}: {e}")))?,
            };
            Some(SpaceSpec::lp(2, p))
        } else {
            self.m.map(|m| SpaceSpec::GraphVm { m })
        };
        let spec = match (base, self.alpha) {
            (Some(b), Some(a)) => SpaceSpec::snowflake(b, a),
            (Some(b), None) => b,
            (None, Some(a)) => SpaceSpec::snowflake(SpaceSpec::EuclideanLine, a),
            (None, None) => unreachable!("shortcut branch requires one flag"),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn default_bounds(spec: &SpaceSpec) -> SampleBounds {
    match spec {
        SpaceSpec::HyperbolicPlane => SampleBounds::Radius(0.9),
        SpaceSpec::HalfLineAlpha { .. } => SampleBounds::Interval { lo: 0.0, hi: 10.0 },
        SpaceSpec::Snowflake { base, .. } => default_bounds(base),
        _ => SampleBounds::Interval {
            lo: -10.0,
            hi: 10.0,
        },
    }
}

fn innermost(spec: &SpaceSpec) -> &SpaceSpec {
    match spec {
        SpaceSpec::Snowflake { base, .. } => innermost(base),
        s => s,
    }
}

fn resolve_bounds(spec: &SpaceSpec, bounds: &Option<Vec<f64>>) -> SampleBounds {
    match bounds {
        None => default_bounds(spec),
        Some(v) => {
            if matches!(innermost(spec), SpaceSpec::HyperbolicPlane) {
                SampleBounds::Radius(v[1])
            } else {
                SampleBounds::Interval { lo: v[0], hi: v[1] }
            }
        }
    }
}

/// A finite space to enumerate, plus the sampled coordinate points when the
/// matrix came from restricting a parametric space.
fn load_finite(sel: &SpaceSel, sample: &SampleArgs) -> Result<(FiniteMetricSpace, Option<Vec<Point>>)> {
    let spec = sel.to_spec()?;
    match spec {
        SpaceSpec::FiniteMatrix(fm) => {
            if fm.n() > EXHAUSTIVE_CAP {
                let count = sample.sample_count.ok_or_else(|| Error::Parse(format!(
                    "matrix has n = {} over the exhaustive cap {EXHAUSTIVE_CAP}; \
                     pass --sample-count to enumerate a random principal submatrix",
                    fm.n()
                )))?;
                let idx = SpaceSpec::FiniteMatrix(fm.clone()).sample(
                    count,
                    &SampleBounds::Interval { lo: 0.0, hi: 1.0 },
                    sample.seed,
                )?;
                let idx: Vec<usize> = idx.iter().map(|p| p.index().unwrap()).collect();
                Ok((fm.principal_submatrix(&idx)?, None))
            } else {
                Ok((fm, None))
            }
        }
        spec => {
            let count = sample.sample_count.unwrap_or(40);
            let bounds = resolve_bounds(&spec, &sample.bounds);
            let pts = spec.sample(count, &bounds, sample.seed)?;
            let fm = spec.restrict(&pts)?;
            Ok((fm, Some(pts)))
        }
    }
}

/// Swap matrix indices in a witness for the sampled coordinates they came from.
fn relabel(mut q: Quadruple, pts: &[Point]) -> Quadruple {
    let swap = |label: &mut Point| {
        if let Point::Index(i) = label {
            *label = pts[*i].clone();
        }
    };
    swap(&mut q.x);
    swap(&mut q.y);
    swap(&mut q.z);
    swap(&mut q.w);
    q
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

fn meta(no_meta: bool, start: Instant) -> Option<serde_json::Value> {
    if no_meta {
        return None;
    }
    let unix = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Some(json!({
        "wall_time_ms": start.elapsed().as_secs_f64() * 1e3,
        "unix_time": unix,
    }))
}

fn emit(mut value: serde_json::Value, m: Option<serde_json::Value>) {
    if let (Some(obj), Some(m)) = (value.as_object_mut(), m) {
        obj.insert("meta".into(), m);
    }
    println!("{value}");
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_validate(a: ValidateArgs) -> Result<u8> {
    let start = Instant::now();
    let raw = quasihyp::io::read_raw_matrix(&a.input)?;
    let violations = quasihyp::validate_metric(&raw)?;
    let valid = violations.is_empty();
    emit(
        json!({
            "command": "validate",
            "n": raw.len(),
            "valid": valid,
            "violations": violations,
        }),
        meta(a.out.no_meta, start),
    );
    Ok(if valid { 0 } else { 1 })
}

fn cmd_extremum(
    a: FiniteArgs,
    name: &str,
    op: impl Fn(&FiniteMetricSpace) -> Result<Extremum>,
) -> Result<u8> {
    let start = Instant::now();
    let (fm, pts) = load_finite(&a.sel, &a.sample)?;
    let ex = op(&fm)?;
    let witness = match &pts {
        Some(pts) => relabel(ex.witness, pts),
        None => ex.witness,
    };
    emit(
        json!({
            "command": name,
            "value": ex.value,
            "witness": witness,
            "n": fm.n(),
            "enumerated": multiset_count(fm.n()),
            "degenerate": fm.is_degenerate(),
        }),
        meta(a.out.no_meta, start),
    );
    Ok(0)
}

fn cmd_roundness(a: RoundnessArgs) -> Result<u8> {
    let start = Instant::now();
    let (fm, _) = load_finite(&a.sel, &a.sample)?;
    let r = roundness_finite(&fm, a.tol)?;
    emit(
        json!({
            "command": "roundness",
            "value": r.value,
            "capped": r.capped,
            "used_grid": r.used_grid,
            "n": fm.n(),
            "enumerated": multiset_count(fm.n()),
        }),
        meta(a.out.no_meta, start),
    );
    Ok(0)
}

fn cmd_maximize(a: MaximizeArgs) -> Result<u8> {
    let start = Instant::now();
    let spec = a.sel.to_spec()?;
    let res = maximize_delta(&spec, a.budget, a.restarts, a.seed, None)?;
    let mut value = serde_json::to_value(&res)?;
    if let Some(obj) = value.as_object_mut() {
        obj.insert("command".into(), json!("maximize"));
        obj.insert("bound_kind".into(), json!("lower"));
    }
    emit(value, meta(a.out.no_meta, start));
    Ok(0)
}

fn cmd_estimate_c(a: EstimateArgs) -> Result<u8> {
    let start = Instant::now();
    let spec = a.sel.to_spec()?;
    let profile = estimate_c(&spec, &a.profile, a.budget, a.seed)?;
    if a.out.format == Format::Csv {
        print!("{}", profile.to_csv());
        return Ok(0);
    }
    emit(
        json!({
            "command": "estimate-c",
            "profile": profile.entries,
            "final_estimate": profile.final_estimate(),
            "bound_kind": "lower",
        }),
        meta(a.out.no_meta, start),
    );
    Ok(0)
}

fn cmd_snowflake_line(a: SnowflakeLineArgs) -> Result<u8> {
    let start = Instant::now();
    let sol = snowflake_line::solve(a.alpha)?;
    let mut value = serde_json::to_value(sol)?;
    if let Some(obj) = value.as_object_mut() {
        obj.insert("command".into(), json!("snowflake-line"));
    }
    emit(value, meta(a.out.no_meta, start));
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> Result<u8> {
    let start = Instant::now();
    let rows = verify::run(a.seed)?;
    let all_pass = rows.iter().all(|r| r.pass);
    if a.out.format == Format::Csv {
        print!("{}", verify::to_csv(&rows));
    } else {
        emit(
            json!({
                "command": "verify",
                "rows": rows,
                "all_pass": all_pass,
            }),
            meta(a.out.no_meta, start),
        );
    }
    Ok(if all_pass { 0 } else { 1 })
}
