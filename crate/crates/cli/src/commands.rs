use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use clap::Parser;
use frolov_core::level::DEFAULT_MAX_LEVEL;
use frolov_core::stream::{enumerate_stream_with, StreamError, StreamOptions};
use frolov_core::verify::{
    double_box_check, reproduce_table, unimodular_check, CountRecord, ORACLE_MAX_LEVEL,
};
use frolov_core::{sample_shift, AxisBox, CubatureSpec, DiagLadder, Level, RandomShift, Summation};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::format::{csv_header, format_point, PointFormat};
use crate::{golden, parallel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the level cap.
pub const MAX_LEVEL_ENV: &str = "FROLOV_MAX_LEVEL";

/// Largest golden row exercised by the doubled-scale part of `verify`.
const DOUBLE_BOX_MAX_DIM: usize = 8;
const DOUBLE_BOX_MAX_LOG2: u32 = 10;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Golden(#[from] golden::GoldenError),
    #[error("{0}")]
    Core(#[from] frolov_core::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_CHECK_FAILED,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run_from_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let cap = std::env::var(MAX_LEVEL_ENV).ok();
    run(
        std::env::args_os(),
        cap.as_deref(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// Parses `args` (including the program name) and executes the command.
/// `max_level` is the raw value of `FROLOV_MAX_LEVEL`, if set.
///
/// Exit codes: 0 success, 1 failed check or runtime error, 2 usage error.
pub fn run<I, T>(args: I, max_level: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = level_cap(max_level).and_then(|cap| dispatch(cli.command, cap, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn level_cap(raw: Option<&str>) -> Result<u32, CliError> {
    match raw {
        None => Ok(DEFAULT_MAX_LEVEL),
        Some(s) => s.trim().parse().map_err(|_| {
            usage(format!(
                "{MAX_LEVEL_ENV} must be a non-negative integer, got {s:?}"
            ))
        }),
    }
}

fn dispatch(command: Command, cap: u32, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let target = match &command {
        Command::Count(a) => a.output.out.as_deref(),
        Command::Points(a) => a.output.out.as_deref(),
        Command::Integrate(a) => a.output.out.as_deref(),
        Command::IntegrateRandom(a) => a.common.output.out.as_deref(),
        Command::Verify(a) => a.output.out.as_deref(),
        Command::Table(a) => a.output.out.as_deref(),
    };
    let mut file;
    let mut locked;
    let out: &mut dyn Write = match target {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => {
            locked = BufWriter::new(stdout);
            &mut locked
        }
    };
    let code = match command {
        Command::Count(a) => count(a, cap, out)?,
        Command::Points(a) => points(a, cap, out)?,
        Command::Integrate(a) => integrate(a, cap, out)?,
        Command::IntegrateRandom(a) => integrate_random(a, cap, out)?,
        Command::Verify(a) => verify(a, cap, out)?,
        Command::Table(a) => table(a, cap, out)?,
    };
    out.flush()?;
    Ok(code)
}

fn resolve_level(dim: &DimArgs, cap: u32) -> Result<Level, CliError> {
    let level = match (dim.dim, dim.level) {
        (Some(d), _) => Level::from_dim(d, cap),
        (None, Some(n)) => Level::with_cap(n, cap),
        (None, None) => return Err(usage("one of --dim or --level is required")),
    };
    level.map_err(|e| usage(e.to_string()))
}

fn resolve_scale(scale: Option<f64>, log2_scale: Option<i32>) -> Result<Option<f64>, CliError> {
    match (scale, log2_scale) {
        (Some(n), _) if !(n.is_finite() && n > 0.0) => {
            Err(usage(format!("--scale must be positive, got {n}")))
        }
        (Some(n), _) => Ok(Some(n)),
        (None, Some(m)) => Ok(Some(2f64.powi(m))),
        (None, None) => Ok(None),
    }
}

fn resolve_spec(level: Level, scale: Option<f64>) -> Result<CubatureSpec, CliError> {
    let n = scale.ok_or_else(|| usage("a scale is required"))?;
    CubatureSpec::new(level, n).map_err(|e| usage(e.to_string()))
}

enum Region {
    Scaled(CubatureSpec),
    Explicit(AxisBox),
}

fn resolve_region(level: Level, region: &RegionArgs) -> Result<Region, CliError> {
    if let Some(bounds) = &region.bounds {
        let d = level.dim();
        if bounds.len() != 2 * d {
            return Err(usage(format!(
                "--box needs {} values (d lower then d upper), got {}",
                2 * d,
                bounds.len()
            )));
        }
        if bounds.iter().any(|v| !v.is_finite()) {
            return Err(usage("--box values must be finite numbers"));
        }
        let b = AxisBox::new(bounds[..d].to_vec(), bounds[d..].to_vec())
            .map_err(|e| usage(e.to_string()))?;
        return Ok(Region::Explicit(b));
    }
    let scale = resolve_scale(region.scale, region.log2_scale)?;
    Ok(Region::Scaled(resolve_spec(level, scale)?))
}

fn check_eps(eps: f64) -> Result<(), CliError> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(usage("--boundary-eps must be a finite number >= 0"));
    }
    Ok(())
}

/// JSON number for `N`: an integer when `N` is integral, otherwise a float.
fn scale_json(n: f64) -> Value {
    if n.fract() == 0.0 && n > 0.0 && n < 9.007_199_254_740_992e15 {
        json!(n as u64)
    } else {
        json!(n)
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn count(a: CountArgs, cap: u32, out: &mut dyn Write) -> Result<i32, CliError> {
    let level = resolve_level(&a.dim, cap)?;
    check_eps(a.boundary_eps)?;
    let region = resolve_region(level, &a.region)?;
    let ladder = DiagLadder::new(level);
    let (region_box, n_json) = match &region {
        Region::Scaled(spec) => (spec.standard_box(), scale_json(spec.scale())),
        Region::Explicit(b) => (b.clone(), Value::Null),
    };
    let start = Instant::now();
    let count = parallel::count_points(&ladder, &region_box, a.boundary_eps, a.threads.max(1))?;
    let seconds = start.elapsed().as_secs_f64();
    write_json(
        out,
        &json!({ "d": level.dim(), "N": n_json, "count": count, "seconds": seconds }),
    )?;
    Ok(EXIT_OK)
}

fn points(a: PointsArgs, cap: u32, out: &mut dyn Write) -> Result<i32, CliError> {
    let level = resolve_level(&a.dim, cap)?;
    check_eps(a.boundary_eps)?;
    let region = resolve_region(level, &a.region)?;
    let ladder = DiagLadder::new(level);
    let d = level.dim();
    let precision = a.precision as usize;
    let options = StreamOptions {
        boundary_eps: a.boundary_eps,
        first_range: None,
    };

    // Nodes are mapped into the unit cube unless an explicit box or --raw is given.
    let (region_box, mapping) = match &region {
        Region::Explicit(b) => {
            if a.seed.is_some() {
                return Err(usage("--seed requires a scale, not an explicit --box"));
            }
            (b.clone(), None)
        }
        Region::Scaled(spec) => {
            let shift = match a.seed {
                Some(seed) => sample_shift(seed, d),
                None => RandomShift::identity(d),
            };
            let (b, av) = spec.randomized_box(&shift, &ladder)?;
            let map = (!a.raw).then_some((spec, shift, av));
            (b, map)
        }
    };

    if a.header && a.format == PointFormat::Csv {
        writeln!(out, "{}", csv_header(d))?;
    }
    let start = Instant::now();
    let result = enumerate_stream_with(
        &ladder,
        &region_box,
        &options,
        |p| -> Result<(), CliError> {
            if a.format == PointFormat::JsonSummary {
                return Ok(());
            }
            let line = match &mapping {
                Some((spec, shift, av)) => {
                    let node = spec.map_to_unit(p.x, shift, av)?;
                    format_point(
                        frolov_core::PointView { k: p.k, x: &node },
                        a.format,
                        precision,
                    )
                }
                None => format_point(p, a.format, precision),
            };
            writeln!(out, "{line}")?;
            Ok(())
        },
    );
    let count = match result {
        Ok(c) => c,
        Err(StreamError::Domain(e)) => return Err(e.into()),
        Err(StreamError::Consumer(e)) => return Err(e),
    };
    if a.format == PointFormat::JsonSummary {
        let n_json = match &region {
            Region::Scaled(spec) => scale_json(spec.scale()),
            Region::Explicit(_) => Value::Null,
        };
        let seconds = start.elapsed().as_secs_f64();
        write_json(
            out,
            &json!({ "d": d, "N": n_json, "count": count, "seconds": seconds }),
        )?;
    }
    Ok(EXIT_OK)
}

fn summation(compensated: bool) -> Summation {
    if compensated {
        Summation::Compensated
    } else {
        Summation::Naive
    }
}

fn integrate(a: IntegrateArgs, cap: u32, out: &mut dyn Write) -> Result<i32, CliError> {
    let level = resolve_level(&a.dim, cap)?;
    let spec = resolve_spec(level, resolve_scale(a.scale.scale, a.scale.log2_scale)?)?;
    let ladder = DiagLadder::new(level);
    let f = a.integrand;
    let start = Instant::now();
    let est = parallel::integrate(
        &spec,
        &ladder,
        None,
        summation(a.compensated),
        a.threads.max(1),
        |x| f.eval(x),
    )?;
    let seconds = start.elapsed().as_secs_f64();
    write_json(
        out,
        &json!({
            "d": level.dim(),
            "N": scale_json(spec.scale()),
            "value": est.value,
            "nodeCount": est.node_count,
            "seconds": seconds,
            "integrand": f.name(),
            "exact": f.exact(level.dim()),
        }),
    )?;
    Ok(EXIT_OK)
}

fn integrate_random(
    a: IntegrateRandomArgs,
    cap: u32,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let c = &a.common;
    let level = resolve_level(&c.dim, cap)?;
    let spec = resolve_spec(level, resolve_scale(c.scale.scale, c.scale.log2_scale)?)?;
    let ladder = DiagLadder::new(level);
    let d = level.dim();
    let f = c.integrand;
    let start = Instant::now();
    let mut values = Vec::with_capacity(a.samples as usize);
    let mut node_count = 0u64;
    for i in 0..a.samples {
        let shift = sample_shift(a.seed.wrapping_add(i), d);
        let est = parallel::integrate(
            &spec,
            &ladder,
            Some(&shift),
            summation(c.compensated),
            c.threads.max(1),
            |x| f.eval(x),
        )?;
        values.push(est.value);
        node_count += est.node_count;
    }
    let seconds = start.elapsed().as_secs_f64();
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    let mut summary = json!({
        "d": d,
        "N": scale_json(spec.scale()),
        "value": mean,
        "nodeCount": node_count,
        "seconds": seconds,
        "integrand": f.name(),
        "exact": f.exact(d),
        "seed": a.seed,
        "samples": a.samples,
    });
    if values.len() > 1 {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
        summary["stderr"] = json!((var / m).sqrt());
    }
    write_json(out, &summary)?;
    Ok(EXIT_OK)
}

fn load_golden(path: Option<&Path>) -> Result<Vec<CountRecord>, CliError> {
    Ok(match path {
        Some(p) => golden::load(p)?,
        None => golden::bundled(),
    })
}

fn level_for_max_dim(max_dim: usize, cap: u32) -> Result<Level, CliError> {
    // Largest level whose dimension does not exceed max_dim.
    if max_dim == 0 {
        return Err(usage("--max-dim must be positive"));
    }
    let n = usize::BITS - 1 - max_dim.leading_zeros();
    Level::with_cap(n.min(cap), cap).map_err(|e| usage(e.to_string()))
}

fn verify(a: VerifyArgs, cap: u32, out: &mut dyn Write) -> Result<i32, CliError> {
    let records = load_golden(a.golden.as_deref())?;
    let max_level = level_for_max_dim(a.max_dim, cap)?;
    let mut failures = 0usize;
    let mut line = |out: &mut dyn Write, ok: bool, text: String| -> io::Result<()> {
        if !ok {
            failures += 1;
        }
        writeln!(out, "{} {text}", if ok { "PASS" } else { "FAIL" })
    };

    for n in 0..=max_level.n().min(ORACLE_MAX_LEVEL) {
        let r = unimodular_check(Level::with_cap(n, cap)?)?;
        line(
            out,
            r.pass,
            format!(
                "unimodular n={n} max_integer_deviation={:e} det_deviation={:e}",
                r.max_integer_deviation, r.det_deviation
            ),
        )?;
    }

    let rows = reproduce_table(&records, max_level, a.max_log2_scale)?;
    for row in &rows {
        let r = row.record;
        line(
            out,
            row.matched,
            format!(
                "table d={} log2N={} expected={} observed={}",
                r.d, r.log2_scale, r.expected, row.observed
            ),
        )?;
    }

    let mut ladders: Vec<Option<DiagLadder>> = vec![None; max_level.n() as usize + 1];
    for row in &rows {
        let r = row.record;
        if r.d > DOUBLE_BOX_MAX_DIM || r.log2_scale > DOUBLE_BOX_MAX_LOG2 {
            continue;
        }
        let level = Level::from_dim(r.d, cap)?;
        let ladder = ladders[level.n() as usize].get_or_insert_with(|| DiagLadder::new(level));
        let rep = double_box_check(ladder, 2f64.powi(r.log2_scale as i32))?;
        line(
            out,
            rep.agree,
            format!(
                "double-box d={} log2N={} direct={} filtered={}",
                r.d, r.log2_scale, rep.count_direct, rep.count_filtered
            ),
        )?;
    }

    let ok = failures == 0;
    writeln!(
        out,
        "{} ({} failed)",
        if ok { "ALL PASS" } else { "FAILED" },
        failures
    )?;
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn table(a: TableArgs, cap: u32, out: &mut dyn Write) -> Result<i32, CliError> {
    let records = load_golden(a.golden.as_deref())?;
    let max_level = level_for_max_dim(a.max_dim, cap)?;
    writeln!(out, "d,log2N,expected,observed,match")?;
    let mut all = true;
    for r in records {
        if r.d > max_level.dim() || r.log2_scale > a.max_log2_scale {
            continue;
        }
        let level = Level::from_dim(r.d, cap)?;
        let ladder = DiagLadder::new(level);
        let spec = CubatureSpec::from_log2(level, r.log2_scale as i32)?;
        let observed =
            parallel::count_points(&ladder, &spec.standard_box(), 0.0, a.threads.max(1))?;
        all &= observed == r.expected;
        writeln!(
            out,
            "{},{},{},{},{}",
            r.d,
            r.log2_scale,
            r.expected,
            observed,
            observed == r.expected
        )?;
    }
    Ok(if all { EXIT_OK } else { EXIT_CHECK_FAILED })
}
