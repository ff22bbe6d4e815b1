//! Command-line front end: argument parsing, dispatch and exit codes.

mod output;
mod range;

pub use output::{format_complex, format_decimal, Emitter, Format, OutputRecord, Row};
pub use range::{format_rational_input, RangeSpec, MAX_GRID_POINTS};

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::Serialize;
use thiserror::Error;

use crate::asymptotics::{euler_zeta_negative, extract_zeta, DEFAULT_N_MIN};
use crate::ball::{HPComplex, HPReal};
use crate::context::{PrecisionContext, DEFAULT_MAX_TERMS, DEFAULT_PRECISION_BITS};
use crate::error::ZetaError;
use crate::eval::{EvalResult, Method};
use crate::numerics::{bernoulli, riemann_zeta_numeric};
use crate::spheres::{catalan, sphere_volume_gamma, sphere_volume_zproduct};
use crate::verify::{run_suites, CheckResult, Suite, VerifyOptions, DEFAULT_SEED};
use crate::zeta_z::{big_z, zeta_z_closed, zeta_z_deriv, zeta_z_gamma_route, zeta_z_mellin, zeta_z_product};
use crate::zeta_zn::{
    sine_odd_power_sum, zeta_zn_closed_poly, zeta_zn_direct, zeta_zn_negative_int, DiscreteCircle, CLOSED_POLY_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error("{0} verification check(s) failed")]
    VerifyFailed(usize),
    #[error("output error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::VerifyFailed(_) => EXIT_VERIFY_FAILURE,
            CliError::Zeta(ZetaError::InvalidContext(_)) => EXIT_USAGE,
            CliError::Zeta(e) if e.is_domain_like() => EXIT_DOMAIN,
            CliError::Zeta(_) | CliError::Io(_) => EXIT_NUMERIC,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Zeta(e) => e.kind(),
            CliError::VerifyFailed(_) => "VerifyFailure",
            CliError::Io(_) => "IoError",
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "zetakit",
    version,
    about = "Spectral zeta functions of Z and Z/nZ, sphere volumes and zeta values at high precision"
)]
pub struct Cli {
    /// Precision in bits; decimal output carries ceil(0.3 * bits) digits.
    #[arg(long, global = true, env = "ZETAKIT_PRECISION_BITS", default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision_bits: u32,
    /// Target absolute error of numerical results.
    #[arg(long, global = true, default_value = "1e-30")]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point.
    Eval(PointCommand),
    /// Run the invariant suites.
    Verify(VerifyArgs),
    /// Evaluate a function over a grid of n and/or s.
    Sweep(PointCommand),
    /// Recover zeta(s), s <= 0, from the large-n behaviour of sine power sums.
    Extract(ExtractArgs),
    /// Sphere volumes by the Gamma closed form and the Z-product.
    Volumes(VolumesArgs),
    /// Closed polynomial in n for the zeta function of Z/nZ at a positive integer.
    Poly(PolyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    ZetaZ,
    Z,
    ZetaZn,
    ZetaZnDirect,
    ZetaZDeriv,
    Catalan,
    Bernoulli,
    RiemannZeta,
    Volumes,
}

impl Target {
    fn name(self) -> &'static str {
        match self {
            Target::ZetaZ => "zeta-z",
            Target::Z => "z",
            Target::ZetaZn => "zeta-zn",
            Target::ZetaZnDirect => "zeta-zn-direct",
            Target::ZetaZDeriv => "zeta-z-deriv",
            Target::Catalan => "catalan",
            Target::Bernoulli => "bernoulli",
            Target::RiemannZeta => "riemann-zeta",
            Target::Volumes => "volumes",
        }
    }

    /// Required parameters, then parameters that may also be given.
    fn params(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Target::ZetaZ | Target::Z | Target::RiemannZeta => (&["s"], &["im"]),
            Target::ZetaZDeriv => (&["s"], &[]),
            Target::ZetaZn | Target::ZetaZnDirect => (&["n", "s"], &["im"]),
            Target::Catalan => (&["m"], &[]),
            Target::Bernoulli => (&["k"], &[]),
            Target::Volumes => (&["n"], &[]),
        }
    }

    fn routes(self) -> &'static [Route] {
        match self {
            Target::ZetaZ => &[Route::Auto, Route::Closed, Route::Gamma, Route::Product, Route::Mellin],
            Target::ZetaZn => &[Route::Auto, Route::Closed, Route::Direct],
            Target::Volumes => &[Route::Auto, Route::Gamma, Route::Product],
            _ => &[Route::Auto],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Auto,
    Closed,
    Gamma,
    Product,
    Mellin,
    Direct,
}

#[derive(Debug, Args)]
pub struct PointCommand {
    #[arg(value_enum)]
    pub target: Target,
    /// Real part of s: integer, p/q or decimal (a range for sweep).
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Imaginary part of s.
    #[arg(long, allow_hyphen_values = true)]
    pub im: Option<String>,
    /// Number of vertices of the discrete circle, or the sphere dimension.
    #[arg(long)]
    pub n: Option<String>,
    /// Catalan index.
    #[arg(long)]
    pub m: Option<String>,
    /// Bernoulli index.
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long, value_enum, default_value_t = Route::Auto)]
    pub route: Route,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Numerics,
    ZetaZ,
    ZetaZn,
    Asymptotics,
    Spheres,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Test mode: perturb the closed polynomial so its check must fail.
    #[arg(long, hide = true)]
    pub corrupt_poly: bool,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, default_value_t = 10_000)]
    pub n_max: u32,
    #[arg(long, default_value_t = DEFAULT_N_MIN)]
    pub n_min: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VolumeRouteArg {
    Gamma,
    Product,
    Both,
}

#[derive(Debug, Args)]
pub struct VolumesArgs {
    #[arg(long, default_value = "0:20")]
    pub n: String,
    #[arg(long, value_enum, default_value_t = VolumeRouteArg::Both)]
    pub route: VolumeRouteArg,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long)]
    pub m: u32,
}

/// Parse `args` (including the program name), run the command and return the
/// process exit code. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return e.exit_code();
        }
    };
    let start = Instant::now();
    // Render into a buffer first so failing commands print no partial data;
    // sweeps stream straight to `out`.
    let streaming = matches!(cli.command, Command::Sweep(_));
    let mut buf = Vec::new();
    let result = if streaming {
        dispatch(&cli, out)
    } else {
        dispatch(&cli, &mut buf)
    };
    let code = match &result {
        Ok(()) => EXIT_OK,
        Err(e) => e.exit_code(),
    };
    if !streaming && (code == EXIT_OK || code == EXIT_VERIFY_FAILURE) {
        let _ = out.write_all(&buf);
        let _ = out.flush();
    }
    if let Err(e) = result {
        let _ = writeln!(err, "error[{}]: {e}", e.kind());
    }
    let _ = writeln!(err, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    code
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let ctx = PrecisionContext::new(cli.precision_bits, cli.tol, DEFAULT_MAX_TERMS)?;
    match &cli.command {
        Command::Eval(p) => cmd_eval(p, &ctx, cli.format, out),
        Command::Sweep(p) => cmd_sweep(p, &ctx, cli.format, out),
        Command::Verify(v) => cmd_verify(v, &ctx, cli.format, out),
        Command::Extract(x) => cmd_extract(x, &ctx, cli.format, out),
        Command::Volumes(v) => cmd_volumes(v, &ctx, cli.format, out),
        Command::Poly(p) => cmd_poly(p, cli.format, out),
    }
}

/// One grid point.
#[derive(Debug, Clone, Default)]
struct Point {
    s: Option<Rational>,
    im: Option<Rational>,
    n: Option<u32>,
    m: Option<u32>,
    k: Option<u32>,
}

impl Point {
    fn inputs(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let ints = [("n", self.n), ("m", self.m), ("k", self.k)];
        for (name, v) in ints {
            if let Some(v) = v {
                m.insert(name.to_string(), v.to_string());
            }
        }
        if let Some(s) = &self.s {
            m.insert("s".into(), format_rational_input(s));
        }
        if let Some(im) = &self.im {
            m.insert("im".into(), format_rational_input(im));
        }
        m
    }

    fn s_real(&self, prec: u32) -> HPReal {
        HPReal::from_rational(prec, self.s.as_ref().expect("s checked"))
    }

    fn s_complex(&self, prec: u32) -> HPComplex {
        let re = self.s_real(prec);
        match &self.im {
            Some(im) if *im != 0 => HPComplex::from_parts(&re, &HPReal::from_rational(prec, im)),
            _ => re.into(),
        }
    }

    fn is_real(&self) -> bool {
        self.im.as_ref().is_none_or(|im| *im == 0)
    }
}

/// Expand the parameter arguments into a grid, checking them against the
/// target. `single` rejects ranges.
fn grid(p: &PointCommand, single: bool) -> CliResult<Vec<Point>> {
    let t = p.target;
    if !t.routes().contains(&p.route) {
        return Err(usage(format!(
            "--route {} does not apply to {}",
            p.route.to_possible_value().expect("route name").get_name(),
            t.name()
        )));
    }
    let (required, optional) = t.params();
    let given = [("s", &p.s), ("im", &p.im), ("n", &p.n), ("m", &p.m), ("k", &p.k)];
    let mut specs: BTreeMap<&str, RangeSpec> = BTreeMap::new();
    for (name, v) in given {
        match v {
            Some(text) if required.contains(&name) || optional.contains(&name) => {
                let spec = RangeSpec::parse(text).map_err(usage)?;
                if single && !spec.is_single() {
                    return Err(usage(format!("--{name} takes a single value here, got '{text}'")));
                }
                specs.insert(name, spec);
            }
            Some(_) => return Err(usage(format!("{} does not take --{name}", t.name()))),
            None if required.contains(&name) => {
                return Err(usage(format!("{} requires --{name}", t.name())));
            }
            None => {}
        }
    }
    let ints = |name: &str| -> CliResult<Vec<Option<u32>>> {
        match specs.get(name) {
            Some(r) => Ok(r.integer_values(name).map_err(usage)?.into_iter().map(Some).collect()),
            None => Ok(vec![None]),
        }
    };
    let rats = |name: &str| -> CliResult<Vec<Option<Rational>>> {
        match specs.get(name) {
            Some(r) => Ok(r.values().map_err(usage)?.into_iter().map(Some).collect()),
            None => Ok(vec![None]),
        }
    };
    let (ns, ms, ks, ss, ims) = (ints("n")?, ints("m")?, ints("k")?, rats("s")?, rats("im")?);
    let total = ns.len() * ms.len() * ks.len() * ss.len() * ims.len();
    if total > MAX_GRID_POINTS {
        return Err(usage(format!("grid has {total} points, more than {MAX_GRID_POINTS}")));
    }
    let mut points = Vec::with_capacity(total);
    for n in &ns {
        for m in &ms {
            for k in &ks {
                for s in &ss {
                    for im in &ims {
                        points.push(Point {
                            s: s.clone(),
                            im: im.clone(),
                            n: *n,
                            m: *m,
                            k: *k,
                        });
                    }
                }
            }
        }
    }
    Ok(points)
}

fn evaluate(t: Target, route: Route, p: &Point, ctx: &PrecisionContext) -> crate::Result<EvalResult> {
    let prec = ctx.precision_bits();
    match t {
        Target::ZetaZ => {
            let s = p.s_complex(prec);
            match route {
                Route::Gamma => zeta_z_gamma_route(&s, ctx),
                Route::Product => zeta_z_product(&s, ctx),
                Route::Mellin => zeta_z_mellin(&s, ctx),
                _ => zeta_z_closed(&s, ctx),
            }
        }
        Target::Z => big_z(&p.s_complex(prec), ctx),
        Target::RiemannZeta => {
            let s = p.s.as_ref().expect("s checked");
            if p.is_real() && *s == 0 {
                return Ok(EvalResult::exact(Rational::from((-1, 2)), prec, Method::ClosedForm));
            }
            if p.is_real() && *s.denom() == 1 && *s < 0 {
                let m = Integer::from(-s.numer())
                    .to_u32()
                    .ok_or_else(|| ZetaError::Domain(format!("s = {s} is out of range")))?;
                return Ok(EvalResult::exact(euler_zeta_negative(m), prec, Method::ClosedForm));
            }
            let v = riemann_zeta_numeric(&p.s_complex(prec), ctx)?;
            Ok(EvalResult::numeric(v, Method::EulerMaclaurin, true))
        }
        Target::ZetaZDeriv => zeta_z_deriv(&p.s_real(prec), ctx),
        Target::ZetaZn | Target::ZetaZnDirect => {
            let c = DiscreteCircle::new(p.n.expect("n checked"))?;
            if t == Target::ZetaZnDirect || route == Route::Direct {
                return zeta_zn_direct(c, &p.s_complex(prec), ctx);
            }
            match zeta_zn_closed_form(c, p, ctx)? {
                Some(r) => Ok(r),
                None if route == Route::Closed => Err(ZetaError::Domain(format!(
                    "no closed form for ζ_Z/{}Z at s = {}",
                    c.n(),
                    format_rational_input(p.s.as_ref().expect("s checked"))
                ))),
                None => zeta_zn_direct(c, &p.s_complex(prec), ctx),
            }
        }
        Target::Catalan => {
            let c = catalan(p.m.expect("m checked"));
            Ok(EvalResult::exact(Rational::from(c), prec, Method::ClosedForm))
        }
        Target::Bernoulli => Ok(EvalResult::exact(
            bernoulli(p.k.expect("k checked") as usize),
            prec,
            Method::ClosedForm,
        )),
        Target::Volumes => {
            let n = p.n.expect("n checked");
            match route {
                Route::Product => sphere_volume_zproduct(n, ctx),
                _ => sphere_volume_gamma(n, ctx),
            }
        }
    }
}

/// Exact values at integers and the cotangent form at negative half-integers.
fn zeta_zn_closed_form(c: DiscreteCircle, p: &Point, ctx: &PrecisionContext) -> crate::Result<Option<EvalResult>> {
    let s = p.s.as_ref().expect("s checked");
    if !p.is_real() {
        return Ok(None);
    }
    let prec = ctx.precision_bits();
    if *s.denom() == 1 {
        let Some(m) = s.numer().to_i64() else {
            return Ok(None);
        };
        if m <= 0 {
            let v = zeta_zn_negative_int(c, m.unsigned_abs() as u32);
            return Ok(Some(EvalResult::exact(Rational::from(v), prec, Method::ClosedForm)));
        }
        if m <= CLOSED_POLY_CAP as i64 {
            let poly = zeta_zn_closed_poly(m as u32)?;
            return Ok(Some(EvalResult::exact(
                poly.eval_int(c.n() as i64),
                prec,
                Method::ClosedForm,
            )));
        }
        return Ok(None);
    }
    if *s.denom() == 2 && *s < 0 {
        // s = -1/2 - m.
        let m = (Integer::from(-s.numer()) - 1u32) / 2u32;
        if let Some(m) = m.to_u32() {
            return sine_odd_power_sum(c, m, ctx).map(Some);
        }
    }
    Ok(None)
}

fn record(t: Target, route: Route, p: &Point, ctx: &PrecisionContext) -> crate::Result<OutputRecord> {
    let r = evaluate(t, route, p, ctx)?;
    Ok(OutputRecord::from_eval(t.name(), p.inputs(), &r, ctx.output_digits()))
}

fn cmd_eval(p: &PointCommand, ctx: &PrecisionContext, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let points = grid(p, true)?;
    let rec = record(p.target, p.route, &points[0], ctx)?;
    let mut e = Emitter::new(out, format, true);
    e.row(&rec)?;
    e.finish()?;
    Ok(())
}

/// Points are evaluated in parallel a chunk at a time and written in grid order.
fn cmd_sweep(p: &PointCommand, ctx: &PrecisionContext, format: Format, out: &mut dyn Write) -> CliResult<()> {
    const CHUNK: usize = 64;
    let points = grid(p, false)?;
    let mut e = Emitter::new(out, format, false);
    for chunk in points.chunks(CHUNK) {
        let rows: Vec<OutputRecord> = chunk
            .par_iter()
            .map(|pt| {
                record(p.target, p.route, pt, ctx).unwrap_or_else(|err| {
                    OutputRecord::failed(p.target.name(), pt.inputs(), err.kind(), err.to_string())
                })
            })
            .collect();
        for r in &rows {
            e.row(r)?;
        }
    }
    e.finish()?;
    Ok(())
}

impl Row for CheckResult {
    fn header(&self) -> Vec<String> {
        ["suite", "check", "passed", "cases", "max_error", "tolerance", "detail"]
            .map(String::from)
            .to_vec()
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.suite.to_string(),
            self.name.to_string(),
            self.passed.to_string(),
            self.cases.to_string(),
            format!("{:.3e}", self.max_error),
            format!("{:.1e}", self.tolerance),
            self.detail.clone().unwrap_or_default(),
        ]
    }

    fn plain(&self) -> String {
        self.to_string()
    }
}

#[derive(Debug, Serialize)]
struct VerifySummary {
    precision_bits: u32,
    tol: f64,
    passed: usize,
    failed: usize,
    /// Largest error among the checks held to the working tolerance.
    max_error: f64,
}

#[derive(Debug, Serialize)]
struct VerifyReport<'a> {
    checks: &'a [CheckResult],
    summary: VerifySummary,
}

fn cmd_verify(v: &VerifyArgs, ctx: &PrecisionContext, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let name = v.suite.to_possible_value().expect("suite name");
    let suites = Suite::parse_selection(name.get_name())?;
    let opts = VerifyOptions {
        seed: v.seed,
        corrupt_poly: v.corrupt_poly,
    };
    let checks = run_suites(&suites, ctx, &opts);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let tol = ctx.target_tol();
    let summary = VerifySummary {
        precision_bits: ctx.precision_bits(),
        tol,
        passed: checks.len() - failed,
        failed,
        max_error: checks
            .iter()
            .filter(|c| c.tolerance <= 4.0 * tol)
            .map(|c| c.max_error)
            .fold(0.0, f64::max),
    };
    match format {
        Format::Json => {
            let report = VerifyReport {
                checks: &checks,
                summary,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).map_err(io::Error::other)?
            )?;
        }
        Format::Csv => {
            let mut e = Emitter::new(out, format, false);
            for c in &checks {
                e.row(c)?;
            }
            e.finish()?;
        }
        Format::Plain => {
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            writeln!(
                out,
                "summary: {} passed, {} failed; max error {:.3e} (tol {:.1e}, {} bits)",
                summary.passed, summary.failed, summary.max_error, tol, summary.precision_bits
            )?;
        }
    }
    if failed > 0 {
        return Err(CliError::VerifyFailed(failed));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ExtractRecord {
    s: String,
    n_min: u32,
    n_max: u32,
    points: usize,
    estimate: String,
    reference: String,
    abs_error: String,
    relative_residual: String,
}

impl Row for ExtractRecord {
    fn header(&self) -> Vec<String> {
        [
            "s",
            "n_min",
            "n_max",
            "points",
            "estimate",
            "reference",
            "abs_error",
            "relative_residual",
        ]
        .map(String::from)
        .to_vec()
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.s.clone(),
            self.n_min.to_string(),
            self.n_max.to_string(),
            self.points.to_string(),
            self.estimate.clone(),
            self.reference.clone(),
            self.abs_error.clone(),
            self.relative_residual.clone(),
        ]
    }

    fn plain(&self) -> String {
        format!(
            "zeta({}) from n in [{}, {}] ({} points)\n  estimate  {}\n  reference {}\n  abs error {}\n  residual  {}",
            self.s,
            self.n_min,
            self.n_max,
            self.points,
            self.estimate,
            self.reference,
            self.abs_error,
            self.relative_residual
        )
    }
}

fn cmd_extract(x: &ExtractArgs, ctx: &PrecisionContext, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let s = crate::numerics::rational::parse_rational(&x.s).map_err(|e| usage(format!("bad --s '{}': {e}", x.s)))?;
    let r = extract_zeta(&HPReal::from_rational(ctx.precision_bits(), &s), x.n_min, x.n_max, ctx)?;
    let digits = ctx.output_digits();
    let rec = ExtractRecord {
        s: format_rational_input(&s),
        n_min: x.n_min,
        n_max: x.n_max,
        points: r.n_grid.len(),
        estimate: format_decimal(r.estimate.value(), digits),
        reference: format_decimal(r.reference.value(), digits),
        abs_error: format!("{:.3e}", r.abs_error),
        relative_residual: format!("{:.3e}", r.relative_residual),
    };
    let mut e = Emitter::new(out, format, true);
    e.row(&rec)?;
    e.finish()?;
    Ok(())
}

fn cmd_volumes(v: &VolumesArgs, ctx: &PrecisionContext, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let ns = RangeSpec::parse(&v.n)
        .and_then(|r| r.integer_values("n"))
        .map_err(usage)?;
    let routes: &[Route] = match v.route {
        VolumeRouteArg::Gamma => &[Route::Gamma],
        VolumeRouteArg::Product => &[Route::Product],
        VolumeRouteArg::Both => &[Route::Gamma, Route::Product],
    };
    let rows = ns
        .iter()
        .flat_map(|&n| routes.iter().map(move |&r| (n, r)))
        .map(|(n, r)| {
            let p = Point {
                n: Some(n),
                ..Default::default()
            };
            record(Target::Volumes, r, &p, ctx)
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let mut e = Emitter::new(out, format, false);
    for r in &rows {
        e.row(r)?;
    }
    e.finish()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct PolyRecord {
    m: u32,
    polynomial: String,
    /// Coefficients of n^0, n^1, ..., as exact rationals.
    coefficients: Vec<String>,
}

impl Row for PolyRecord {
    fn header(&self) -> Vec<String> {
        ["m", "polynomial", "coefficients"].map(String::from).to_vec()
    }

    fn fields(&self) -> Vec<String> {
        vec![self.m.to_string(), self.polynomial.clone(), self.coefficients.join(" ")]
    }

    fn plain(&self) -> String {
        format!("P_{}(n) = {}", self.m, self.polynomial)
    }
}

fn cmd_poly(p: &PolyArgs, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let poly = zeta_zn_closed_poly(p.m)?;
    let rec = PolyRecord {
        m: p.m,
        polynomial: poly.to_string(),
        coefficients: poly.coeffs().iter().map(|c| c.to_string()).collect(),
    };
    let mut e = Emitter::new(out, format, true);
    e.row(&rec)?;
    e.finish()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["zetakit"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn closed_forms_for_the_discrete_circle() {
        let (code, out, _) = run_args(&["eval", "zeta-zn", "--n=3", "--s=1"]);
        assert_eq!(code, 0);
        assert!(out.contains("= 2/3 "), "{out}");
        let (_, out, _) = run_args(&["eval", "zeta-zn", "--n=3", "--s=-1"]);
        assert!(out.contains("= 6 "), "{out}");
    }

    #[test]
    fn argument_checks() {
        assert_eq!(run_args(&["eval", "zeta-zn", "--s=1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["eval", "zeta-z", "--s=1", "--n=3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["eval", "zeta-z", "--s=0:1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["eval", "catalan", "--m=3", "--route=mellin"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["eval", "zeta-z", "--s=1/2"]).0, EXIT_DOMAIN);
    }
}
