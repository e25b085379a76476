//! Batch front-end for `dulac`. [`run`] parses arguments, dispatches one
//! job and returns the process exit code:
//!
//! * `0`: computed, and every checked property holds;
//! * `1`: computed, but a checked property fails;
//! * `2`: invalid input or arguments;
//! * `3`: numerical failure (integration, small divisor).
//!
//! Points (`--z`) and maps given to `koenigs` and `rigidity` are in the
//! caller's coordinates. Normal forms are reported in the internal
//! coordinates, ordered by descending `Re alpha`.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dulac::fixtures::{self, Fixture, FixtureParams};
use dulac::flow::{self, OdeOptions};
use dulac::koenigs::{self, KoenigsOptions, Verdict};
use dulac::normalform::{self, NormalFormOptions, NormalFormResult};
use dulac::rigidity::{self, CoincidenceVerdict, Grid, LinearElementOptions, LinearElementVerdict};
use dulac::{spectrum, Complex64, PolyMap, VectorField};
use serde::Serialize;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book {}

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "dulac", version, about = "Normal forms, Koenigs limits and rigidity checks for dilation-type semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distortion index, resonances and pure real resonances of the linear part.
    Spectrum {
        #[command(flatten)]
        io: Io,
        /// Resonance tolerance, relative to max |alpha|.
        #[arg(long, default_value_t = spectrum::DEFAULT_TOL)]
        tol: f64,
    },
    /// Formal conjugation to the resonant normal form.
    Normalform {
        #[command(flatten)]
        io: Io,
        /// Truncation degree (>= 2).
        #[arg(long, default_value_t = normalform::DEFAULT_DEGREE)]
        degree: usize,
        /// Resonance tolerance, relative to max |alpha|.
        #[arg(long, default_value_t = spectrum::DEFAULT_TOL)]
        tol: f64,
        /// Keep near-resonant terms instead of failing.
        #[arg(long)]
        force_keep: bool,
    },
    /// Integrate the flow from one point; `.csv` output paths get CSV.
    Flow {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        ode: Ode,
        /// Start point as interleaved re,im pairs.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Final time.
        #[arg(long, default_value_t = 1.0)]
        t_max: f64,
        /// Sample spacing (defaults to t-max, giving the endpoints only).
        #[arg(long)]
        dt: Option<f64>,
        /// Emit the closed-form flow of a resonant triangular field instead.
        #[arg(long)]
        closed_form: bool,
        /// Resonance tolerance for --closed-form.
        #[arg(long, default_value_t = spectrum::DEFAULT_TOL)]
        tol: f64,
    },
    /// Samples of e^{-At} Q(phi_t(z)) and their verdict. A second input is
    /// the precomposition Q (a map); exit 1 unless the limit converges.
    Koenigs {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        ode: Ode,
        /// Start point as interleaved re,im pairs.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 40.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.25)]
        dt: f64,
        /// Convergence tolerance on successive samples.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Rigidity checks.
    Rigidity {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        ode: Ode,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Time of the element that is tested (linear-element) or whose
        /// linear part is tested (unique, for a field input).
        #[arg(long)]
        t0: Option<f64>,
        /// Time of the second semigroup's element (coincide).
        #[arg(long, default_value_t = 1.0)]
        s0: f64,
        /// Tolerance: linearity threshold (linear-element), resonance
        /// tolerance (unique), deviation bound (commute, coincide).
        #[arg(long)]
        tol: Option<f64>,
        /// Seed for a random point grid instead of the Halton grid.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print a built-in fixture as JSON, or the list of names.
    Fixtures {
        /// Fixture name; omit to list the names.
        #[arg(long)]
        fixture: Option<String>,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    /// Does linearity of phi_{t0} propagate? (one field)
    LinearElement,
    /// Do two semigroups with the same linear part coincide? (two fields)
    Coincide,
    /// Is a linear map (or e^{A t0}) uniquely linearizable? (map or field)
    Unique,
    /// Does a map commute with the flow? (field, then map)
    Commute,
}

#[derive(Args, Debug)]
struct Io {
    /// Input JSON (a field or a map); repeatable.
    #[arg(long)]
    input: Vec<PathBuf>,
    /// Built-in fixture used as an input after the files; repeatable.
    #[arg(long)]
    fixture: Vec<String>,
    #[command(flatten)]
    params: Params,
    /// Output path (stdout if absent).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Params {
    /// Fixture coefficient `a` as re[,im].
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    a: String,
    /// Fixture exponent `m` (example1).
    #[arg(long, default_value_t = 2)]
    m: u32,
    /// Fixture eigenvalue `alpha1` as re[,im] (example1).
    #[arg(long, allow_hyphen_values = true, default_value = "-1")]
    alpha1: String,
}

#[derive(Args, Debug)]
struct Ode {
    #[arg(long, default_value_t = 1e-10)]
    rtol: f64,
    #[arg(long, default_value_t = 1e-12)]
    atol: f64,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Lib(dulac::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) => f.write_str(s),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<dulac::Error> for CliError {
    fn from(e: dulac::Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Parse `argv` (including the program name), run the job, and return the
/// exit code. Reports go to `out` unless `--output` is given; diagnostics
/// go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_INPUT
            }
        }
    }
}

enum Object {
    Field(VectorField),
    Map(PolyMap),
}

impl Object {
    fn field(self, what: &str) -> CliResult<VectorField> {
        match self {
            Object::Field(f) => Ok(f),
            Object::Map(_) => Err(input_err(format!("{what} must be a vector field, got a map"))),
        }
    }

    fn map(self, what: &str) -> CliResult<PolyMap> {
        match self {
            Object::Map(m) => Ok(m),
            Object::Field(_) => Err(input_err(format!("{what} must be a map, got a vector field"))),
        }
    }
}

fn parse_complex(s: &str, what: &str) -> CliResult<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| -> CliResult<f64> {
        p.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| input_err(format!("--{what}: '{p}' is not a finite number")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(input_err(format!("--{what}: expected re or re,im"))),
    }
}

fn parse_point(s: &str, n: usize) -> CliResult<Vec<Complex64>> {
    let xs: Vec<f64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| input_err(format!("--z: '{}' is not a finite number", p.trim())))
        })
        .collect::<CliResult<_>>()?;
    if xs.len() != 2 * n {
        return Err(input_err(format!(
            "--z: expected {} numbers (re,im for each of {n} coordinates), got {}",
            2 * n,
            xs.len()
        )));
    }
    Ok(xs.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect())
}

fn fixture_params(p: &Params) -> CliResult<FixtureParams> {
    if p.m < 2 {
        return Err(input_err("--m must be >= 2"));
    }
    Ok(FixtureParams {
        a: parse_complex(&p.a, "a")?,
        m: p.m,
        alpha1: parse_complex(&p.alpha1, "alpha1")?,
    })
}

fn load_fixture(name: &str, params: &FixtureParams) -> CliResult<Object> {
    if name == "example1" && params.alpha1.re >= 0.0 {
        return Err(input_err("--alpha1 must have negative real part"));
    }
    match fixtures::by_name(name, params) {
        Some(Fixture::Field(f)) => Ok(Object::Field(f)),
        Some(Fixture::Map(m)) => Ok(Object::Map(m)),
        None => Err(input_err(format!(
            "unknown fixture '{name}' (known: {})",
            fixtures::NAMES.join(", ")
        ))),
    }
}

fn load_file(path: &Path) -> CliResult<Object> {
    let text = fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    let is_field = value.get("alpha").is_some();
    let parsed = if is_field {
        serde_json::from_value(value).map(Object::Field)
    } else {
        serde_json::from_value(value).map(Object::Map)
    };
    parsed.map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load_all(io: &Io) -> CliResult<Vec<Object>> {
    let params = fixture_params(&io.params)?;
    let mut objects = io.input.iter().map(|p| load_file(p)).collect::<CliResult<Vec<_>>>()?;
    for name in &io.fixture {
        objects.push(load_fixture(name, &params)?);
    }
    Ok(objects)
}

fn expect_inputs(io: &Io, count: usize, what: &str) -> CliResult<Vec<Object>> {
    let objects = load_all(io)?;
    if objects.len() != count {
        return Err(input_err(format!(
            "expected {count} input(s) ({what}), got {}",
            objects.len()
        )));
    }
    Ok(objects)
}

fn positive(x: f64, flag: &str) -> CliResult<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(input_err(format!("--{flag} must be a positive finite number, got {x}")))
    }
}

fn ode_options(o: &Ode) -> CliResult<OdeOptions> {
    Ok(OdeOptions {
        rtol: positive(o.rtol, "rtol")?,
        atol: positive(o.atol, "atol")?,
        ..OdeOptions::default()
    })
}

/// A map given in caller coordinates, moved to the field's internal ones.
fn to_internal_map(f: &VectorField, m: PolyMap) -> CliResult<PolyMap> {
    if m.dimension() != f.dimension() {
        return Err(input_err(format!(
            "map has dimension {}, field has {}",
            m.dimension(),
            f.dimension()
        )));
    }
    Ok(m.permuted(f.permutation()))
}

fn emit(text: &str, output: &Option<PathBuf>, out: &mut dyn Write) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| input_err(format!("{}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| input_err(format!("stdout: {e}"))),
    }
}

fn emit_json<T: Serialize>(value: &T, output: &Option<PathBuf>, out: &mut dyn Write) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| input_err(e.to_string()))?;
    text.push('\n');
    emit(&text, output, out)
}

fn wants_csv(output: &Option<PathBuf>) -> bool {
    output
        .as_ref()
        .and_then(|p| p.extension())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn note_reordering(f: &VectorField, err: &mut dyn Write) {
    if f.permutation().iter().enumerate().any(|(i, &o)| i != o) {
        let order: Vec<usize> = f.permutation().iter().map(|o| o + 1).collect();
        let _ = writeln!(err, "note: internal coordinate i is input coordinate order[i], order = {order:?}");
    }
}

#[derive(Serialize)]
struct NormalFormReport<'a> {
    /// Input coordinate (1-based) of each internal coordinate.
    order: Vec<usize>,
    normal_form: &'a NormalFormResult,
}

#[derive(Serialize)]
struct UniqueReport {
    beta: Vec<Complex64>,
    #[serde(flatten)]
    result: rigidity::UniqueLinearizability,
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Spectrum { io, tol } => {
            positive(tol, "tol")?;
            let f = expect_inputs(&io, 1, "a vector field")?.remove(0).field("input")?;
            let alpha = f.to_caller(f.alpha());
            emit_json(&spectrum::analyze(&alpha, tol)?, &io.output, out)?;
            Ok(EXIT_OK)
        }
        Command::Normalform {
            io,
            degree,
            tol,
            force_keep,
        } => {
            if degree < 2 {
                return Err(input_err("--degree must be >= 2"));
            }
            positive(tol, "tol")?;
            let f = expect_inputs(&io, 1, "a vector field")?.remove(0).field("input")?;
            note_reordering(&f, err);
            let opts = NormalFormOptions {
                degree,
                tol,
                force_keep,
                ..Default::default()
            };
            let result = normalform::solve(&f, &opts)?;
            for r in &result.forced {
                let _ = writeln!(err, "warning: kept near-resonant term in component {} at {}", r.target + 1, r.k);
            }
            let report = NormalFormReport {
                order: f.permutation().iter().map(|o| o + 1).collect(),
                normal_form: &result,
            };
            emit_json(&report, &io.output, out)?;
            Ok(EXIT_OK)
        }
        Command::Flow {
            io,
            ode,
            z,
            t_max,
            dt,
            closed_form,
            tol,
        } => {
            let o = ode_options(&ode)?;
            let f = expect_inputs(&io, 1, "a vector field")?.remove(0).field("input")?;
            if closed_form {
                positive(tol, "tol")?;
                note_reordering(&f, err);
                emit_json(&flow::triangular_flow(&f, tol)?, &io.output, out)?;
                return Ok(EXIT_OK);
            }
            let z0 = f.to_internal(&parse_point(&z, f.dimension())?);
            positive(t_max, "t-max")?;
            let dt = positive(dt.unwrap_or(t_max), "dt")?;
            let steps = (t_max / dt).round() as usize;
            let mut times: Vec<f64> = (0..=steps).map(|i| (i as f64 * dt).min(t_max)).collect();
            if *times.last().expect("nonempty") < t_max {
                times.push(t_max);
            }
            times.dedup();
            let mut tr = flow::integrate_at(&f, &z0, &times, &o)?;
            tr.points = tr.points.iter().map(|p| f.to_caller(p)).collect();
            if wants_csv(&io.output) {
                emit(&tr.to_csv(), &io.output, out)?;
            } else {
                emit_json(&tr, &io.output, out)?;
            }
            Ok(EXIT_OK)
        }
        Command::Koenigs {
            io,
            ode,
            z,
            t_max,
            dt,
            tol,
        } => {
            let o = KoenigsOptions {
                t_max: positive(t_max, "t-max")?,
                dt: positive(dt, "dt")?,
                tol: positive(tol, "tol")?,
                ode: ode_options(&ode)?,
            };
            if dt > t_max {
                return Err(input_err("--dt must not exceed --t-max"));
            }
            let mut objects = load_all(&io)?;
            if objects.is_empty() || objects.len() > 2 {
                return Err(input_err("expected a vector field and optionally a precomposition map"));
            }
            let q = if objects.len() == 2 { Some(objects.remove(1).map("second input")?) } else { None };
            let f = objects.remove(0).field("first input")?;
            let z0 = f.to_internal(&parse_point(&z, f.dimension())?);
            let mut r = match q {
                Some(q) => koenigs::limit_with_precomposition(&f, &to_internal_map(&f, q)?, &z0, &o)?,
                None => koenigs::limit(&f, &z0, &o)?,
            };
            r.samples = r.samples.iter().map(|s| f.to_caller(s)).collect();
            r.limit = r.limit.map(|l| f.to_caller(&l));
            if wants_csv(&io.output) {
                emit(&r.to_csv(), &io.output, out)?;
            } else {
                emit_json(&r, &io.output, out)?;
            }
            let _ = writeln!(err, "verdict: {:?}", r.verdict);
            Ok(if r.verdict == Verdict::Converged { EXIT_OK } else { EXIT_PROPERTY_FAILED })
        }
        Command::Rigidity {
            io,
            ode,
            mode,
            t0,
            s0,
            tol,
            seed,
        } => {
            let o = ode_options(&ode)?;
            let tol = tol.map(|t| positive(t, "tol")).transpose()?;
            let grid = |n: usize| match seed {
                Some(s) => Grid::seeded(n, s),
                None => Grid::standard(n),
            };
            match mode {
                Mode::LinearElement => {
                    let t0 = positive(t0.ok_or_else(|| input_err("--t0 is required"))?, "t0")?;
                    let f = expect_inputs(&io, 1, "a vector field")?.remove(0).field("input")?;
                    let opts = LinearElementOptions {
                        threshold: tol.unwrap_or(rigidity::LINEARITY_THRESHOLD),
                        ..Default::default()
                    };
                    let r = rigidity::linear_element_check(&f, t0, &opts)?;
                    emit_json(&r, &io.output, out)?;
                    let _ = writeln!(err, "verdict: {:?}", r.verdict);
                    Ok(match r.verdict {
                        LinearElementVerdict::AllLinear
                        | LinearElementVerdict::Propagated
                        | LinearElementVerdict::ElementNonlinear => EXIT_OK,
                        _ => EXIT_PROPERTY_FAILED,
                    })
                }
                Mode::Coincide => {
                    let mut objects = expect_inputs(&io, 2, "two vector fields")?;
                    let f2 = objects.remove(1).field("second input")?;
                    let f1 = objects.remove(0).field("first input")?;
                    positive(s0, "s0")?;
                    let r = rigidity::semigroups_coincide(&f1, &f2, s0, &grid(f1.dimension()), tol.unwrap_or(1e-8), &o)?;
                    emit_json(&r, &io.output, out)?;
                    let _ = writeln!(err, "verdict: {:?}", r.verdict);
                    Ok(if r.verdict == CoincidenceVerdict::Coincide { EXIT_OK } else { EXIT_PROPERTY_FAILED })
                }
                Mode::Unique => {
                    let beta = match expect_inputs(&io, 1, "a linear map or a vector field")?.remove(0) {
                        Object::Map(m) => {
                            let diagonal = m.terms().iter().all(|t| t.k.degree() == 1 && t.k.get(t.component) == 1);
                            if !diagonal {
                                return Err(input_err("unique mode needs a diagonal linear map"));
                            }
                            m.linear_diagonal()
                        }
                        Object::Field(f) => {
                            let t0 = positive(t0.ok_or_else(|| input_err("--t0 is required for a field input"))?, "t0")?;
                            f.to_caller(f.alpha()).iter().map(|a| (a * t0).exp()).collect()
                        }
                    };
                    let result = rigidity::unique_linearizability(&beta, tol.unwrap_or(spectrum::DEFAULT_TOL))?;
                    let unique = result.uniquely_linearizable;
                    emit_json(&UniqueReport { beta, result }, &io.output, out)?;
                    Ok(if unique { EXIT_OK } else { EXIT_PROPERTY_FAILED })
                }
                Mode::Commute => {
                    let mut objects = expect_inputs(&io, 2, "a vector field and a map")?;
                    let psi = objects.remove(1).map("second input")?;
                    let f = objects.remove(0).field("first input")?;
                    let psi = to_internal_map(&f, psi)?;
                    let mut g = grid(f.dimension());
                    let mut r = rigidity::check_commutation(&psi, &f, &g, tol.unwrap_or(1e-8), &o)?;
                    g.z = g.z.iter().map(|z| f.to_caller(z)).collect();
                    r.grid = g;
                    emit_json(&r, &io.output, out)?;
                    Ok(if r.passed { EXIT_OK } else { EXIT_PROPERTY_FAILED })
                }
            }
        }
        Command::Fixtures { fixture, params, output } => {
            let p = fixture_params(&params)?;
            match &fixture {
                None => emit(&format!("{}\n", fixtures::NAMES.join("\n")), &output, out)?,
                Some(name) => match load_fixture(name, &p)? {
                    Object::Field(f) => emit_json(&f, &output, out)?,
                    Object::Map(m) => emit_json(&m, &output, out)?,
                },
            }
            Ok(EXIT_OK)
        }
    }
}
