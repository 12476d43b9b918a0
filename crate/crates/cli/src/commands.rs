//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use shortint::interval_lab::{
    chebotarev_empirical, gauss_census, large_q_demo, moebius_battery, morse_density_scan, IntervalLab,
};
use shortint::morse_galois::{bad_set, classify_mu_cancellation, critical_data, is_morse};
use shortint::{make_extension, make_prime_field, FieldCtx, Poly, Rational};

use crate::parse::{parse_monic, parse_phi, parse_poly, parse_rational, parse_shifts};
use crate::report::{self, document};
use crate::suite::{run_suite, SuiteOptions};
use crate::tolerances::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "shortint", version, about = "Class-function statistics over very short intervals f(x) + a")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Extension degree l, so q = p^l.
    #[arg(long, default_value_t = 1)]
    pub ext: usize,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field order, modulus and generator.
    FieldInfo {
        #[command(flatten)]
        common: Common,
    },
    /// Factor a polynomial.
    Factor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
    },
    /// Möbius cancellation verdict, optionally checked against the sums.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        /// Shifts for the Chowla sum; runs the sums when given.
        #[arg(long)]
        shifts: Option<String>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        tolerance_file: Option<PathBuf>,
    },
    /// Morse test, critical values and bad shifts.
    Morse {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
    },
    /// Σ_a φ(f + a).
    Sum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long)]
        phi: String,
        /// Expected density, used when f is not Morse.
        #[arg(long)]
        constant: Option<String>,
    },
    /// Σ_a Π_i φ_i(f + h_i + a).
    Correlate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long)]
        shifts: String,
        /// One per shift, in order.
        #[arg(long, required = true)]
        phi: Vec<String>,
        /// Comma-separated single densities, one per shift.
        #[arg(long)]
        constants: Option<String>,
    },
    /// Cycle-type frequencies against 1/z.
    Chebotarev {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "0")]
        shifts: String,
    },
    /// Count monic irreducibles by enumeration.
    Gauss {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
    },
    /// The s for which f + s·x is not Morse.
    ScanMorse {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
    },
    /// Single Möbius sums against the p-fold Chowla sum for x^3 + s·x.
    LargeQDemo {
        #[arg(long, default_value_t = 5)]
        p: u64,
        /// Extension degrees.
        #[arg(long, default_value = "4,5")]
        l: String,
        #[arg(long)]
        tolerance_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Run the full battery of checks.
    #[command(name = "paper-suite")]
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Smaller primes.
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        tolerance_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// The computation itself failed: exit 1.
    Compute(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn compute<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Compute(e.to_string())
}

struct Output {
    doc: Value,
    format: OutFormat,
    /// Lines for stderr, e.g. the suite table.
    notes: Vec<String>,
}

fn field(p: u64, ext: usize) -> Result<FieldCtx, Failure> {
    let base = make_prime_field(p).map_err(usage)?;
    if ext == 1 {
        Ok(base)
    } else {
        make_extension(&base, ext, 0).map_err(usage)
    }
}

fn base_params(c: &Common) -> Value {
    json!({ "p": c.p, "ext": c.ext, "seed": c.seed })
}

fn monic(text: &str, ctx: &FieldCtx) -> Result<Poly, Failure> {
    parse_monic(text, ctx, 2).map_err(usage)
}

fn output(doc: Value, format: OutFormat) -> Output {
    Output { doc, format, notes: Vec::new() }
}

fn field_info(c: &Common) -> Result<Output, Failure> {
    let ctx = field(c.p, c.ext)?;
    let modulus = if ctx.is_prime_field() {
        Value::Null
    } else {
        let base = make_prime_field(c.p).map_err(usage)?;
        let m = Poly::new(&base, ctx.modulus().iter().map(|&a| base.from_u64(a)).collect());
        Value::String(m.to_string())
    };
    let rep = json!({
        "q": ctx.order().to_string(),
        "modulus": modulus,
        "generator": ctx.generator().to_string(),
    });
    Ok(output(document("field-info", base_params(c), rep, None), c.out))
}

fn factor(c: &Common, f: &str) -> Result<Output, Failure> {
    let ctx = field(c.p, c.ext)?;
    let g = parse_poly(f, &ctx).map_err(usage)?;
    if g.degree_or_zero() == 0 {
        return Err(Failure::Usage("expected a polynomial of degree at least 1".into()));
    }
    let fac = g.factor(c.seed).map_err(compute)?;
    let factors: Vec<Value> = fac
        .factors
        .iter()
        .map(|(h, e)| json!({"factor": h.to_string(), "degree": h.degree_or_zero(), "multiplicity": e}))
        .collect();
    let cycle_type = if fac.is_squarefree() && g.degree_or_zero() > 0 {
        Some(g.degree_pattern().map_err(compute)?.to_string())
    } else {
        None
    };
    let rep = json!({
        "unit": fac.unit.to_string(),
        "factors": factors,
        "omega": fac.omega(),
        "squarefree": fac.is_squarefree(),
        "cycle_type": cycle_type,
    });
    let mut params = base_params(c);
    params["f"] = json!(g.to_string());
    Ok(output(document("factor", params, rep, None), c.out))
}

fn classify(
    c: &Common,
    f: &str,
    shifts: Option<&str>,
    tolerance: Option<f64>,
    tolerance_file: Option<&std::path::Path>,
) -> Result<Output, Failure> {
    let ctx = field(c.p, c.ext)?;
    let g = monic(f, &ctx)?;
    let mut params = base_params(c);
    params["f"] = json!(g.to_string());
    let Some(shifts) = shifts else {
        let v = classify_mu_cancellation(&g).map_err(compute)?;
        return Ok(output(document("classify", params, json!({"verdict": report::verdict(&v)}), None), c.out));
    };
    let h = parse_shifts(shifts, &ctx).map_err(usage)?;
    let tol = match tolerance {
        Some(t) => t,
        None => {
            let t = Tolerances::load(tolerance_file).map_err(usage)?;
            let d = g.degree_or_zero();
            t.battery(d).ok_or_else(|| Failure::Usage(format!("no calibrated tolerance for degree {d}; pass --tolerance")))?
        }
    };
    params["shifts"] = json!(h.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    params["tolerance"] = json!(tol);
    let b = moebius_battery(&g, &h, tol, c.workers).map_err(compute)?;
    let rep = json!({
        "verdict": report::verdict(&b.verdict),
        "single": report::experiment(&b.single),
        "chowla": report::experiment(&b.chowla),
    });
    Ok(output(document("classify", params, rep, Some(true)), c.out))
}

fn morse(c: &Common, f: &str) -> Result<Output, Failure> {
    let ctx = field(c.p, c.ext)?;
    let g = monic(f, &ctx)?;
    let diag = is_morse(&g).map_err(compute)?;
    let mut rep = json!({ "morse": report::morse(&diag) });
    match critical_data(&g) {
        Ok(cd) => {
            rep["splitting_degree"] = json!(cd.ext_ctx.degree());
            rep["critical_points"] = json!(cd
                .points
                .iter()
                .map(|(x, m)| json!({"point": x.to_string(), "multiplicity": m}))
                .collect::<Vec<_>>());
            rep["critical_values"] = json!(cd.distinct_values().iter().map(|x| x.to_string()).collect::<Vec<_>>());
            let b = bad_set(&g).map_err(compute)?;
            rep["bad_set"] = json!(b.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        }
        Err(e) => rep["critical_data_unavailable"] = json!(e.to_string()),
    }
    let mut params = base_params(c);
    params["f"] = json!(g.to_string());
    Ok(output(document("morse", params, rep, None), c.out))
}

fn sum(c: &Common, f: &str, phi: &str, constant: Option<&str>) -> Result<Output, Failure> {
    let ctx = field(c.p, c.ext)?;
    let g = monic(f, &ctx)?;
    let phi = parse_phi(phi, g.degree_or_zero()).map_err(usage)?;
    let constants = constant.map(parse_rational).transpose().map_err(usage)?.map(|r| vec![r]);
    let lab = IntervalLab::new(&g, c.workers).map_err(compute)?;
    let rep = lab
        .correlation_sum(&[ctx.zero()], std::slice::from_ref(&phi), constants.as_deref())
        .map_err(compute)?;
    let mut params = base_params(c);
    params["f"] = json!(g.to_string());
    params["phi"] = json!(phi.name());
    Ok(output(document("sum", params, report::experiment(&rep), None), c.out))
}

fn correlate(c: &Common, f: &str, shifts: &str, phis: &[String], constants: Option<&str>) -> Result<Output, Failure> {
    let ctx = field(c.p, c.ext)?;
    let g = monic(f, &ctx)?;
    let h = parse_shifts(shifts, &ctx).map_err(usage)?;
    if h.len() != phis.len() {
        return Err(Failure::Usage(format!("{} shifts but {} --phi values", h.len(), phis.len())));
    }
    let d = g.degree_or_zero();
    let phis = phis.iter().map(|s| parse_phi(s, d)).collect::<Result<Vec<_>, _>>().map_err(usage)?;
    let constants: Option<Vec<Rational>> = constants
        .map(|s| s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>())
        .transpose()
        .map_err(usage)?;
    let lab = IntervalLab::new(&g, c.workers).map_err(compute)?;
    let rep = lab.correlation_sum(&h, &phis, constants.as_deref()).map_err(|e| match e {
        shortint::interval_lab::LabError::InvalidSpec(m) => Failure::Usage(m),
        other => compute(other),
    })?;
    let mut params = base_params(c);
    params["f"] = json!(g.to_string());
    params["shifts"] = json!(h.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    params["phi"] = json!(phis.iter().map(|p| p.name().to_string()).collect::<Vec<_>>());
    Ok(output(document("correlate", params, report::experiment(&rep), None), c.out))
}

fn chebotarev(c: &Common, f: &str, shifts: &str) -> Result<Output, Failure> {
    let ctx = field(c.p, c.ext)?;
    let g = monic(f, &ctx)?;
    let h = parse_shifts(shifts, &ctx).map_err(usage)?;
    let rep = chebotarev_empirical(&g, &h, c.workers).map_err(compute)?;
    let mut params = base_params(c);
    params["f"] = json!(g.to_string());
    params["shifts"] = json!(h.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    Ok(output(document("chebotarev", params, report::chebotarev(&rep), None), c.out))
}

fn gauss(p: u64, d: u32, out: OutFormat) -> Result<Output, Failure> {
    if d == 0 {
        return Err(Failure::Usage("--d must be at least 1".into()));
    }
    make_prime_field(p).map_err(usage)?;
    let (enumerated, formula) = gauss_census(p, d).map_err(usage)?;
    let rep = json!({"enumerated": enumerated, "formula": formula});
    Ok(output(document("gauss", json!({"p": p, "d": d}), rep, Some(enumerated == formula)), out))
}

fn scan_morse(c: &Common, f: &str) -> Result<Output, Failure> {
    let ctx = field(c.p, c.ext)?;
    let g = monic(f, &ctx)?;
    let scan = morse_density_scan(&g, c.workers).map_err(compute)?;
    let mut params = base_params(c);
    params["f"] = json!(g.to_string());
    Ok(output(document("scan-morse", params, report::morse_scan(&scan), None), c.out))
}

fn large_q(p: u64, l: &str, tolerance_file: Option<&std::path::Path>, out: OutFormat, workers: usize) -> Result<Output, Failure> {
    let ls = l
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("bad extension list '{l}'")))?;
    let tol = Tolerances::load(tolerance_file).map_err(usage)?.large_q.single;
    let rows = large_q_demo(p, &ls, tol, workers).map_err(compute)?;
    let pass = rows.iter().all(|r| r.passed());
    let rep = json!({ "rows": rows.iter().map(report::large_q_row).collect::<Vec<_>>() });
    Ok(output(document("large-q-demo", json!({"p": p, "l": ls, "tolerance": tol}), rep, Some(pass)), out))
}

fn suite_command(
    seed: u64,
    workers: usize,
    quick: bool,
    tolerance_file: Option<&std::path::Path>,
    out: OutFormat,
) -> Result<Output, Failure> {
    let tolerances = Tolerances::load(tolerance_file).map_err(usage)?;
    let rep = run_suite(&SuiteOptions { seed, workers, quick, tolerances });
    let notes = rep.checks.iter().map(|c| c.line()).collect();
    let doc = document("paper-suite", json!({"seed": seed, "quick": quick}), rep.to_json(), Some(rep.pass()));
    Ok(Output { doc, format: out, notes })
}

fn dispatch(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::FieldInfo { common } => field_info(common),
        Command::Factor { common, f } => factor(common, f),
        Command::Classify { common, f, shifts, tolerance, tolerance_file } => {
            classify(common, f, shifts.as_deref(), *tolerance, tolerance_file.as_deref())
        }
        Command::Morse { common, f } => morse(common, f),
        Command::Sum { common, f, phi, constant } => sum(common, f, phi, constant.as_deref()),
        Command::Correlate { common, f, shifts, phi, constants } => {
            correlate(common, f, shifts, phi, constants.as_deref())
        }
        Command::Chebotarev { common, f, shifts } => chebotarev(common, f, shifts),
        Command::Gauss { p, d, out } => gauss(*p, *d, *out),
        Command::ScanMorse { common, f } => scan_morse(common, f),
        Command::LargeQDemo { p, l, tolerance_file, out, workers } => {
            large_q(*p, l, tolerance_file.as_deref(), *out, *workers)
        }
        Command::Suite { seed, workers, quick, tolerance_file, out } => {
            suite_command(*seed, *workers, *quick, tolerance_file.as_deref(), *out)
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns what
/// should be printed together with the exit code: 0 on success, 1 when a
/// computation or a check fails, 2 on bad usage.
pub fn run_command<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => {
            let pass = out.doc.get("pass").and_then(Value::as_bool).unwrap_or(true);
            let mut stdout = match out.format {
                OutFormat::Json => serde_json::to_string_pretty(&out.doc).expect("json"),
                OutFormat::Csv => report::to_csv(&out.doc),
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            let mut stderr = out.notes.join("\n");
            if !stderr.is_empty() {
                stderr.push('\n');
            }
            Outcome { code: if pass { 0 } else { 1 }, stdout, stderr }
        }
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Compute(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

