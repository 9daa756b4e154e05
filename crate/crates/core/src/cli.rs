//! Command-line front end.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 usage
//! or parse error, 3 computation error.

use std::io::{self, Read, Write};

use clap::{Parser, Subcommand};

use crate::error::{NumericError, Sl2Error, VariationalError};
use crate::expr::{Atom, Expr};
use crate::hierarchy::{builtin, HierarchyId};
use crate::jet::{jet_order, total_derivative};
use crate::numeric::{derive_ode, eval, integrate_rk4, monitor, JetPoint};
use crate::parse::parse_expr;
use crate::render::{render, RenderMode};
use crate::sl2::sl2_residues;
use crate::variational::{euler_lagrange, extract_gauge, is_null, jacobi};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "varjet",
    version,
    about = "Exact variational calculus for higher-derivative Lagrangians"
)]
struct Cli {
    /// Output format for expressions.
    #[arg(long, global = true, value_enum, default_value = "canonical")]
    format: RenderMode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical form.
    Simplify { expr: Option<String> },
    /// Total time derivative, applied K times.
    Dt {
        #[arg(short, default_value_t = 1)]
        k: u32,
        expr: Option<String>,
    },
    /// Euler-Lagrange expression.
    El { expr: Option<String> },
    /// Jacobi integral.
    Jacobi { expr: Option<String> },
    /// Print "null" (exit 0) or "not-null" (exit 1).
    NullCheck { expr: Option<String> },
    /// Gauge function of a null Lagrangian.
    Gauge { expr: Option<String> },
    /// Highest jet order, or "none".
    Order { expr: Option<String> },
    /// Prolongation residues of the sl(2) generators and the verdict.
    Sl2 { expr: Option<String> },
    /// Print a built-in Lagrangian: presch, L2, sigma N, schippers N.
    Builtin { name: String, n: Option<u32> },
    /// Integrate the equation of motion with fixed-step RK4 and print CSV.
    OdeRun {
        #[arg(long)]
        lagrangian: String,
        /// Comma-separated q, q', ..., q^(m-1).
        #[arg(long, allow_hyphen_values = true)]
        init: String,
        #[arg(long, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, allow_hyphen_values = true)]
        t1: f64,
        #[arg(long)]
        h: f64,
        /// Expression sampled along the trajectory; drift goes to stderr.
        #[arg(long)]
        monitor: Option<String>,
    },
    /// Evaluate numerically.
    Eval {
        expr: Option<String>,
        /// Comma-separated `atom=value`; a bare integer k names q^(k).
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn computation(message: impl ToString) -> Self {
        Failure {
            code: EXIT_COMPUTATION,
            message: message.to_string(),
        }
    }
}

impl From<NumericError> for Failure {
    fn from(e: NumericError) -> Self {
        Failure::computation(e)
    }
}

impl From<VariationalError> for Failure {
    fn from(e: VariationalError) -> Self {
        Failure::computation(e)
    }
}

impl From<Sl2Error> for Failure {
    fn from(e: Sl2Error) -> Self {
        match e {
            Sl2Error::ReservedParameter(_) => Failure::usage(e),
            other => Failure::computation(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::computation(e)
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn expr(&mut self, arg: Option<&str>) -> Result<Expr, Failure> {
        let text = match arg {
            Some(s) if s != "-" => s.to_owned(),
            _ => {
                let mut buf = String::new();
                self.stdin.read_to_string(&mut buf)?;
                buf
            }
        };
        parse_expr(&text).map_err(Failure::usage)
    }
}

/// Runs the CLI against the process streams.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_cli_with(
        argv,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// Runs the CLI against the given streams.
pub fn run_cli_with<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    let mut io = Io { stdin, out, err };
    match execute(cli, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: Cli, io: &mut Io<'_>) -> Result<i32, Failure> {
    let fmt = cli.format;
    let print = |io: &mut Io<'_>, e: &Expr| -> Result<i32, Failure> {
        writeln!(io.out, "{}", render(e, fmt))?;
        Ok(EXIT_OK)
    };
    match cli.command {
        Command::Simplify { expr } => {
            let e = io.expr(expr.as_deref())?;
            print(io, &e)
        }
        Command::Dt { k, expr } => {
            let e = io.expr(expr.as_deref())?;
            print(io, &total_derivative(&e, k))
        }
        Command::El { expr } => {
            let e = io.expr(expr.as_deref())?;
            print(io, &euler_lagrange(&e))
        }
        Command::Jacobi { expr } => {
            let e = io.expr(expr.as_deref())?;
            print(io, &jacobi(&e))
        }
        Command::NullCheck { expr } => {
            let e = io.expr(expr.as_deref())?;
            if is_null(&e) {
                writeln!(io.out, "null")?;
                Ok(EXIT_OK)
            } else {
                writeln!(io.out, "not-null")?;
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::Gauge { expr } => {
            let e = io.expr(expr.as_deref())?;
            let g = extract_gauge(&e)?;
            print(io, &g.gauge)
        }
        Command::Order { expr } => {
            let e = io.expr(expr.as_deref())?;
            match jet_order(&e) {
                Some(n) => writeln!(io.out, "{n}")?,
                None => writeln!(io.out, "none")?,
            }
            Ok(EXIT_OK)
        }
        Command::Sl2 { expr } => {
            let e = io.expr(expr.as_deref())?;
            let report = sl2_residues(&e)?;
            writeln!(
                io.out,
                "translation: {}",
                render(&report.residue_translation, fmt)
            )?;
            writeln!(io.out, "scaling: {}", render(&report.residue_scaling, fmt))?;
            writeln!(io.out, "special: {}", render(&report.residue_special, fmt))?;
            if report.invariant {
                writeln!(io.out, "invariant")?;
                Ok(EXIT_OK)
            } else {
                writeln!(io.out, "not-invariant")?;
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::Builtin { name, n } => {
            let id = HierarchyId::from_name(&name, n).map_err(Failure::usage)?;
            let e = builtin(id).map_err(Failure::usage)?;
            print(io, &e)
        }
        Command::OdeRun {
            lagrangian,
            init,
            t0,
            t1,
            h,
            monitor: monitored,
        } => ode_run(io, &lagrangian, &init, t0, t1, h, monitored.as_deref()),
        Command::Eval { expr, at } => {
            let point = parse_point(&at)?;
            let e = io.expr(expr.as_deref())?;
            let v = eval(&e, &point)?;
            writeln!(io.out, "{v}")?;
            Ok(EXIT_OK)
        }
    }
}

fn parse_point(spec: &str) -> Result<JetPoint, Failure> {
    let mut point = JetPoint::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("expected atom=value, got `{item}`")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("not a number: `{}`", value.trim())))?;
        let key = key.trim();
        let atom = match key.parse::<u32>() {
            Ok(k) => Atom::Jet(k),
            Err(_) => {
                let e = parse_expr(key).map_err(Failure::usage)?;
                match e.atoms().into_iter().collect::<Vec<_>>().as_slice() {
                    [a] if !a.is_log() && Expr::atom(a.clone()) == e => a.clone(),
                    _ => return Err(Failure::usage(format!("`{key}` does not name an atom"))),
                }
            }
        };
        point.set(atom, value);
    }
    Ok(point)
}

fn ode_run(
    io: &mut Io<'_>,
    lagrangian: &str,
    init: &str,
    t0: f64,
    t1: f64,
    h: f64,
    monitored: Option<&str>,
) -> Result<i32, Failure> {
    let l = parse_expr(lagrangian).map_err(Failure::usage)?;
    let watch = monitored
        .map(|m| parse_expr(m).map_err(Failure::usage))
        .transpose()?;
    let init: Vec<f64> = init
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("not a number in --init: `{}`", s.trim())))
        })
        .collect::<Result<_, _>>()?;
    let sys = derive_ode(&l)?;
    if init.len() != sys.order as usize {
        return Err(Failure::usage(format!(
            "--init needs {} values for an order-{} equation, got {}",
            sys.order,
            sys.order,
            init.len()
        )));
    }
    let (samples, failure) = match integrate_rk4(&sys, &init, t0, t1, h) {
        Ok(traj) => (traj, None),
        Err(NumericError::NumericSingularity { t, partial }) => (
            crate::numeric::Trajectory { samples: partial },
            Some(Failure::computation(format!(
                "numeric singularity at t = {t}"
            ))),
        ),
        Err(e) => return Err(e.into()),
    };
    let report = match &watch {
        Some(w) if !samples.samples.is_empty() => Some(monitor(&samples, w)?),
        _ => None,
    };

    let mut header = String::from("t");
    for k in 0..sys.order {
        header.push_str(&format!(",q{k}"));
    }
    if watch.is_some() {
        header.push_str(",monitored");
    }
    writeln!(io.out, "{header}")?;
    for (i, (t, state)) in samples.samples.iter().enumerate() {
        let mut row = format!("{t}");
        for v in state {
            row.push_str(&format!(",{v}"));
        }
        if let Some(r) = &report {
            row.push_str(&format!(",{}", r.samples[i].1));
        }
        writeln!(io.out, "{row}")?;
    }
    if let Some(r) = &report {
        writeln!(
            io.err,
            "max_abs_drift={} max_rel_drift={}",
            r.max_abs_drift, r.max_rel_drift
        )?;
    }
    match failure {
        Some(f) => Err(f),
        None => Ok(EXIT_OK),
    }
}
