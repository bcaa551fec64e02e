//! Command-line front end: `gen`, `matrix` and `verify`.
//!
//! Exit status is 0 when everything passed, 1 when a verified claim failed,
//! and 2 for usage errors.

pub mod checks;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::matrixkit::{build_generic_quad, build_l, build_p, build_q, build_t, PolyMatrix, VarStyle};
use crate::outputmat::output_matrix;
use crate::permoracle::{dumont_poly, histogram_csv};
use crate::polyring::Poly;
use crate::schett::{schett_poly, schett_reduced};
use crate::totalpos::schett_hankel;
use crate::Parity;
use checks::CheckOutcome;
use report::RunReport;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest truncation accepted for minor enumeration (row/column bitmasks).
const MAX_TP_SIZE: usize = 63;

#[derive(Debug, Parser)]
#[command(
    name = "schett",
    version,
    about = "Schett polynomials, their production matrices, and bounded total-positivity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit one polynomial.
    Gen {
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Order parameter for `higher` (m + 1 variables).
        #[arg(long)]
        m: Option<usize>,
        /// Weight `dumont` by the number of cycles (`lambda`).
        #[arg(long)]
        lambda: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Emit a truncated matrix.
    Matrix {
        which: MatrixKind,
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Use X = x², Y = y², Z = z² for P, Q, T, L and output matrices.
        #[arg(long)]
        squared: bool,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run one or all checks and print a report.
    Verify {
        check: CheckKind,
        /// Truncation size for `tp`.
        #[arg(long)]
        depth: Option<usize>,
        /// Minor order (`tp`, `hankel`, `generic`) or series order (`thm21`, `egf`).
        #[arg(long)]
        order: Option<usize>,
        /// Index bound (`oracle`, `riordan`, `thm21`, `factorial`, `symmetry`, `coincidence`).
        #[arg(long)]
        nmax: Option<usize>,
        /// Matrix size (`factorization`, `hankel`, `generic`, `columns`, `tridiagonal`).
        #[arg(long)]
        size: Option<usize>,
        /// Print the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Record wall-clock time per check (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Schett,
    Reduced,
    Dumont,
    Higher,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
    #[value(name = "T")]
    T,
    #[value(name = "L")]
    L,
    #[value(name = "generic")]
    Generic,
    #[value(name = "outputP")]
    OutputP,
    #[value(name = "outputQ")]
    OutputQ,
    #[value(name = "hankel-even")]
    HankelEven,
    #[value(name = "hankel-odd")]
    HankelOdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    All,
    Tp,
    Factorization,
    Hankel,
    Riordan,
    Thm21,
    Oracle,
    Egf,
    Coincidence,
    Factorial,
    Columns,
    Generic,
    Symmetry,
    Tridiagonal,
    /// Exploratory; not part of `all`.
    ShiftedHankel,
}

/// Sizes the global worker pool from `SCHETT_THREADS` (default: all cores).
/// The thread count never affects results.
pub fn init_threads() -> std::result::Result<(), String> {
    let threads = match std::env::var("SCHETT_THREADS") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("SCHETT_THREADS must be a non-negative integer, got {s:?}"))?,
        Err(_) => 0,
    };
    // A pool may already exist (e.g. when called twice in one process).
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status. Regular output goes to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return if code == 0 { EXIT_PASS } else { EXIT_USAGE };
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    match dispatch(cli.command, echo) {
        Ok((text, out, code)) => match emit(&text, out.as_deref(), stdout) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(text: &str, out: Option<&std::path::Path>, stdout: &mut dyn Write) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

type Dispatched = (String, Option<std::path::PathBuf>, i32);

fn dispatch(cmd: Command, echo: String) -> Result<Dispatched> {
    match cmd {
        Command::Gen { kind, n, m, lambda, format, out } => {
            Ok((cmd_gen(kind, n, m, lambda, format)?, out, EXIT_PASS))
        }
        Command::Matrix { which, size, format, squared, out } => {
            Ok((cmd_matrix(which, size, format, squared)?, out, EXIT_PASS))
        }
        Command::Verify { check, depth, order, nmax, size, json, timing, out } => {
            let flags = VerifyFlags { depth, order, nmax, size };
            let report = RunReport::new(echo, cmd_verify(check, flags, timing)?);
            let mut text = if json { report.to_json() } else { report.to_string() };
            text.push('\n');
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            Ok((text, out, code))
        }
    }
}

fn render_poly(p: &Poly, format: Format) -> String {
    match format {
        Format::Json => p.to_json(),
        Format::Latex => p.to_latex(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["coeff".to_string()];
            header.extend(p.vars().names().iter().cloned());
            w.write_record(&header).expect("writing to memory");
            for (m, c) in p.terms() {
                let mut rec = vec![c.to_string()];
                rec.extend(m.exps().iter().map(u32::to_string));
                w.write_record(&rec).expect("writing to memory");
            }
            String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Renders `X_n`, its reduced form, `D_n` or a higher-order polynomial.
pub fn cmd_gen(kind: GenKind, n: usize, m: Option<usize>, lambda: bool, format: Format) -> Result<String> {
    if m.is_some() && kind != GenKind::Higher {
        return Err(Error::Validation("--m only applies to `gen higher`".into()));
    }
    if lambda && kind != GenKind::Dumont {
        return Err(Error::Validation("--lambda only applies to `gen dumont`".into()));
    }
    let poly = match kind {
        GenKind::Schett => schett_poly(n, 2)?,
        GenKind::Reduced => schett_reduced(n)?.poly,
        GenKind::Dumont => {
            if format == Format::Csv {
                return Ok(histogram_csv(n));
            }
            dumont_poly(n, lambda)
        }
        GenKind::Higher => {
            let m = m.ok_or_else(|| Error::Validation("`gen higher` needs --m".into()))?;
            schett_poly(n, m)?
        }
    };
    Ok(with_newline(render_poly(&poly, format)))
}

/// Builds and renders one of the named matrices.
pub fn cmd_matrix(which: MatrixKind, size: usize, format: Format, squared: bool) -> Result<String> {
    if size == 0 {
        return Err(Error::Validation("--size must be at least 1".into()));
    }
    let style = if squared { VarStyle::Squared } else { VarStyle::Raw };
    let m: PolyMatrix = match which {
        MatrixKind::P => build_p(size, style),
        MatrixKind::Q => build_q(size, style),
        MatrixKind::T => build_t(size, style),
        MatrixKind::L => build_l(size, style),
        MatrixKind::Generic => build_generic_quad(size)?,
        MatrixKind::OutputP => output_matrix(&build_p(size, style), size)?.into_matrix(),
        MatrixKind::OutputQ => output_matrix(&build_q(size, style), size)?.into_matrix(),
        MatrixKind::HankelEven => schett_hankel(Parity::Even, size)?,
        MatrixKind::HankelOdd => schett_hankel(Parity::Odd, size)?,
    };
    let text = match format {
        Format::Json => serde_json::to_string(&m.to_json()).expect("matrix serializes"),
        Format::Latex => m.to_latex(),
        Format::Csv => m.to_csv(),
    };
    Ok(with_newline(text))
}

/// Depth flags of `verify`; `None` means the documented default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyFlags {
    pub depth: Option<usize>,
    pub order: Option<usize>,
    pub nmax: Option<usize>,
    pub size: Option<usize>,
}

impl VerifyFlags {
    fn is_empty(&self) -> bool {
        *self == VerifyFlags::default()
    }

    /// Rejects flags the selected check does not read.
    fn only(&self, check: &str, allowed: &[&str]) -> Result<()> {
        let given = [("depth", self.depth), ("order", self.order), ("nmax", self.nmax), ("size", self.size)];
        for (name, value) in given {
            if value.is_some() && !allowed.contains(&name) {
                return Err(Error::Validation(format!("--{name} does not apply to `verify {check}`")));
            }
        }
        Ok(())
    }
}

fn positive(name: &str, v: usize) -> Result<usize> {
    if v == 0 {
        Err(Error::Validation(format!("--{name} must be at least 1")))
    } else {
        Ok(v)
    }
}

fn minor_bounds(size: usize, order: usize) -> Result<()> {
    positive("size", size)?;
    if size > MAX_TP_SIZE {
        return Err(Error::Validation(format!("truncation size must be at most {MAX_TP_SIZE}")));
    }
    if order > size {
        return Err(Error::Validation(format!("--order {order} exceeds the truncation size {size}")));
    }
    Ok(())
}

/// Runs the selected check(s).
pub fn cmd_verify(check: CheckKind, f: VerifyFlags, timing: bool) -> Result<Vec<CheckOutcome>> {
    use checks::*;
    let d = Depths::default();
    let one = |r: Result<CheckOutcome>| r.map(|c| vec![c]);
    match check {
        CheckKind::All => {
            if !f.is_empty() {
                return Err(Error::Validation(
                    "`verify all` runs the documented default depths; run a single check to override them"
                        .into(),
                ));
            }
            run_all(&d, timing)
        }
        CheckKind::Tp => {
            f.only("tp", &["depth", "order"])?;
            let (size, order) = (f.depth.unwrap_or(d.tp_size), f.order.unwrap_or(d.tp_order));
            minor_bounds(size, order)?;
            one(timed(timing, || check_tp(size, order)))
        }
        CheckKind::Hankel => {
            f.only("hankel", &["size", "order"])?;
            let (size, order) = (f.size.unwrap_or(d.hankel_size), f.order.unwrap_or(d.hankel_order));
            minor_bounds(size, order)?;
            one(timed(timing, || check_hankel(size, order)))
        }
        CheckKind::ShiftedHankel => {
            f.only("shifted-hankel", &["size", "order"])?;
            let (size, order) = (f.size.unwrap_or(d.hankel_size), f.order.unwrap_or(d.hankel_order));
            minor_bounds(size, order)?;
            one(timed(timing, || check_shifted_hankel(size, order)))
        }
        CheckKind::Generic => {
            f.only("generic", &["size", "order"])?;
            let (size, order) = (f.size.unwrap_or(d.generic_size), f.order.unwrap_or(d.generic_order));
            minor_bounds(size, order)?;
            one(timed(timing, || check_generic(size, order)))
        }
        CheckKind::Factorization => {
            f.only("factorization", &["size"])?;
            let size = positive("size", f.size.unwrap_or(d.factorization_size))?;
            one(timed(timing, || check_factorization(size)))
        }
        CheckKind::Riordan => {
            f.only("riordan", &["nmax"])?;
            let nmax = f.nmax.unwrap_or(d.riordan_nmax);
            one(timed(timing, || check_riordan(nmax)))
        }
        CheckKind::Thm21 => {
            f.only("thm21", &["nmax", "order"])?;
            let nmax = positive("nmax", f.nmax.unwrap_or(d.thm21_nmax))?;
            let order = positive("order", f.order.unwrap_or(d.thm21_order))?;
            one(timed(timing, || check_thm21(nmax, order)))
        }
        CheckKind::Oracle => {
            f.only("oracle", &["nmax"])?;
            let nmax = positive("nmax", f.nmax.unwrap_or(d.oracle_nmax))?;
            if nmax > 12 {
                return Err(Error::Validation(
                    "oracle enumerates n! permutations; --nmax must be at most 12".into(),
                ));
            }
            one(timed(timing, || check_oracle(nmax)))
        }
        CheckKind::Egf => {
            f.only("egf", &["order"])?;
            let order = f.order.unwrap_or(d.egf_order);
            one(timed(timing, || check_egf(order)))
        }
        CheckKind::Coincidence => {
            f.only("coincidence", &["nmax"])?;
            let kmax = f.nmax.unwrap_or(d.coincidence_kmax);
            one(timed(timing, || check_coincidence(kmax)))
        }
        CheckKind::Factorial => {
            f.only("factorial", &["nmax"])?;
            let nmax = f.nmax.unwrap_or(d.factorial_nmax);
            one(timed(timing, || check_factorial(nmax)))
        }
        CheckKind::Symmetry => {
            f.only("symmetry", &["nmax"])?;
            let nmax = f.nmax.unwrap_or(d.symmetry_nmax);
            one(timed(timing, || check_symmetry(nmax)))
        }
        CheckKind::Columns => {
            f.only("columns", &["size"])?;
            let rows = positive("size", f.size.unwrap_or(d.column_rows))?;
            one(timed(timing, || check_zeroth_columns(rows)))
        }
        CheckKind::Tridiagonal => {
            f.only("tridiagonal", &["size"])?;
            let size = positive("size", f.size.unwrap_or(d.tridiagonal_size))?;
            one(timed(timing, || check_tridiagonal(size)))
        }
    }
}
