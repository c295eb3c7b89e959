//! The `wbounds` command line: constants, figure tables, spectral bounds and
//! the verification suites.
//!
//! Exit codes: 0 success, 1 failed verification or computation, 2 usage
//! error, 3 unreadable or malformed input file.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::bounds::{c0_upper, det_bound, eigencount_bound, EigencountInput, SpectrumSample};
use crate::constants::{c_0_alpha, c_n_alpha, gamma_p, r_alpha, ExponentPair};
use crate::verify::{self, Suite};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

const MAX_GRID_POINTS: f64 = 1e6;

#[derive(Debug, Parser)]
#[command(name = "wbounds", version, about = "Growth constants of Weierstrass primary factors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print C(n, alpha) with its maximizing radius and diagnostics.
    Constant {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Print Gamma_p.
    Gamma {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
    },
    /// CSV of p -> Gamma_p.
    #[command(name = "fig1", alias = "gamma-table")]
    Fig1 {
        #[arg(long, default_value = "0.05:8:0.05")]
        grid: GridSpec,
    },
    /// CSV of alpha -> C(n, alpha) for each listed n.
    #[command(name = "fig2")]
    Fig2 {
        /// Comma-separated orders or ranges, e.g. `1-8` or `1,2,5`.
        #[arg(long, default_value = "1-8")]
        n: OrderList,
        #[arg(long, default_value = "0:1:0.01")]
        grid: GridSpec,
    },
    /// CSV of alpha -> C(0, alpha), r_alpha and the elementary upper bound.
    #[command(name = "fig3", alias = "c0-table")]
    Fig3 {
        #[arg(long, default_value = "0.01:1:0.01")]
        grid: GridSpec,
    },
    /// Bound on |det_p(I - K)| from singular numbers listed in a file.
    DetBound {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        file: PathBuf,
    },
    /// Bound on the number of eigenvalues of A + K outside |lambda| = s.
    EigencountBound {
        #[arg(long)]
        p: f64,
        /// The constant R_p of the estimate (the result is linear in it).
        #[arg(long = "rp")]
        r_p: f64,
        #[arg(long = "norm-a")]
        norm_a: f64,
        #[arg(long)]
        s: f64,
        /// Approximation numbers of K, one per line.
        #[arg(long)]
        file: PathBuf,
    },
    /// Run a property suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

/// `start:stop:step` with `start < stop` and `step > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, String> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err("grid bounds must be finite".into());
        }
        if !(step > 0.0) {
            return Err(format!("grid step must be positive, got {step}"));
        }
        if !(start < stop) {
            return Err(format!("grid needs start < stop, got {start}:{stop}"));
        }
        if (stop - start) / step > MAX_GRID_POINTS {
            return Err(format!("grid {start}:{stop}:{step} has more than 1e6 steps"));
        }
        Ok(GridSpec { start, stop, step })
    }

    /// Grid points `start + i step <= stop`, each rounded to 12 decimals so
    /// that nominal values such as 2.0 come out exact.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let v = self.start + i as f64 * self.step;
                format!("{v:.12}").parse().unwrap_or(v)
            })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:step, got `{s}`"));
        }
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{t}` is not a number"))
        };
        GridSpec::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    }
}

/// Orders `n >= 1`, written as `1-8`, `2,4,6` or a mix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderList(pub Vec<u32>);

impl FromStr for OrderList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("`{t}` is not a nonnegative integer"))
        };
        let mut out = Vec::new();
        for item in s.split(',') {
            match item.split_once('-') {
                Some((a, b)) => {
                    let (a, b) = (parse(a)?, parse(b)?);
                    if a > b {
                        return Err(format!("empty range `{item}`"));
                    }
                    out.extend(a..=b);
                }
                None => out.push(parse(item)?),
            }
        }
        if out.contains(&0) {
            return Err("orders in this table must be >= 1".into());
        }
        Ok(OrderList(out))
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Failed(_) => EXIT_FAILURE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Failed(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failed(format!("write failed: {e}"))
    }
}

/// Fixed 12-significant-digit rendering used for every number written by
/// the CLI. Plain decimal for exponents in `[-5, 15)`, scientific otherwise.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.11e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}

fn write_csv<W: Write>(out: &mut W, columns: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    writeln!(out, "# columns: {}", columns.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Reads a spectrum file: one nonnegative decimal per line, `#` starts a
/// comment, blank lines are ignored.
pub fn read_spectrum(path: &Path) -> Result<SpectrumSample, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let v: f64 = content.parse().map_err(|_| {
            CliError::Input(format!("{}:{}: `{content}` is not a number", path.display(), lineno + 1))
        })?;
        if !(v.is_finite() && v >= 0.0) {
            return Err(CliError::Input(format!(
                "{}:{}: entries must be finite and nonnegative, got {content}",
                path.display(),
                lineno + 1
            )));
        }
        values.push(v);
    }
    SpectrumSample::new(values).map_err(|e| CliError::Input(e.to_string()))
}

/// Runs one parsed command, writing results to `out` and notes to `err`.
pub fn execute<W: Write, E: Write>(cmd: &Command, out: &mut W, err: &mut E) -> Result<i32, CliError> {
    match cmd {
        Command::Constant { n, alpha } => {
            let r = c_n_alpha(ExponentPair::new(*n, *alpha)?)?;
            writeln!(out, "value: {}", format_sig12(r.value))?;
            writeln!(out, "maximizing_radius: {}", format_sig12(r.maximizing_radius))?;
            writeln!(out, "method: {}", r.method)?;
            writeln!(out, "residual: {}", format_sig12(r.residual))?;
        }
        Command::Gamma { p } => {
            writeln!(out, "{}", format_sig12(gamma_p(*p)?))?;
        }
        Command::Fig1 { grid } => {
            let ps = grid.points();
            if let Some(bad) = ps.iter().find(|p| **p <= 0.0) {
                return Err(CliError::Usage(format!("p must be positive, grid contains {bad}")));
            }
            let rows = ps
                .par_iter()
                .map(|&p| Ok(vec![format_sig12(p), format_sig12(gamma_p(p)?)]))
                .collect::<Result<Vec<_>, Error>>()?;
            write_csv(out, &["p", "gamma"], &rows)?;
        }
        Command::Fig2 { n, grid } => {
            let alphas = grid.points();
            if let Some(bad) = alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
                return Err(CliError::Usage(format!("alpha grid must lie in [0, 1], contains {bad}")));
            }
            let pairs: Vec<(u32, f64)> = n
                .0
                .iter()
                .flat_map(|&n| alphas.iter().map(move |&a| (n, a)))
                .collect();
            let rows = pairs
                .par_iter()
                .map(|&(n, a)| {
                    let c = c_n_alpha(ExponentPair::new(n, a)?)?;
                    Ok(vec![n.to_string(), format_sig12(a), format_sig12(c.value)])
                })
                .collect::<Result<Vec<_>, Error>>()?;
            write_csv(out, &["n", "alpha", "C"], &rows)?;
        }
        Command::Fig3 { grid } => {
            let alphas = grid.points();
            if let Some(bad) = alphas.iter().find(|a| !(**a > 0.0 && **a <= 1.0)) {
                return Err(CliError::Usage(format!("alpha grid must lie in (0, 1], contains {bad}")));
            }
            let rows = alphas
                .par_iter()
                .map(|&a| {
                    let c0 = c_0_alpha(a)?.value;
                    // r_alpha -> -W(-1/e) = 1 as alpha -> 1
                    let r = if a == 1.0 { 1.0 } else { r_alpha(a)? };
                    Ok(vec![
                        format_sig12(a),
                        format_sig12(c0),
                        format_sig12(r),
                        format_sig12(c0_upper(a)?),
                    ])
                })
                .collect::<Result<Vec<_>, Error>>()?;
            write_csv(out, &["alpha", "C0", "r_alpha", "upper_bound"], &rows)?;
        }
        Command::DetBound { p, file } => {
            let spectrum = read_spectrum(file)?;
            let b = det_bound(*p, &spectrum)?;
            writeln!(out, "log_bound: {}", format_sig12(b.log_bound))?;
            match b.linear() {
                Ok(v) => writeln!(out, "bound: {}", format_sig12(v))?,
                Err(e) => {
                    writeln!(out, "bound: overflow")?;
                    writeln!(err, "note: {e}")?;
                }
            }
        }
        Command::EigencountBound {
            p,
            r_p,
            norm_a,
            s,
            file,
        } => {
            let approx_numbers = read_spectrum(file)?;
            let bound = eigencount_bound(&EigencountInput {
                p: *p,
                r_p: *r_p,
                norm_a: *norm_a,
                s: *s,
                approx_numbers,
            })?;
            writeln!(err, "note: the bound scales linearly with the supplied R_p = {r_p}")?;
            writeln!(out, "{}", format_sig12(bound))?;
        }
        Command::Verify { suite } => {
            let checks = verify::run(*suite);
            let mut failed = 0;
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                failed += usize::from(!c.passed);
                writeln!(out, "{tag} {}: {}", c.name, c.detail)?;
            }
            writeln!(out, "{} of {} checks passed", checks.len() - failed, checks.len())?;
            return Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE });
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}
