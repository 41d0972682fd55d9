//! The `qsample` command line: argument parsing, dispatch, and TSV / JSON
//! output.
//!
//! Exit codes: 0 on success, 1 on domain errors (bad input, violated
//! preconditions), 2 on internal assertion failures. Errors go to stderr as
//! a single JSON line `{"error":KIND,"message":TEXT}`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bvp::{build_phi, reconstruct, transform, SamplingExpansion};
use crate::charpoly::spectrum_check;
use crate::error::{Error, Result};
use crate::linalg::{is_normal, normality_by_parts, right_eigen};
use crate::poly::zeros;
use crate::quaternion::Quaternion;
use crate::text::{self, format_real};
use crate::verify;

const TOL_NORMAL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "qsample", version, about = "Quaternion sampling expansions, polynomial zeros and right eigenvalues")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Significant digits in printed numbers (1 to 17).
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub digits: u8,
    /// One JSON object per line instead of TSV.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zero orbits of a polynomial file (coefficients in ascending powers).
    Roots {
        /// Polynomial file.
        #[arg(long)]
        input: PathBuf,
        /// Right-multiply every coefficient by this quaternion.
        #[arg(long)]
        s: Option<String>,
    },
    /// Standard right eigenvalues of a matrix file with residuals.
    Eig {
        /// Matrix file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Direct normality test, plus the real-part criterion for symmetric input.
    NormalCheck {
        /// Matrix file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Characteristic polynomial of a tridiagonal symmetric matrix.
    Charpoly {
        /// Tridiagonal symmetric matrix file.
        #[arg(long)]
        input: PathBuf,
        /// Nonzero quaternion s, default 1.
        #[arg(long)]
        s: Option<String>,
    },
    /// Sample points, basis vectors and interpolants for a spec file.
    Sample {
        /// Boundary-value spec file.
        #[arg(long)]
        input: PathBuf,
        /// Nonzero quaternion s; overrides the file, default 1.
        #[arg(long)]
        s: Option<String>,
        /// 1: eigenvectors of the operator matrix; 2: zeros of the boundary polynomial.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        method: u8,
    },
    /// Compare the transform with its sampling reconstruction.
    Reconstruct {
        /// Boundary-value spec file.
        #[arg(long)]
        input: PathBuf,
        /// File with `F = …` and `lambda = …` lines.
        #[arg(long)]
        data: PathBuf,
        /// Nonzero quaternion s; overrides the file, default 1.
        #[arg(long)]
        s: Option<String>,
        /// 1: eigenvectors of the operator matrix; 2: zeros of the boundary polynomial.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        method: u8,
    },
    /// Golden cases and seeded random trials; exits 2 on any failure.
    Verify {
        /// Seed for the random trials.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trials per suite.
        #[arg(long, default_value_t = 20)]
        trials: u64,
    },
}

/// Rows with a fixed header, printed as TSV or JSON lines.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn render(&self, json: bool) -> String {
        let mut out = String::new();
        if json {
            for row in &self.rows {
                let fields: Vec<String> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| format!("{}:{}", serde_json::Value::from(*k), serde_json::Value::from(v.as_str())))
                    .collect();
                out.push_str(&format!("{{{}}}\n", fields.join(",")));
            }
        } else {
            out.push_str(&self.header.join("\t"));
            out.push('\n');
            for row in &self.rows {
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
        out
    }
}

struct Fmt(usize);

impl Fmt {
    fn q(&self, q: Quaternion) -> String {
        text::format_clean(q, self.0)
    }

    fn r(&self, v: f64) -> String {
        format_real(if v.abs() <= 1e-13 { 0.0 } else { v }, self.0)
    }

    fn e(&self, v: f64) -> String {
        format!("{v:.2e}")
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse_s(s: &Option<String>) -> Result<Option<Quaternion>> {
    s.as_deref().map(text::parse_quaternion).transpose()
}

fn dash() -> String {
    "-".to_string()
}

fn expansion(input: &Path, s: &Option<String>, method: u8) -> Result<(crate::bvp::PhiTable, SamplingExpansion)> {
    let (spec, file_s) = text::parse_bvp(&read(input)?)?;
    let s = parse_s(s)?.or(file_s).unwrap_or(Quaternion::ONE);
    let table = build_phi(&spec)?;
    let exp = if method == 2 { SamplingExpansion::method2(&table, s)? } else { SamplingExpansion::method1(&table, s)? };
    Ok((table, exp))
}

/// Runs one parsed command, returning the text for stdout and whether every
/// verification passed.
pub fn execute(cli: &Cli) -> Result<(String, bool)> {
    let f = Fmt(cli.output.digits as usize);
    let json = cli.output.json;
    let mut ok = true;
    let table = match &cli.command {
        Command::Roots { input, s } => {
            let mut p = text::parse_poly(&read(input)?)?;
            if let Some(s) = parse_s(s)? {
                p = p.with_s(s);
            }
            let mut t = Table::new(&["kind", "representative", "re", "r", "confident"]);
            for z in zeros(&p)? {
                t.push(vec![
                    z.kind.as_str().into(),
                    f.q(z.representative),
                    f.r(z.orbit.re),
                    f.r(z.orbit.r),
                    z.confident.to_string(),
                ]);
            }
            t
        }
        Command::Eig { input } => {
            let a = text::parse_matrix(&read(input)?)?;
            let mut t = Table::new(&["index", "value", "residual"]);
            for (k, p) in right_eigen(&a)?.iter().enumerate() {
                t.push(vec![(k + 1).to_string(), f.q(p.value), f.e(p.residual(&a)?)]);
            }
            t
        }
        Command::NormalCheck { input } => {
            let a = text::parse_matrix(&read(input)?)?;
            let mut t = Table::new(&["test", "result"]);
            t.push(vec!["direct".into(), is_normal(&a, TOL_NORMAL)?.to_string()]);
            let parts = match normality_by_parts(&a, TOL_NORMAL) {
                Ok(v) => v.to_string(),
                Err(Error::NotSymmetric(_)) => "not-symmetric".into(),
                Err(e) => return Err(e),
            };
            t.push(vec!["real-parts".into(), parts]);
            t
        }
        Command::Charpoly { input, s } => {
            let a = text::parse_matrix(&read(input)?)?;
            let s = parse_s(s)?.unwrap_or(Quaternion::ONE);
            let r = spectrum_check(&a, s)?;
            let mut t = Table::new(&["item", "index", "kind", "value", "re", "r"]);
            for (k, c) in r.poly.coeffs().iter().enumerate() {
                t.push(vec!["coeff".into(), k.to_string(), dash(), f.q(*c), dash(), dash()]);
            }
            for (k, z) in r.zero_classes.iter().enumerate() {
                t.push(vec![
                    "zero".into(),
                    (k + 1).to_string(),
                    z.kind.as_str().into(),
                    f.q(z.representative),
                    f.r(z.orbit.re),
                    f.r(z.orbit.r),
                ]);
            }
            for (k, o) in r.spectrum_classes.iter().enumerate() {
                t.push(vec![
                    "eigen-orbit".into(),
                    (k + 1).to_string(),
                    dash(),
                    f.q(o.representative()),
                    f.r(o.re),
                    f.r(o.r),
                ]);
            }
            t.push(vec!["verdict".into(), dash(), dash(), "match".into(), dash(), dash()]);
            t
        }
        Command::Sample { input, s, method } => {
            let (_, e) = expansion(input, s, *method)?;
            let mut t = Table::new(&["item", "k", "m", "value"]);
            for (k, p) in e.points().iter().enumerate() {
                t.push(vec!["point".into(), (k + 1).to_string(), dash(), f.q(*p)]);
            }
            for (k, v) in e.basis().iter().enumerate() {
                for (m, x) in v.iter().enumerate() {
                    t.push(vec!["basis".into(), (k + 1).to_string(), (m + 1).to_string(), f.q(*x)]);
                }
            }
            for (k, psi) in e.interpolants().iter().enumerate() {
                for (j, c) in psi.coeffs().iter().enumerate() {
                    t.push(vec!["psi".into(), (k + 1).to_string(), j.to_string(), f.q(*c)]);
                }
            }
            t
        }
        Command::Reconstruct { input, data, s, method } => {
            let (table, e) = expansion(input, s, *method)?;
            let d = text::parse_reconstruct_data(&read(data)?)?;
            let samples =
                e.points().iter().map(|p| transform(&d.coeffs, &table, e.s(), *p)).collect::<Result<Vec<_>>>()?;
            let mut t = Table::new(&["lambda", "transform", "reconstruction", "abs_error"]);
            for lam in &d.points {
                let want = transform(&d.coeffs, &table, e.s(), *lam)?;
                let got = reconstruct(&samples, &e, *lam)?;
                t.push(vec![f.q(*lam), f.q(want), f.q(got), f.e((want - got).norm())]);
            }
            t
        }
        Command::Verify { seed, trials } => {
            let mut t = Table::new(&["suite", "check", "result", "detail"]);
            for c in verify::run(*seed, *trials) {
                ok &= c.passed;
                t.push(vec![c.suite.into(), c.name, if c.passed { "pass" } else { "FAIL" }.into(), c.detail]);
            }
            t
        }
    };
    Ok((table.render(json), ok))
}

fn error_line(kind: &str, message: &str) -> String {
    format!("{{\"error\":{},\"message\":{}}}\n", serde_json::Value::from(kind), serde_json::Value::from(message))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            let _ = err.write_all(error_line("UsageError", first).as_bytes());
            return 1;
        }
    };
    match execute(&cli) {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                0
            } else {
                let _ = err.write_all(error_line("VerificationFailure", "one or more checks failed").as_bytes());
                2
            }
        }
        Err(e) => {
            let _ = err.write_all(error_line(e.kind(), &e.to_string()).as_bytes());
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("qsample").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, _, err) = run_args(&["sample", "--input", "x", "--method", "3"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("{\"error\":\"UsageError\""));
        let (code, _, _) = run_args(&["eig", "--input", "x", "--digits", "0"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn missing_file_is_domain_error() {
        let (code, out, err) = run_args(&["eig", "--input", "/nonexistent/matrix.txt"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.contains("\"IoError\""));
    }

    #[test]
    fn table_rendering() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["1".into(), "x\"y".into()]);
        assert_eq!(t.render(false), "a\tb\n1\tx\"y\n");
        assert_eq!(t.render(true), "{\"a\":\"1\",\"b\":\"x\\\"y\"}\n");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("roots"));
    }
}
