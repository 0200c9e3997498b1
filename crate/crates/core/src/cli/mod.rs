//! Command-line front end: `invariants`, `table` and `verify`.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical or verification
//! failure.

mod parse;
mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use parse::{format_complex, parse_complex, GridSpec, MAX_GRID};
pub use report::{
    build_report, table_rows, unpair, write_csv, write_json, write_pretty, write_table,
    ExcludedJson, InvariantsReport, KnotJson, RootJson, SurgeryJson, TableRow, TapJson,
};

use crate::riley::MAX_PARAM;
use crate::torsion::SurgerySlope;
use crate::verify::{default_pairs, default_xs, run_verify, VerifyConfig};
use crate::{Error, C64};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "twistalex",
    version,
    about = "Twisted Alexander polynomials and torsion of genus-one two-bridge knots J(2m,2n)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nonabelian representations and their invariants at one meridian trace.
    Invariants(InvariantsArgs),
    /// CSV sweep of the meridian trace along a segment.
    Table(TableArgs),
    /// Run the identity and dual-route checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    /// Meridian trace, e.g. `1`, `1+0.7i`, `-0.3+1.1i`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub x: C64,
    /// Surgery slope numerator.
    #[arg(long, allow_hyphen_values = true, requires = "q")]
    pub p: Option<i64>,
    /// Surgery slope denominator.
    #[arg(long, allow_hyphen_values = true, requires = "p")]
    pub q: Option<i64>,
    /// Largest acceptable Riley residual.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    /// `START:END:COUNT` with complex endpoints.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: GridSpec,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict the grid to this m.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Restrict the grid to this n.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// Check only this meridian trace.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub x: Option<C64>,
    /// Shift every root y by this amount before checking.
    #[arg(long, allow_hyphen_values = true)]
    pub perturb: Option<f64>,
    /// Seed for the random Chebyshev instances.
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    pub seed: u64,
}

fn check_params(m: i64, n: i64) -> Result<(), String> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroParameter.to_string());
    }
    if m.abs() > MAX_PARAM || n.abs() > MAX_PARAM {
        return Err(Error::ParameterTooLarge { m, n, max: MAX_PARAM }.to_string());
    }
    Ok(())
}

fn invariants(args: &InvariantsArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Err(msg) = check_params(args.m, args.n) {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        let _ = writeln!(err, "error: --tol must be a positive number");
        return EXIT_USAGE;
    }
    let slope = match (args.p, args.q) {
        (Some(p), Some(q)) => match SurgerySlope::new(p, q) {
            Ok(s) => Some(s),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        },
        _ => None,
    };
    let report = match build_report(args.m, args.n, args.x, slope) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAILURE;
        }
    };
    let written = match args.format {
        Format::Json => write_json(&report, out),
        Format::Csv => write_csv(&report, out),
        Format::Pretty => write_pretty(&report, out),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_FAILURE;
    }
    if report.max_residual() > args.tol || report.has_numerical_failure() {
        let _ = writeln!(
            err,
            "error: residual {:e} exceeds tolerance {:e}",
            report.max_residual(),
            args.tol
        );
        return EXIT_FAILURE;
    }
    EXIT_OK
}

fn table(args: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Err(msg) = check_params(args.m, args.n) {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    let rows = match table_rows(args.m, args.n, &args.grid.points()) {
        Ok(rows) => rows,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAILURE;
        }
    };
    match write_table(&rows, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let pairs: Vec<(i64, i64)> = match (args.m, args.n) {
        (Some(m), Some(n)) => {
            if let Err(msg) = check_params(m, n) {
                let _ = writeln!(err, "error: {msg}");
                return EXIT_USAGE;
            }
            vec![(m, n)]
        }
        (m, n) => default_pairs()
            .into_iter()
            .filter(|&(pm, pn)| m.is_none_or(|m| m == pm) && n.is_none_or(|n| n == pn))
            .collect(),
    };
    if pairs.is_empty() {
        let _ = writeln!(err, "error: no (m, n) pairs selected");
        return EXIT_USAGE;
    }
    if let Some(d) = args.perturb {
        if !d.is_finite() {
            let _ = writeln!(err, "error: --perturb must be finite");
            return EXIT_USAGE;
        }
    }
    let cfg = VerifyConfig {
        pairs,
        xs: args.x.map(|x| vec![x]).unwrap_or_else(default_xs),
        perturb: args.perturb,
        seed: args.seed,
    };
    match run_verify(&cfg) {
        Ok(report) => {
            let _ = writeln!(out, "{report}");
            if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match &cli.command {
        Command::Invariants(a) => invariants(a, out, err),
        Command::Table(a) => table(a, out, err),
        Command::Verify(a) => verify(a, out, err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("twistalex").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn zero_parameter_is_usage_error() {
        let (code, _, err) = run_capture(&["invariants", "--m", "0", "--n", "1", "--x", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("m and n must be nonzero"));
    }

    #[test]
    fn bad_complex_is_usage_error() {
        let (code, _, _) = run_capture(&["invariants", "--m", "1", "--n", "1", "--x", "one"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn negative_values_are_accepted() {
        let (code, out, _) = run_capture(&["invariants", "--m", "1", "--n", "-1", "--x", "-0.3+1.1i"]);
        assert_eq!(code, EXIT_OK);
        let report: InvariantsReport = serde_json::from_str(&out).unwrap();
        assert_eq!(report.knot, KnotJson { m: 1, n: -1 });
        assert_eq!(report.roots.len(), 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("invariants"));
        let (code, _, _) = run_capture(&[]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn slope_needs_both_parts_and_coprime() {
        let (code, _, _) = run_capture(&["invariants", "--m", "1", "--n", "1", "--x", "1", "--p", "3"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, err) =
            run_capture(&["invariants", "--m", "1", "--n", "1", "--x", "1", "--p", "4", "--q", "2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("gcd"));
    }

    #[test]
    fn table_rejects_empty_grid() {
        let (code, _, _) = run_capture(&["table", "--m", "1", "--n", "1", "--grid", "0:1:0"]);
        assert_eq!(code, EXIT_USAGE);
    }
}
