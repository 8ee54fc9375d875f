//! Command-line front end for `seshadri-core`.
//!
//! [`run`] takes an argument vector and returns the exit code with the text
//! for stdout and stderr, so the binary and the tests share one code path.
//! Exit codes: 0 for a definite answer, 2 when a verdict is unknown, 1 for
//! any input error.

use std::ffi::OsString;
use std::fmt;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};
use seshadri_core::curve_products::{Generality, Genus};
use seshadri_core::exact_num::{
    default_precision, truncated_decimal, ExactOrInterval, QuadExt, Rational, RationalInterval,
};

pub mod doc;
pub mod parse;
pub mod recheck;

mod calculus;
mod curve;
mod cxc;
mod jets;

pub use parse::{parse_bundle, parse_class, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;

/// Environment variable holding the default decimal precision.
pub const PRECISION_ENV: &str = "SESHADRI_PRECISION";

#[derive(Parser, Debug)]
#[command(name = "seshadri", version, about = "Exact positivity computations for curves, bundles and C x C")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Width of decimal enclosures, e.g. 1e-12 or 1/1000.
    #[arg(long, global = true, env = PRECISION_ENV, allow_hyphen_values = true)]
    precision: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Slopes and positivity of a bundle on a curve.
    Curve {
        #[command(subcommand)]
        cmd: curve::CurveCmd,
    },
    /// Operations producing new bundles.
    Bundle {
        #[command(subcommand)]
        cmd: curve::BundleCmd,
    },
    /// Seshadri constants from curve catalogs and bounds.
    Seshadri {
        #[command(subcommand)]
        cmd: calculus::SeshadriCmd,
    },
    /// Divisor classes a f1 + b f2 + c d on C x C.
    Cxc {
        #[command(subcommand)]
        cmd: cxc::CxcCmd,
    },
    /// Jet separation and generation thresholds.
    Jets {
        #[command(subcommand)]
        cmd: jets::JetsCmd,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub(crate) struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        Self(e.to_string())
    }
}

impl From<seshadri_core::error::Error> for CliError {
    fn from(e: seshadri_core::error::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<String> for CliError {
    fn from(e: String) -> Self {
        Self(e)
    }
}

pub(crate) type CmdResult = Result<Reply, CliError>;

/// What a command produced, in both output formats.
pub(crate) struct Reply {
    pub code: i32,
    pub json: Value,
    pub table: String,
    pub notes: Vec<String>,
}

impl Reply {
    pub fn new(json: Value, table: impl Into<String>) -> Self {
        Self { code: EXIT_OK, json, table: table.into(), notes: Vec::new() }
    }

    pub fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes = notes;
        self
    }
}

/// Two-column `key  value` rows.
#[derive(Default)]
pub(crate) struct Table {
    rows: Vec<(String, String)>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn row(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.rows.push((key.to_string(), value.to_string()));
        self
    }

    pub fn render(&self) -> String {
        let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        self.rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    }
}

/// Shared settings for rendering numbers.
pub(crate) struct Ctx {
    pub format: Format,
    pub precision: Rational,
    pub digits: u32,
    pub argv: Vec<String>,
}

impl Ctx {
    fn new(format: Format, precision: Rational, argv: Vec<String>) -> Self {
        let digits = digits_for(&precision);
        Self { format, precision, digits, argv }
    }

    /// The invocation without the program name, for certificate echoes.
    pub fn command_echo(&self) -> String {
        let quote = |a: &String| if a.contains(char::is_whitespace) { format!("\"{a}\"") } else { a.clone() };
        self.argv.iter().skip(1).map(quote).collect::<Vec<_>>().join(" ")
    }

    fn render_decimal<F: Fn(&Rational) -> RationalInterval>(&self, enclose: F, terminating: bool) -> String {
        let s = truncated_decimal(enclose, self.digits);
        if terminating && s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }

    /// Decimal digits of `x`, or `None` for integers.
    pub fn decimal(&self, x: &QuadExt) -> Option<String> {
        if let Some(r) = x.to_rational() {
            return self.decimal_rational(&r);
        }
        Some(self.render_decimal(|w| x.enclose(w), false))
    }

    pub fn decimal_rational(&self, r: &Rational) -> Option<String> {
        if r.is_integer() {
            return None;
        }
        let terminating = terminates_within(r, self.digits);
        Some(self.render_decimal(|_| RationalInterval::point(r.clone()), terminating))
    }

    pub fn decimal_value(&self, x: &ExactOrInterval) -> Option<String> {
        match x {
            ExactOrInterval::Exact(r) => self.decimal_rational(r),
            ExactOrInterval::Quad(q) => self.decimal(q),
            ExactOrInterval::Interval(_) => Some(self.render_decimal(|w| x.enclose(w), false)),
        }
    }

    /// `exact (~ decimal)` for tables.
    pub fn show(&self, x: &QuadExt) -> String {
        match self.decimal(x) {
            Some(d) => format!("{x}  (~ {d})"),
            None => x.to_string(),
        }
    }

    pub fn show_rational(&self, r: &Rational) -> String {
        match self.decimal_rational(r) {
            Some(d) => format!("{r}  (~ {d})"),
            None => r.to_string(),
        }
    }

    pub fn show_value(&self, x: &ExactOrInterval) -> String {
        match self.decimal_value(x) {
            Some(d) => format!("{x}  (~ {d})"),
            None => x.to_string(),
        }
    }

    /// `{"exact": ..., "decimal": ...}` for JSON.
    pub fn num(&self, x: &QuadExt) -> Value {
        number_json(x.to_string(), self.decimal(x))
    }

    pub fn num_rational(&self, r: &Rational) -> Value {
        number_json(r.to_string(), self.decimal_rational(r))
    }

    pub fn num_value(&self, x: &ExactOrInterval) -> Value {
        let mut v = number_json(x.to_string(), self.decimal_value(x));
        v["exact_form"] = json!(!matches!(x, ExactOrInterval::Interval(_)));
        v
    }
}

fn number_json(exact: String, decimal: Option<String>) -> Value {
    match decimal {
        Some(d) => json!({ "exact": exact, "decimal": d }),
        None => json!({ "exact": exact }),
    }
}

/// Least `k` with `10^-k <= precision`, capped at 60.
fn digits_for(precision: &Rational) -> u32 {
    let mut k = 0;
    let mut step = Rational::one();
    while step > *precision && k < 60 {
        step /= Rational::from_integer(BigInt::from(10));
        k += 1;
    }
    k
}

fn terminates_within(r: &Rational, digits: u32) -> bool {
    let scaled = r * Rational::from_integer(num_traits::pow(BigInt::from(10), digits as usize));
    scaled.is_integer()
}

pub(crate) fn genus(g: u32) -> Result<Genus, CliError> {
    Genus::new(g).map_err(CliError::from)
}

pub(crate) fn generality(s: &str) -> Result<Generality, CliError> {
    Generality::parse(s).ok_or_else(|| {
        CliError(format!("unknown generality `{s}` (expected arbitrary, general or very-general)"))
    })
}

fn dispatch(cli: Cli, ctx: &Ctx) -> CmdResult {
    match cli.command {
        Command::Curve { cmd } => curve::run_curve(cmd, ctx),
        Command::Bundle { cmd } => curve::run_bundle(cmd, ctx),
        Command::Seshadri { cmd } => calculus::run(cmd, ctx),
        Command::Cxc { cmd } => cxc::run(cmd, ctx),
        Command::Jets { cmd } => jets::run(cmd, ctx),
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text },
            };
        }
    };
    let precision = match cli.precision.as_deref() {
        Some(p) => match parse::parse_precision(p) {
            Ok(v) => v,
            Err(e) => return input_error(&format!("invalid precision: {e}")),
        },
        None => default_precision(),
    };
    let argv: Vec<String> = argv.iter().map(|s| s.to_string_lossy().into_owned()).collect();
    let ctx = Ctx::new(cli.format, precision, argv);
    match dispatch(cli, &ctx) {
        Ok(reply) => {
            let mut stderr = String::new();
            for n in &reply.notes {
                stderr.push_str(&format!("note: {n}\n"));
            }
            let stdout = match ctx.format {
                Format::Table => reply.table,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&reply.json).expect("values serialize");
                    s.push('\n');
                    s
                }
            };
            Outcome { code: reply.code, stdout, stderr }
        }
        Err(e) => input_error(&e.0),
    }
}

fn input_error(msg: &str) -> Outcome {
    Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

#[cfg(test)]
mod tests {
    use super::*;
    use seshadri_core::exact_num::rat;

    #[test]
    fn digit_counts() {
        assert_eq!(digits_for(&rat(1, 1_000_000_000_000)), 12);
        assert_eq!(digits_for(&rat(1, 2000)), 4);
        assert_eq!(digits_for(&rat(3, 1)), 0);
    }

    #[test]
    fn decimals_accompany_exact_values() {
        let ctx = Ctx::new(Format::Table, rat(1, 1000), vec![]);
        assert_eq!(ctx.show_rational(&rat(1, 2)), "1/2  (~ 0.5)");
        assert_eq!(ctx.show_rational(&rat(13, 6)), "13/6  (~ 2.166)");
        assert_eq!(ctx.show_rational(&rat(4, 1)), "4");
        let x = seshadri_core::exact_num::parse_quad("13 + 2/7*sqrt(6)").unwrap();
        assert_eq!(ctx.show(&x), "13 + 2/7*sqrt(6)  (~ 13.699)");
    }
}
