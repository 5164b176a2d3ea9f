//! Command-line front end for `rnc-core`: reads JSON data, runs a computation and writes either
//! a versioned JSON envelope or a plain-text rendering.

pub mod doc;
pub mod error;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use rnc_core::construct::{construct, expected_count, Outcome};
use rnc_core::curve::verify_datum;
use rnc_core::equivalence::signature;
use rnc_core::obstruction::nonexistence_certificate;
use rnc_core::postulation::{ah_exceptions_suite, defect_explanation, hilbert_function};
use rnc_core::random::{forward_datum, generic_datum};
use rnc_core::{Datum, Error as CoreError, Scalar};
use serde::Serialize;
use serde_json::{json, Value};

use doc::{from_json, CountDoc, CurveDoc, DatumDoc, EquivalentDoc, ExistenceDoc, ObstructionDoc, PostulationDoc, ReportDoc, RowDoc, SignatureDoc};
pub use error::{exit, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "rnc", version, about = "Rational normal curves through points and secant to codimension-two spaces")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "structured", global = true)]
    pub format: Format,
    /// Seed for `random-datum` (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find the curve through the points, (n-1)-secant to the spaces.
    Construct { input: Option<String> },
    /// Check the document's curve against its datum.
    Verify { input: Option<String> },
    /// Certify that no curve exists for four or more points.
    Obstruct { input: Option<String> },
    /// Parameter count and classification for a shape (n, p, l).
    Expect { n: usize, p: usize, l: usize },
    /// Hilbert function of double points and double spaces.
    Hilbert {
        input: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Known defective cases of double points, with a control row.
    AhSuite,
    /// Ordered projective equivalence of two data.
    Equivalent { a: String, b: String },
    /// Seeded random datum.
    RandomDatum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        l: usize,
        /// Take points and chord spaces on a random curve.
        #[arg(long)]
        forward: bool,
        /// Emit the generating curve too (implies --forward).
        #[arg(long)]
        oracle: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::Verify { .. } => "verify",
            Command::Obstruct { .. } => "obstruct",
            Command::Expect { .. } => "expect",
            Command::Hilbert { .. } => "hilbert",
            Command::AhSuite => "ah-suite",
            Command::Equivalent { .. } => "equivalent",
            Command::RandomDatum { .. } => "random-datum",
        }
    }
}

/// A finished command: what to print and how to exit.
#[derive(Debug)]
pub struct Output {
    pub status: &'static str,
    pub code: u8,
    pub result: Value,
    pub text: String,
    /// Print `result` as is instead of wrapping it in an envelope.
    pub bare: bool,
}

impl Output {
    fn ok(status: &'static str, result: impl Serialize, text: String) -> Self {
        Output { status, code: exit::OK, result: to_value(result), text, bare: false }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("documents serialize")
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Io<'_> {
    fn read(&mut self, input: Option<&str>) -> Result<String, CliError> {
        match input {
            None | Some("-") => {
                if self.stdin_used {
                    return Err(CliError::Usage("standard input can be read only once".into()));
                }
                self.stdin_used = true;
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
                Ok(s)
            }
            Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source }),
        }
    }

    fn datum_doc(&mut self, input: Option<&str>) -> Result<DatumDoc, CliError> {
        from_json(&self.read(input)?)
    }
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Output, CliError> {
    let mut io = Io { stdin, stdin_used: false };
    match &cli.command {
        Command::Construct { input } => {
            let d = io.datum_doc(input.as_deref())?.datum()?;
            Ok(match construct(&d)? {
                Outcome::Exists(cert) => Output::ok("exists", ExistenceDoc::from_core(&cert), cert.to_string()),
                Outcome::Obstructed(cert) => Output {
                    status: "obstructed",
                    code: exit::OBSTRUCTED,
                    result: to_value(ObstructionDoc::from_core(&cert)),
                    text: format!("no curve exists\n{cert}"),
                    bare: false,
                },
                Outcome::Unsupported(reason) => Output {
                    status: "unsupported",
                    code: exit::UNSUPPORTED,
                    text: format!("unsupported: {reason}"),
                    result: json!({ "reason": reason }),
                    bare: false,
                },
            })
        }
        Command::Verify { input } => {
            let doc = io.datum_doc(input.as_deref())?;
            let (d, curve) = (doc.datum()?, doc.curve()?);
            let report = verify_datum(&curve, &d)?;
            let mut out = Output::ok("passed", ReportDoc::from_core(&report), format!("curve {curve}\n{report}"));
            if !report.passed {
                out.status = "failed";
                out.code = exit::VERIFY_FAILED;
            }
            Ok(out)
        }
        Command::Obstruct { input } => {
            let d = io.datum_doc(input.as_deref())?.datum()?;
            let cert = nonexistence_certificate(&d)?;
            let mut out = Output::ok("obstructed", ObstructionDoc::from_core(&cert), cert.to_string());
            out.code = exit::OBSTRUCTED;
            Ok(out)
        }
        Command::Expect { n, p, l } => {
            let a = expected_count(*n, *p, *l)?;
            Ok(Output::ok("ok", CountDoc::from_core(&a), a.to_string()))
        }
        Command::Hilbert { input, degree } => {
            let spec = io.datum_doc(input.as_deref())?.scheme(*degree)?;
            let report = hilbert_function(&spec);
            let mut doc = PostulationDoc::from_core(&report);
            let mut text = report.to_string();
            if report.deficit > 0 {
                match defect_explanation(&spec) {
                    Ok(w) => {
                        text.push_str(&format!("\nthe defect is explained by the curve {}: {}", w.curve, w.ledger));
                        doc.witness = Some(doc::WitnessDoc::from_core(&w));
                    }
                    Err(CoreError::Unsupported(_)) => {}
                    Err(e) => text.push_str(&format!("\nno witness curve: {e}")),
                }
            }
            Ok(Output::ok("ok", doc, text))
        }
        Command::AhSuite => {
            let rows = ah_exceptions_suite::<Scalar>();
            let text = rows.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
            Ok(Output::ok("ok", json!({ "rows": rows.iter().map(RowDoc::from).collect::<Vec<_>>() }), text))
        }
        Command::Equivalent { a, b } => {
            let da = io.datum_doc(Some(a))?.datum()?;
            let db = io.datum_doc(Some(b))?.datum()?;
            equivalent(&da, &db)
        }
        Command::RandomDatum { n, p, l, forward, oracle } => {
            if *n < 3 {
                return Err(CoreError::BadDimension(*n).into());
            }
            let seed = cli.seed.unwrap_or(0);
            let (d, curve) = if *forward || *oracle {
                let (d, c) = forward_datum::<Scalar>(*n, *p, *l, seed)?;
                (d, oracle.then_some(c))
            } else {
                (generic_datum::<Scalar>(*n, *p, *l, seed), None)
            };
            let mut doc = DatumDoc::from_core(&d);
            doc.version = Some(doc::VERSION);
            doc.seed = Some(seed);
            let mut text = d.to_string();
            if let Some(c) = &curve {
                text.push_str(&format!("curve {c}"));
                doc.curve = Some(CurveDoc::from_param(c));
            }
            Ok(Output { status: "ok", code: exit::OK, result: to_value(doc), text: text.trim_end().to_string(), bare: true })
        }
    }
}

fn equivalent(a: &Datum, b: &Datum) -> Result<Output, CliError> {
    if a.dim() != b.dim() || a.shape() != b.shape() {
        let text = "not equivalent: the data have different shapes".to_string();
        return Ok(Output::ok("ok", EquivalentDoc { equivalent: false, signatures: None }, text));
    }
    let (sa, sb) = (signature(a)?, signature(b)?);
    let equivalent = sa == sb;
    let text = format!("{}\nsignature A: {sa}\nsignature B: {sb}", if equivalent { "equivalent" } else { "not equivalent" });
    let doc = EquivalentDoc { equivalent, signatures: Some([SignatureDoc::from_core(&sa), SignatureDoc::from_core(&sb)]) };
    Ok(Output::ok("ok", doc, text))
}

/// Pretty JSON that keeps arrays of scalars on one line.
pub fn pretty(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push_str(&format!("[{}]", parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(depth + 1), Value::String(k.clone())));
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { exit::USAGE } else { exit::OK };
        }
    };
    let structured = cli.format == Format::Structured;
    let command = cli.command.name();
    match execute(&cli, stdin) {
        Ok(out) => {
            let printed = if !structured {
                out.text
            } else if out.bare {
                pretty(&out.result)
            } else {
                pretty(&json!({ "version": doc::VERSION, "command": command, "status": out.status, "result": out.result }))
            };
            if writeln!(stdout, "{printed}").is_err() {
                return exit::FAILURE;
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if structured {
                let error = json!({ "kind": e.kind(), "message": e.to_string(), "location": e.location() });
                let _ = writeln!(
                    stdout,
                    "{}",
                    pretty(&json!({ "version": doc::VERSION, "command": command, "status": "error", "error": error }))
                );
            }
            e.exit_code()
        }
    }
}
