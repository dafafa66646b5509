//! Command-line front end. [`run`] returns the exit code and the text to print,
//! so it can be driven from tests without spawning a process.

use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::braid::{braid_equals, normal_form, theta};
use crate::error::Error;
use crate::parse::{parse_braid, parse_singular, ParseError};
use crate::pure::abelianize;
use crate::singular::{decompose, desingularize, omega_oracle};
use crate::trace::{trace_normal_form, EdgeSet, TraceWord};
use crate::verify::{run_suite, VerifyOptions, DEFAULT_SEED, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sbraid",
    version,
    about = "Braids, singular braids and the desingularization map"
)]
struct Cli {
    /// Print plain text instead of JSON.
    #[arg(long, global = true)]
    plain: bool,

    /// Strand count; inferred from the largest generator index when omitted.
    #[arg(long, global = true)]
    n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Garside normal form of a braid word.
    Nf { word: String },
    /// Whether two braid words are equal in B_n.
    Eq { left: String, right: String },
    /// The permutation of a braid word.
    Theta { word: String },
    /// Linking-number coordinates of a pure braid in the basis A_ij.
    Abel { word: String },
    /// Desingularization of a singular braid word in Z[B_n].
    Eta { word: String },
    /// Decomposition of a singular braid word as (trace over vertices, braid).
    Sbnf { word: String },
    /// Whether two singular braid words are equal in SB_n.
    Sbeq { left: String, right: String },
    /// Lexicographically least representative of a trace.
    Tracenf {
        /// Whitespace-separated letters.
        word: String,
        /// Commuting pairs, e.g. "a-b b-c".
        #[arg(long, default_value = "")]
        edges: String,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        /// Wall-clock cap in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Word length for the randomized suites.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Verify(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(format!("parse error: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(format!("error: {e}"))
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli) {
        Ok(out) => (EXIT_OK, out),
        Err(Failure::Usage(msg)) => (EXIT_USAGE, msg),
        Err(Failure::Verify(msg)) => (EXIT_VERIFY_FAILED, msg),
    }
}

/// Strand count shared by two words: the explicit `--n`, else the larger inferred count.
fn common_n(left: &str, right: &str, n: Option<usize>, singular: bool) -> Result<usize, Failure> {
    if let Some(n) = n {
        return Ok(n);
    }
    let infer = |w: &str| -> Result<usize, ParseError> {
        Ok(if singular {
            parse_singular(w, None)?.n()
        } else {
            parse_braid(w, None)?.n()
        })
    };
    Ok(infer(left)?.max(infer(right)?))
}

fn render(plain: bool, text: String, value: serde_json::Value) -> String {
    if plain {
        text
    } else {
        value.to_string()
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let plain = cli.plain;
    if cli.n == Some(0) {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let out = match &cli.command {
        Command::Nf { word } => {
            let w = parse_braid(word, cli.n)?;
            let nf = normal_form(&w);
            let factors: Vec<Vec<usize>> = nf.factors().iter().map(|p| p.images_one_based()).collect();
            render(
                plain,
                nf.key(),
                json!({ "n": nf.n(), "key": nf.key(), "inf": nf.inf(), "factors": factors, "word": nf.to_word().to_string() }),
            )
        }
        Command::Eq { left, right } => {
            let n = common_n(left, right, cli.n, false)?;
            let equal = braid_equals(&parse_braid(left, Some(n))?, &parse_braid(right, Some(n))?)?;
            render(plain, equal.to_string(), json!({ "equal": equal }))
        }
        Command::Theta { word } => {
            let images = theta(&parse_braid(word, cli.n)?).images_one_based();
            let text = images.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
            render(plain, text, json!({ "images": images }))
        }
        Command::Abel { word } => {
            let v = abelianize(&parse_braid(word, cli.n)?)?;
            render(plain, v.to_string(), v.to_json())
        }
        Command::Eta { word } => {
            let p = desingularize(&parse_singular(word, cli.n)?)?;
            render(plain, p.to_string(), p.to_json())
        }
        Command::Sbnf { word } => {
            let e = decompose(&parse_singular(word, cli.n)?, &omega_oracle())?;
            let keys: Vec<&str> = e.trace.letters().iter().map(|v| v.key()).collect();
            let text = format!("trace: [{}] braid: {}", keys.join(", "), e.braid.key());
            render(plain, text, e.to_json())
        }
        Command::Sbeq { left, right } => {
            let n = common_n(left, right, cli.n, true)?;
            let oracle = omega_oracle();
            let l = decompose(&parse_singular(left, Some(n))?, &oracle)?;
            let r = decompose(&parse_singular(right, Some(n))?, &oracle)?;
            let equal = l == r;
            render(plain, equal.to_string(), json!({ "equal": equal }))
        }
        Command::Tracenf { word, edges } => {
            let mut graph = EdgeSet::new();
            for pair in edges
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
            {
                match pair.split_once('-') {
                    Some((a, b)) if !a.is_empty() && !b.is_empty() => graph.insert(a.to_string(), b.to_string()),
                    _ => return Err(Failure::Usage(format!("malformed edge `{pair}`; expected `a-b`"))),
                }
            }
            let letters: Vec<String> = word.split_whitespace().map(str::to_string).collect();
            let nf = trace_normal_form(&TraceWord::new(letters), &graph);
            render(plain, nf.to_string(), json!({ "letters": nf.letters() }))
        }
        Command::Verify {
            suite,
            budget,
            max_len,
            seed,
        } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!(
                    "unknown suite `{suite}`; expected one of {}",
                    SUITES.join(", ")
                )));
            }
            let budget = match budget {
                Some(b) if !(b.is_finite() && *b >= 0.0) => {
                    return Err(Failure::Usage(
                        "--budget must be a non-negative number of seconds".into(),
                    ))
                }
                b => b.map(Duration::from_secs_f64),
            };
            let opts = VerifyOptions {
                seed: *seed,
                budget,
                max_len: *max_len,
            };
            let report = run_suite(suite, &opts)?;
            let text = if plain {
                let mut lines = vec![format!(
                    "{}: {} ({} checked, {} failures, {} ms{})",
                    report.suite,
                    if report.passed() { "PASS" } else { "FAIL" },
                    report.checked,
                    report.failure_count,
                    report.elapsed_ms,
                    if report.complete { "" } else { ", budget exhausted" }
                )];
                lines.extend(report.stats.iter().map(|(k, v)| format!("  {k}: {v}")));
                lines.extend(report.failures.iter().map(|f| format!("  failure: {f}")));
                lines.join("\n")
            } else {
                serde_json::to_string(&report).expect("report serializes")
            };
            if !report.passed() {
                return Err(Failure::Verify(text));
            }
            text
        }
    };
    Ok(out)
}
