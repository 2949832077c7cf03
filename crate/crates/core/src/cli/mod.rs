//! Command-line front end.
//!
//! ```text
//! pbkit validate FILE [--format text|json]
//! pbkit info FILE [--format text|json]
//! pbkit outcome FILE [--variant skip|stop] [--tie-break id|cost|input] [--format text|json]
//! pbkit canonicalize FILE [-o OUT]
//! pbkit generate [--spec SPEC.json] [--vote-type T] [--num-projects N] [--num-votes N]
//!                [--budget MIN..MAX] [--cost MIN..MAX] [--length MIN..MAX]
//!                [--points MIN..MAX] [--seed N] [--mutation CODE] [-o OUT]
//! ```
//!
//! Exit codes:
//!
//! - 0: success (for `validate`: no error-severity violations)
//! - 1: `validate` found error-severity violations
//! - 2: the file does not parse, or `outcome` cannot run on it
//! - 64: usage error, including an infeasible generator spec
//! - 66: an input file cannot be read
//! - 73: an output file cannot be written

mod generate;
mod summary;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::model::{PbInstance, VoteType};
use crate::parser::{parse_bytes, serialize_canonical};
use crate::rules::{greedy_outcome, GreedyVariant, RuleError, TieBreak};
use crate::validator::{self, ViolationCode};

pub use generate::{generate_random_instance, GenerateError, GeneratorSpec, Span};
pub use summary::InstanceSummary;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNUSABLE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_CANT_CREATE: i32 = 73;

#[derive(Debug, Parser)]
#[command(name = "pbkit", version, about = "Participatory-budgeting .pb file toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a file against the constraints declared in its META section
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Summarize a file
    Info {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the greedy rule and print the outcome
    Outcome {
        file: PathBuf,
        /// skip: pass over unaffordable projects; stop: end at the first one
        #[arg(long, default_value = "skip")]
        variant: GreedyVariant,
        /// Order among equal scores: id, cost or input
        #[arg(long, default_value = "id")]
        tie_break: TieBreak,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rewrite a file in canonical form
    Canonicalize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a random instance
    Generate {
        /// JSON generator spec; the flags below override its fields
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        vote_type: Option<VoteType>,
        #[arg(long)]
        num_projects: Option<usize>,
        #[arg(long)]
        num_votes: Option<usize>,
        #[arg(long)]
        budget: Option<Span<u64>>,
        #[arg(long)]
        cost: Option<Span<u64>>,
        #[arg(long)]
        length: Option<Span<usize>>,
        #[arg(long)]
        points: Option<Span<i64>>,
        #[arg(long)]
        seed: Option<u64>,
        /// Validator error code the instance should trigger, e.g. VOTE_LEN
        #[arg(long)]
        mutation: Option<ViolationCode>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Runs the command line `args` (program name first) and returns the exit
/// status. Results go to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let text = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "pbkit: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::new(EXIT_NO_INPUT, format!("cannot read {}: {e}", path.display())))
}

/// Reads and parses `path`; parse diagnostics go to `stderr`.
fn load(path: &Path, stderr: &mut dyn Write) -> Result<PbInstance, Failure> {
    let bytes = read_input(path)?;
    let result = parse_bytes(&bytes);
    match result.instance {
        Some(instance) => Ok(instance),
        None => {
            for d in &result.diagnostics {
                let _ = writeln!(stderr, "{}:{d}", path.display());
            }
            Err(Failure::new(
                EXIT_UNUSABLE,
                format!("{} does not parse", path.display()),
            ))
        }
    }
}

fn write_output(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    let result = match output {
        Some(path) => fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    };
    result.map_err(|e: io::Error| {
        let target = output.map_or_else(|| "standard output".to_string(), |p| p.display().to_string());
        Failure::new(EXIT_CANT_CREATE, format!("cannot write {target}: {e}"))
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Validate { file, format } => {
            let instance = load(&file, stderr)?;
            let violations = validator::validate(&instance);
            let report = match format {
                Format::Text => validator::render_text(&violations),
                Format::Json => {
                    let mut s = validator::render_json(&violations);
                    s.push('\n');
                    s
                }
            };
            write_output(None, &report, stdout)?;
            Ok(if validator::error_count(&violations) == 0 {
                EXIT_OK
            } else {
                EXIT_INVALID
            })
        }
        Command::Info { file, format } => {
            let instance = load(&file, stderr)?;
            let summary = InstanceSummary::of(&instance);
            let text = match format {
                Format::Text => summary.to_string(),
                Format::Json => to_json(&summary),
            };
            write_output(None, &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Outcome {
            file,
            variant,
            tie_break,
            format,
        } => {
            let instance = load(&file, stderr)?;
            let outcome = match greedy_outcome(&instance, variant, tie_break) {
                Ok(outcome) => outcome,
                Err(RuleError::ValidationRequired(violations)) => {
                    for v in &violations {
                        let _ = writeln!(stderr, "{v}");
                    }
                    return Err(Failure::new(
                        EXIT_UNUSABLE,
                        format!("{} has {} validation error(s)", file.display(), violations.len()),
                    ));
                }
                Err(e) => return Err(Failure::new(EXIT_UNUSABLE, e.to_string())),
            };
            let text = match format {
                Format::Text => outcome.to_string(),
                Format::Json => to_json(&outcome),
            };
            write_output(None, &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Canonicalize { file, output } => {
            let instance = load(&file, stderr)?;
            write_output(output.as_deref(), &serialize_canonical(&instance), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Generate {
            spec,
            vote_type,
            num_projects,
            num_votes,
            budget,
            cost,
            length,
            points,
            seed,
            mutation,
            output,
        } => {
            let mut gen = match spec {
                Some(path) => {
                    let bytes = read_input(&path)?;
                    serde_json::from_slice::<GeneratorSpec>(&bytes)
                        .map_err(|e| Failure::new(EXIT_USAGE, format!("bad generator spec {}: {e}", path.display())))?
                }
                None => {
                    let vote_type =
                        vote_type.ok_or_else(|| Failure::new(EXIT_USAGE, "generate needs --vote-type or --spec"))?;
                    GeneratorSpec::new(vote_type, 5, 10, 0)
                }
            };
            if let Some(v) = vote_type {
                gen.vote_type = v;
            }
            if let Some(n) = num_projects {
                gen.num_projects = n;
            }
            if let Some(n) = num_votes {
                gen.num_votes = n;
            }
            if let Some(s) = budget {
                gen.budget = s;
            }
            if let Some(s) = cost {
                gen.cost = s;
            }
            if let Some(s) = length {
                gen.length = s;
            }
            if let Some(s) = points {
                gen.points = s;
            }
            if let Some(s) = seed {
                gen.seed = s;
            }
            if mutation.is_some() {
                gen.mutation = mutation;
            }
            let instance = generate_random_instance(&gen).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            write_output(output.as_deref(), &serialize_canonical(&instance), stdout)?;
            Ok(EXIT_OK)
        }
    }
}
