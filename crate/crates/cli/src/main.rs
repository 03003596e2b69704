//! `coxfact`: reflection-group invariants, character tables and reflection
//! factorization counts of the Coxeter element.

mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use coxfact_core::character::CharacterTable;
use coxfact_core::counting::{count_methods, default_max_l, CountSummary, DpConfig, Method};
use coxfact_core::error::{CountError, GroupError};
use coxfact_core::group::{GroupConfig, GroupSpec, ReflectionGroup, DEFAULT_MAX_ORDER};
use coxfact_core::harness::{run_suite_on, SuiteOptions};
use coxfact_core::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VERIFICATION: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "coxfact", version, about = "Reflection factorizations of Coxeter elements, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest factorization length (default: rank + 6).
    #[arg(long, global = true)]
    max_l: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Refuse to enumerate groups larger than this.
    #[arg(long, global = true, env = "COXFACT_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, order, reflections, hyperplanes, degrees, Coxeter number.
    Info { group: String },
    /// Exact character table.
    Table { group: String },
    /// Factorization counts N_0, …, N_L.
    Count { group: String },
    /// Run the full identity suite.
    Verify {
        group: String,
        /// Perturb one character-table entry (seeded) to exercise the suite.
        #[arg(long)]
        inject_fault: Option<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Table { .. } => "table",
            Command::Count { .. } => "count",
            Command::Verify { .. } => "verify",
        }
    }

    fn group(&self) -> &str {
        match self {
            Command::Info { group }
            | Command::Table { group }
            | Command::Count { group }
            | Command::Verify { group, .. } => group,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Dp,
    Spectral,
    Exterior,
    Closed,
    Egf,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Dp => vec![Method::Dp],
            MethodArg::Spectral => vec![Method::Spectral],
            MethodArg::Exterior => vec![Method::Exterior],
            MethodArg::Closed => vec![Method::Closed],
            MethodArg::Egf => vec![Method::Egf],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Top-level JSON document.
#[derive(Debug, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub group: String,
    pub command: String,
    pub payload: T,
    pub version: String,
}

struct Failure {
    code: u8,
    message: String,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Group(GroupError::UnknownName(_) | GroupError::Unsupported { .. }) => EXIT_USAGE,
        Error::Group(GroupError::TooLarge { .. }) | Error::Count(CountError::MemoryGuard { .. }) => {
            EXIT_RESOURCE
        }
        _ => EXIT_VERIFICATION,
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            code: exit_code_for(&err),
            message: err.to_string(),
        }
    }
}

fn build(cli: &Cli) -> Result<ReflectionGroup, Failure> {
    let spec = GroupSpec::parse(cli.command.group()).map_err(Error::from)?;
    let config = GroupConfig {
        max_order: cli.max_order,
    };
    Ok(ReflectionGroup::build_with(spec, config)?)
}

fn envelope<T: Serialize>(group: &str, command: &str, payload: T) -> String {
    let doc = Envelope {
        group: group.to_string(),
        command: command.to_string(),
        payload,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
}

/// Produces the output text and the exit code.
fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let group = build(cli)?;
    let name = group.name();
    let command = cli.command.name();
    let max_l = cli.max_l.unwrap_or_else(|| default_max_l(&group));
    match &cli.command {
        Command::Info { .. } => {
            let info = group.info();
            let text = match cli.format {
                Format::Json => envelope(&name, command, &info),
                Format::Csv => render::info_csv(&info),
                Format::Text => render::info_text(&info),
            };
            Ok((text, EXIT_OK))
        }
        Command::Table { .. } => {
            let table = CharacterTable::compute(&group).map_err(Error::from)?;
            let report = table.report(&group);
            let text = match cli.format {
                Format::Json => envelope(&name, command, &report),
                Format::Csv => render::table_csv(&report),
                Format::Text => render::table_text(&report),
            };
            Ok((text, EXIT_OK))
        }
        Command::Count { .. } => {
            let summary = count_methods(&group, &cli.method.methods(), max_l, DpConfig::default());
            let code = count_exit_code(&summary);
            let text = match cli.format {
                Format::Json => envelope(&name, command, &summary),
                Format::Csv => render::count_csv(&summary),
                Format::Text => render::count_text(&name, &summary),
            };
            Ok((text, code))
        }
        Command::Verify { inject_fault, .. } => {
            let options = SuiteOptions {
                group: GroupConfig {
                    max_order: cli.max_order,
                },
                fault_seed: *inject_fault,
                ..Default::default()
            };
            let report = run_suite_on(&group, max_l, options);
            let code = if report.all_passed() { EXIT_OK } else { EXIT_VERIFICATION };
            let text = match cli.format {
                Format::Json => envelope(&name, command, &report),
                Format::Csv => render::verify_csv(&report),
                Format::Text => render::verify_text(&report),
            };
            Ok((text, code))
        }
    }
}

fn count_exit_code(summary: &CountSummary) -> u8 {
    if summary.hit_resource_guard() {
        EXIT_RESOURCE
    } else if !summary.failures.is_empty() || summary.agreement == Some(false) {
        EXIT_VERIFICATION
    } else {
        EXIT_OK
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(&cli) {
        Ok((text, code)) => {
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
