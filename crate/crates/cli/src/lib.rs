//! Command-line front end for `ppmod-core`.
//!
//! [`run`] maps an argument vector to an exit code and one output document.
//! Exit code 0 means the question was answered (negative answers included),
//! 2 means the input could not be read, and 3 means the input was read but
//! violates a mathematical precondition of the requested operation.

mod args;
mod report;
mod theories;
mod verbs;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::Format;
pub use report::Report;
pub use theories::{bundled_theory, load_theory, BUNDLED};

use ppmod_core::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Why a command produced no verdict.
#[derive(Debug)]
pub enum Failure {
    /// Malformed arguments or unreadable files.
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Library(e) if e.is_precondition() => EXIT_PRECONDITION,
            _ => EXIT_USAGE,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "USAGE",
            Failure::Library(e) => match e {
                Error::Syntax { .. } => "SYNTAX",
                Error::Arity(_) => "ARITY",
                Error::EmptyClause { .. } => "EMPTY_CLAUSE",
                Error::InvalidGroup(_) => "INVALID_GROUP",
                Error::GroupMismatch(_) => "GROUP_MISMATCH",
                Error::Shape(_) => "SHAPE",
                Error::IllDefined { .. } => "ILL_DEFINED",
                Error::NotContained(_) => "NOT_CONTAINED",
                Error::NotPure => "NOT_PURE",
                Error::NotPureInjective => "NOT_PURE_INJECTIVE",
                Error::EscapesClass(_) => "ESCAPES_CLASS",
                Error::Unsupported(_) => "UNSUPPORTED",
                Error::PositiveRank => "POSITIVE_RANK",
                Error::BudgetExceeded { .. } => "BUDGET_EXCEEDED",
            },
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Library(e) => e.to_string(),
        }
    }
}

/// Runs one command. `argv` excludes the program name.
pub fn run<S: AsRef<str>>(argv: &[S]) -> (i32, String) {
    let full = std::iter::once("ppmod").chain(argv.iter().map(AsRef::as_ref));
    let cli = match args::Cli::try_parse_from(full) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return (code, e.render().to_string());
        }
    };
    let threads = cli.threads;
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            return (
                EXIT_USAGE,
                format!("error: cannot start {threads} threads: {e}\n"),
            )
        }
    };
    let verb = verbs::verb_name(&cli.command);
    let (code, report) = match pool.install(|| verbs::execute(&cli.command)) {
        Ok(report) => (EXIT_OK, report),
        Err((inputs, failure)) => (failure.exit_code(), Report::failure(verb, inputs, &failure)),
    };
    (code, report.render(cli.format))
}
