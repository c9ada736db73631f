//! Command line front end: document validation, concept lattices of fuzzy contexts,
//! MacNeille completions and the randomized law harness.

pub mod commands;
pub mod laws;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{CommandError, Outcome};
pub use laws::Profile;

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for a failed law, validation or cross-check.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for a usage error: bad flags or unreadable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qfca",
    version,
    about = "Concept analysis over finite quantaloids"
)]
pub struct Cli {
    /// Bound on candidate weight vectors per type when enumerating presheaves.
    #[arg(long, global = true, env = "QFCA_CAP", default_value_t = qfca::DEFAULT_CAP)]
    pub cap: u128,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a document and print every violated law.
    Validate {
        file: PathBuf,
        /// Document kind; read from the schema tag when omitted.
        #[arg(long, value_enum)]
        kind: Option<DocKind>,
        /// Also require the quantale of the document to be divisible.
        #[arg(long)]
        require_divisible: bool,
    },
    /// Compute the concept lattice of a fuzzy context.
    Concepts {
        context: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Isbell)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Algorithm::Generated)]
        algorithm: Algorithm,
        /// Write the lattice document here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the MacNeille completion of a category.
    Macneille {
        category: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the law registry on seeded random instances.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Profile::Small)]
        profile: Profile,
        /// Run only the named laws.
        #[arg(long)]
        only: Vec<String>,
        /// List the registered laws and exit.
        #[arg(long)]
        list: bool,
        /// Corrupt one composition entry of the Łukasiewicz 3-chain before checking residuation.
        #[arg(long)]
        inject_mutant: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DocKind {
    Quantale,
    Quantaloid,
    Category,
    Distributor,
    Context,
    Infomorphism,
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Isbell,
    Kan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Brute,
    Generated,
}

/// Parse `args` and run the command, writing to `out` and `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match commands::dispatch(&cli, out, err) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Failed) => EXIT_FAILURE,
        Err(CommandError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CommandError::Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}
