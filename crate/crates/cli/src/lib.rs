//! Command-line driver for the cipher toolkit. Parsing and dispatch live in
//! the library so tests can exercise them without spawning processes.

pub mod options;
pub mod run;

pub use options::{parse_options, usage, version, InvocationPlan, Mode, UsageError};
pub use run::{run, run_with, CliError};

/// Parses and runs, mapping every outcome to an exit code: 0 on success,
/// 1 on any error (with the message on the error stream).
pub fn main_inner(argv: &[String]) -> i32 {
    let plan = match parse_options(argv) {
        Ok(plan) => plan,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("run `cipherlab --help` for usage");
            return 1;
        }
    };
    match run(&plan) {
        Ok(()) | Err(CliError::BrokenPipe) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
