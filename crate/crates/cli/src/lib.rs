//! A small declarative language for rings, modules and closure checks, and a
//! runner producing JSON reports.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod runner;

pub use parser::{parse, ParseError};
pub use runner::{run, Report, RunOptions};

/// Parses and runs `src`; parse failures become a one-record error report.
pub fn run_source(src: &str, opts: &RunOptions) -> Report {
    match parse(src) {
        Ok(session) => run(&session, opts),
        Err(e) => Report::parse_error(&e),
    }
}
