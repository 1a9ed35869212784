//! Command-line front end: expression parsing and command execution.

pub mod args;
pub mod parse;
pub mod run;

pub use parse::{parse, parse_lines, ParseError, ParseErrorKind, Pos};
pub use run::{run, Command, Outcome, Request};
