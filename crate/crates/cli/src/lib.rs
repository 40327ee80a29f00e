//! Command-line frontend: presentation and system file formats, the JSON
//! report, and command dispatch over `gsb-core`.

mod cache;
mod command;
mod error;
mod presfile;
mod report;
mod syntax;

pub use cache::{parse_cache, write_cache, CachedSystem};
pub use command::{execute, run_command, Caps, Command, CommandConfig};
pub use error::CliError;
pub use presfile::{parse_presentation_file, serialize_presentation};
pub use report::{digest, ErrorInfo, ReportDocument};
pub use syntax::{parse_order, parse_polynomial, parse_word, Letters, Span};
