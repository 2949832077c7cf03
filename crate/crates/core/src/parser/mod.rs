//! Reading and writing the `.pb` text format.
//!
//! A file is three sections introduced by the keywords `META`, `PROJECTS` and
//! `VOTES`, each on its own line. Every section starts with a header row.
//! Fields are separated by `;` and trimmed; list-valued fields (`category`,
//! `target`, `vote`, `points`) are separated by `,`. Blank lines are ignored
//! and both LF and CRLF line endings are accepted.

mod diagnostic;
mod read;
mod write;

pub use diagnostic::{Diagnostic, DiagnosticCode, Severity};
pub use read::{parse, parse_bytes, ParseResult};
pub use write::serialize_canonical;
