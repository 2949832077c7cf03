use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// Stable codes for everything the parser can report.
///
/// | code | severity | trigger |
/// |------|----------|---------|
/// | `InvalidUtf8` | error | input bytes are not UTF-8 |
/// | `UnexpectedLine` | error | a non-blank line before `META` |
/// | `SectionMissing` | error | `META`, `PROJECTS` or `VOTES` never appears |
/// | `SectionOutOfOrder` | error | a section keyword appears out of order or twice |
/// | `HeaderMissingRequiredColumn` | error | a section header lacks (or misplaces) a required column |
/// | `DuplicateColumn` | error | a header names a column twice |
/// | `RowArityMismatch` | error | a row has a different number of fields than its header |
/// | `DuplicateMetaKey` | error | a META key repeats |
/// | `MissingRequiredKey` | error | an obligatory META key is absent |
/// | `UnknownVoteType` | error | `vote_type` is not one of the four types |
/// | `MalformedNumber` | error | a typed numeric field does not parse |
/// | `NegativeValue` | error | a cost, budget or cost bound is below zero |
/// | `EmptyIdentifier` | error | an empty `project_id`, `voter_id` or META key |
/// | `DuplicateProjectId` | error | two projects share an id |
/// | `DuplicateVoterId` | error | two votes share a voter id |
/// | `UnknownProjectReference` | error | a vote names a project that does not exist |
/// | `DuplicateVoteEntry` | error | a vote names the same project twice |
/// | `EmptyListItem` | error | a comma-separated list has an empty item |
/// | `PointsLengthMismatch` | error | `points` and `vote` differ in length |
/// | `UnknownMetaKey` | warning | a META key is non-standard (kept in `extra`) |
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DiagnosticCode {
    InvalidUtf8,
    UnexpectedLine,
    SectionMissing,
    SectionOutOfOrder,
    HeaderMissingRequiredColumn,
    DuplicateColumn,
    RowArityMismatch,
    DuplicateMetaKey,
    MissingRequiredKey,
    UnknownVoteType,
    MalformedNumber,
    NegativeValue,
    EmptyIdentifier,
    DuplicateProjectId,
    DuplicateVoterId,
    UnknownProjectReference,
    DuplicateVoteEntry,
    EmptyListItem,
    PointsLengthMismatch,
    UnknownMetaKey,
}

impl DiagnosticCode {
    pub fn severity(self) -> Severity {
        match self {
            DiagnosticCode::UnknownMetaKey => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A positioned parser finding. `line` and `column` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: Option<usize>,
    pub code: DiagnosticCode,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: DiagnosticCode, line: usize, column: Option<usize>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: code.severity(),
            line,
            column,
            code,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(col) => write!(
                f,
                "{}:{}: {} {}: {}",
                self.line, col, self.severity, self.code, self.message
            ),
            None => write!(f, "{}: {} {}: {}", self.line, self.severity, self.code, self.message),
        }
    }
}
