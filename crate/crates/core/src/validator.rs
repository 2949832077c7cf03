//! Checks a parsed instance against the constraints its META section
//! declares or defaults.
//!
//! Validation never fails: every finding is a [`Violation`] value and all
//! checks run, so one report covers the whole file. Errors mean the instance
//! breaks its own contract; warnings are informational.
//!
//! | code | severity | rule |
//! |------|----------|------|
//! | `COUNT_PROJECTS` | E | number of projects equals `num_projects` |
//! | `COUNT_VOTES` | E | number of votes equals `num_votes` |
//! | `UNKNOWN_PROJECT_REF` | E | every voted project id exists |
//! | `DUPLICATE_VOTE_ENTRY` | E | a vote lists each project at most once |
//! | `VOTE_LEN` | E | `min_length <= len(vote) <= max_length` |
//! | `SUM_COST` | E | approval: `min_sum_cost <= total cost of approved projects <= max_sum_cost` |
//! | `POINTS_PRESENT` | E | approval/ordinal: no points are given |
//! | `POINTS_REQUIRED` | E | cumulative/scoring: a non-empty vote carries points |
//! | `POINTS_LENGTH` | E | points and vote have the same length |
//! | `POINT_RANGE` | E | `min_points <= p <= max_points`; cumulative also needs `p > 0` |
//! | `SUM_POINTS` | E | cumulative: `min_sum_points <= sum(points) <= max_sum_points` |
//! | `POINTS_ORDER` | E | cumulative/scoring: points are non-increasing along the vote |
//! | `META_UNKNOWN_KEY` | W | a non-standard META key |
//! | `NONSTANDARD_COLUMN` | W | a non-standard PROJECTS or VOTES column |
//! | `DATE_FORMAT` | W | `date_begin`/`date_end` matches no common date shape |
//! | `BUDGET_UNDERFUNDED` | W | the budget is below the cheapest project's cost |
//! | `EMPTY_CATEGORY` | W | a project has no category while the header has a category column |
//! | `UNREPRESENTABLE_VALUE` | W | a value contains `;`, a line break, surrounding spaces, or a list item contains `,` |

use std::collections::{HashMap, HashSet};
use std::fmt;

use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Bound, MetaSection, PbInstance, Project, VoteRecord, VoteType};
pub use crate::parser::Severity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    CountProjects,
    CountVotes,
    UnknownProjectRef,
    DuplicateVoteEntry,
    VoteLen,
    SumCost,
    PointsPresent,
    PointsRequired,
    PointsLength,
    PointRange,
    SumPoints,
    PointsOrder,
    MetaUnknownKey,
    NonstandardColumn,
    DateFormat,
    BudgetUnderfunded,
    EmptyCategory,
    UnrepresentableValue,
}

impl ViolationCode {
    pub const ALL: [ViolationCode; 18] = [
        ViolationCode::CountProjects,
        ViolationCode::CountVotes,
        ViolationCode::UnknownProjectRef,
        ViolationCode::DuplicateVoteEntry,
        ViolationCode::VoteLen,
        ViolationCode::SumCost,
        ViolationCode::PointsPresent,
        ViolationCode::PointsRequired,
        ViolationCode::PointsLength,
        ViolationCode::PointRange,
        ViolationCode::SumPoints,
        ViolationCode::PointsOrder,
        ViolationCode::MetaUnknownKey,
        ViolationCode::NonstandardColumn,
        ViolationCode::DateFormat,
        ViolationCode::BudgetUnderfunded,
        ViolationCode::EmptyCategory,
        ViolationCode::UnrepresentableValue,
    ];

    pub fn severity(self) -> Severity {
        use ViolationCode::*;
        match self {
            MetaUnknownKey | NonstandardColumn | DateFormat | BudgetUnderfunded | EmptyCategory
            | UnrepresentableValue => Severity::Warning,
            _ => Severity::Error,
        }
    }

    pub fn as_str(self) -> &'static str {
        use ViolationCode::*;
        match self {
            CountProjects => "COUNT_PROJECTS",
            CountVotes => "COUNT_VOTES",
            UnknownProjectRef => "UNKNOWN_PROJECT_REF",
            DuplicateVoteEntry => "DUPLICATE_VOTE_ENTRY",
            VoteLen => "VOTE_LEN",
            SumCost => "SUM_COST",
            PointsPresent => "POINTS_PRESENT",
            PointsRequired => "POINTS_REQUIRED",
            PointsLength => "POINTS_LENGTH",
            PointRange => "POINT_RANGE",
            SumPoints => "SUM_POINTS",
            PointsOrder => "POINTS_ORDER",
            MetaUnknownKey => "META_UNKNOWN_KEY",
            NonstandardColumn => "NONSTANDARD_COLUMN",
            DateFormat => "DATE_FORMAT",
            BudgetUnderfunded => "BUDGET_UNDERFUNDED",
            EmptyCategory => "EMPTY_CATEGORY",
            UnrepresentableValue => "UNREPRESENTABLE_VALUE",
        }
    }

    /// Vote types under which this check can fire.
    pub fn applies_to(self, vote_type: VoteType) -> bool {
        use ViolationCode::*;
        match self {
            SumCost => vote_type == VoteType::Approval,
            PointsPresent => !vote_type.uses_points(),
            PointsRequired | PointsLength | PointRange | PointsOrder => vote_type.uses_points(),
            SumPoints => vote_type == VoteType::Cumulative,
            _ => true,
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown violation code `{0}`")]
pub struct UnknownViolationCode(pub String);

impl std::str::FromStr for ViolationCode {
    type Err = UnknownViolationCode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ViolationCode::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| UnknownViolationCode(s.to_string()))
    }
}

/// What a violation is about.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "lowercase")]
pub enum Subject {
    Meta,
    Project(String),
    Vote(String),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Meta => f.write_str("meta"),
            Subject::Project(id) => write!(f, "project {id}"),
            Subject::Vote(id) => write!(f, "vote {id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub severity: Severity,
    pub subject: Subject,
    pub message: String,
}

impl Violation {
    fn new(code: ViolationCode, subject: Subject, message: impl Into<String>) -> Self {
        Violation {
            code,
            severity: code.severity(),
            subject,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

/// `SEVERITY CODE subject: message`
impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Error => "ERROR",
            Severity::Warning => "WARNING",
        };
        write!(f, "{severity} {} {}: {}", self.code, self.subject, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{vote} voted projects but {points} points")]
pub struct LengthMismatch {
    pub vote: usize,
    pub points: usize,
}

/// `true` iff `points` is non-increasing. Ties are allowed since equal
/// points cannot be strictly ordered.
pub fn is_strict_order<T>(vote: &[T], points: &[Decimal]) -> Result<bool, LengthMismatch> {
    if vote.len() != points.len() {
        return Err(LengthMismatch {
            vote: vote.len(),
            points: points.len(),
        });
    }
    Ok(points.windows(2).all(|w| w[0] >= w[1]))
}

/// Runs every check and returns the findings in file order: META first,
/// then projects, then votes.
pub fn validate(instance: &PbInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    check_meta(instance, &mut out);
    for project in &instance.projects {
        check_project(instance, project, &mut out);
    }
    let costs: HashMap<&str, Decimal> = instance
        .projects
        .iter()
        .map(|p| (p.project_id.as_str(), p.cost))
        .collect();
    for vote in &instance.votes {
        check_vote(&instance.meta, &costs, vote, &mut out);
    }
    out
}

pub fn error_count(violations: &[Violation]) -> usize {
    violations.iter().filter(|v| v.is_error()).count()
}

pub fn warning_count(violations: &[Violation]) -> usize {
    violations.len() - error_count(violations)
}

/// Renders the report one violation per line, followed by a count line.
pub fn render_text(violations: &[Violation]) -> String {
    let mut out = String::new();
    for v in violations {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out.push_str(&format!(
        "{} errors, {} warnings\n",
        error_count(violations),
        warning_count(violations)
    ));
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    errors: usize,
    warnings: usize,
    violations: &'a [Violation],
}

/// Renders the report as a JSON document with one record per violation.
pub fn render_json(violations: &[Violation]) -> String {
    serde_json::to_string_pretty(&JsonReport {
        errors: error_count(violations),
        warnings: warning_count(violations),
        violations,
    })
    .expect("violations serialize")
}

fn check_meta(instance: &PbInstance, out: &mut Vec<Violation>) {
    let meta = &instance.meta;
    for key in meta.extra.keys() {
        out.push(Violation::new(
            ViolationCode::MetaUnknownKey,
            Subject::Meta,
            format!("non-standard META key `{key}`"),
        ));
    }
    for (key, value) in [("date_begin", &meta.date_begin), ("date_end", &meta.date_end)] {
        if let Some(value) = value {
            if !looks_like_date(value) {
                out.push(Violation::new(
                    ViolationCode::DateFormat,
                    Subject::Meta,
                    format!("{key} `{value}` matches no common date format"),
                ));
            }
        }
    }
    if instance.projects.len() != meta.num_projects {
        out.push(Violation::new(
            ViolationCode::CountProjects,
            Subject::Meta,
            format!(
                "num_projects is {} but {} projects are listed",
                meta.num_projects,
                instance.projects.len()
            ),
        ));
    }
    if instance.votes.len() != meta.num_votes {
        out.push(Violation::new(
            ViolationCode::CountVotes,
            Subject::Meta,
            format!(
                "num_votes is {} but {} votes are listed",
                meta.num_votes,
                instance.votes.len()
            ),
        ));
    }
    for (section, header, typed) in [
        ("PROJECTS", &instance.project_header, &crate::model::PROJECT_COLUMNS[..]),
        ("VOTES", &instance.vote_header, &crate::model::VOTE_COLUMNS[..]),
    ] {
        for column in header.iter().filter(|c| !typed.contains(&c.as_str())) {
            out.push(Violation::new(
                ViolationCode::NonstandardColumn,
                Subject::Meta,
                format!("non-standard {section} column `{column}`"),
            ));
        }
    }
    if let Some(cheapest) = instance.projects.iter().map(|p| p.cost).min() {
        if meta.budget < cheapest {
            out.push(Violation::new(
                ViolationCode::BudgetUnderfunded,
                Subject::Meta,
                format!("budget {} is below the cheapest project cost {cheapest}", meta.budget),
            ));
        }
    }
    for (key, value) in meta.rows() {
        if !representable(&key) || !representable(&value) {
            out.push(unrepresentable(Subject::Meta, &key));
        }
    }
}

fn check_project(instance: &PbInstance, project: &Project, out: &mut Vec<Violation>) {
    let subject = || Subject::Project(project.project_id.clone());
    let has_category_column = instance.project_header.iter().any(|c| c == "category");
    let empty_category = match &project.category {
        None => has_category_column,
        Some(labels) => labels.is_empty() || labels.iter().any(|l| l.trim().is_empty()),
    };
    if empty_category {
        out.push(Violation::new(
            ViolationCode::EmptyCategory,
            subject(),
            "project has no category",
        ));
    }

    let mut fields: Vec<(&str, &str)> = vec![("project_id", &project.project_id)];
    if let Some(name) = &project.name {
        fields.push(("name", name));
    }
    fields.extend(project.extra.iter().map(|(k, v)| (k.as_str(), v.as_str())));
    let lists = [("category", &project.category), ("target", &project.target)];
    let bad_field = fields.iter().find(|(_, v)| !representable(v)).map(|(k, _)| *k);
    let bad_list = lists
        .iter()
        .find(|(_, items)| items.iter().flatten().any(|i| !representable_item(i)))
        .map(|(k, _)| *k);
    if let Some(column) = bad_field.or(bad_list) {
        out.push(unrepresentable(subject(), column));
    }
}

fn check_vote(meta: &MetaSection, costs: &HashMap<&str, Decimal>, vote: &VoteRecord, out: &mut Vec<Violation>) {
    let subject = || Subject::Vote(vote.voter_id.clone());
    let mut fields: Vec<(&str, &str)> = vec![("voter_id", &vote.voter_id)];
    fields.extend(vote.sex.as_deref().map(|v| ("sex", v)));
    fields.extend(vote.voting_method.as_deref().map(|v| ("voting_method", v)));
    fields.extend(vote.extra.iter().map(|(k, v)| (k.as_str(), v.as_str())));
    let bad_field = fields.iter().find(|(_, v)| !representable(v)).map(|(k, _)| *k);
    let bad_vote = vote.vote.iter().any(|p| !representable_item(p)).then_some("vote");
    if let Some(column) = bad_field.or(bad_vote) {
        out.push(unrepresentable(subject(), column));
    }

    let mut push = |code, message: String| out.push(Violation::new(code, subject(), message));

    for project in vote.vote.iter().filter(|p| !costs.contains_key(p.as_str())) {
        push(ViolationCode::UnknownProjectRef, format!("unknown project `{project}`"));
    }
    let mut seen = HashSet::new();
    for project in &vote.vote {
        if !seen.insert(project.as_str()) {
            push(
                ViolationCode::DuplicateVoteEntry,
                format!("project `{project}` listed more than once"),
            );
        }
    }

    let len = vote.vote.len();
    let (min_len, max_len) = (meta.min_length(), meta.max_length());
    if len < min_len || len > max_len {
        push(
            ViolationCode::VoteLen,
            format!("vote lists {len} projects, allowed range is [{min_len}, {max_len}]"),
        );
    }

    let has_points = vote.points.as_ref().is_some_and(|p| !p.is_empty());
    match meta.vote_type {
        VoteType::Approval | VoteType::Ordinal => {
            if meta.vote_type == VoteType::Approval {
                let total = vote
                    .vote
                    .iter()
                    .filter_map(|p| costs.get(p.as_str()))
                    .try_fold(Decimal::ZERO, |acc, c| acc.checked_add(*c))
                    .map_or(Bound::PosInfinity, Bound::Finite);
                let (lo, hi) = (meta.min_sum_cost(), meta.max_sum_cost());
                if total < lo || total > hi {
                    push(
                        ViolationCode::SumCost,
                        format!("approved projects cost {total}, allowed range is [{lo}, {hi}]"),
                    );
                }
            }
            if has_points {
                push(
                    ViolationCode::PointsPresent,
                    format!("{} votes must not carry points", meta.vote_type),
                );
            }
        }
        VoteType::Cumulative | VoteType::Scoring => {
            let Some(points) = vote.points.as_ref().filter(|_| has_points || len == 0) else {
                if len > 0 {
                    push(
                        ViolationCode::PointsRequired,
                        format!("{} votes need points", meta.vote_type),
                    );
                }
                return;
            };
            let ordered = match is_strict_order(&vote.vote, points) {
                Ok(ordered) => ordered,
                Err(e) => {
                    push(ViolationCode::PointsLength, e.to_string());
                    return;
                }
            };
            let cumulative = meta.vote_type == VoteType::Cumulative;
            let (lo, hi) = (meta.min_points(), meta.max_points());
            for (project, &p) in vote.vote.iter().zip(points) {
                if cumulative && p <= Decimal::ZERO {
                    push(
                        ViolationCode::PointRange,
                        format!("project `{project}` gets {p} points, cumulative points must be positive"),
                    );
                } else if !lo.le(p) || !hi.ge(p) {
                    push(
                        ViolationCode::PointRange,
                        format!("project `{project}` gets {p} points, allowed range is [{lo}, {hi}]"),
                    );
                }
            }
            if cumulative {
                let total = points
                    .iter()
                    .try_fold(Decimal::ZERO, |acc, p| acc.checked_add(*p))
                    .map_or(Bound::PosInfinity, Bound::Finite);
                let (lo, hi) = (meta.min_sum_points(), meta.max_sum_points());
                if total < lo || total > hi {
                    push(
                        ViolationCode::SumPoints,
                        format!("points sum to {total}, allowed range is [{lo}, {hi}]"),
                    );
                }
            }
            if !ordered {
                push(
                    ViolationCode::PointsOrder,
                    "projects are not listed in non-increasing order of points".to_string(),
                );
            }
        }
    }
}

fn unrepresentable(subject: Subject, field: &str) -> Violation {
    Violation::new(
        ViolationCode::UnrepresentableValue,
        subject,
        format!("`{field}` holds a value the .pb format cannot represent"),
    )
}

/// A value survives a write/read cycle when it has no field separator, no
/// line break and no surrounding whitespace.
fn representable(value: &str) -> bool {
    !value.contains([';', '\n', '\r']) && value.trim() == value
}

fn representable_item(value: &str) -> bool {
    representable(value) && !value.contains(',') && !value.is_empty()
}

/// Accepts `YYYY-MM-DD`, `YYYY/MM/DD`, `DD.MM.YYYY`, `DD/MM/YYYY`, `DD-MM-YYYY`
/// and `YYYY.MM.DD`, optionally followed by ` HH:MM` or ` HH:MM:SS`.
fn looks_like_date(value: &str) -> bool {
    const DATES: [&str; 6] = [
        "9999-99-99",
        "9999/99/99",
        "9999.99.99",
        "99.99.9999",
        "99/99/9999",
        "99-99-9999",
    ];
    let shape: String = value
        .chars()
        .map(|c| if c.is_ascii_digit() { '9' } else { c })
        .collect();
    let (date, time) = match shape.split_once(' ') {
        Some((d, t)) => (d, Some(t)),
        None => (shape.as_str(), None),
    };
    DATES.contains(&date) && time.is_none_or(|t| t == "99:99" || t == "99:99:99")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rust_decimal::dec;

    #[test]
    fn strict_order_examples() {
        let ids = ["a", "b", "c", "d"];
        assert_eq!(is_strict_order(&ids, &[dec!(5), dec!(3), dec!(3), dec!(1)]), Ok(true));
        assert_eq!(is_strict_order(&ids[..2], &[dec!(3), dec!(5)]), Ok(false));
        assert_eq!(is_strict_order::<&str>(&[], &[]), Ok(true));
        assert_eq!(
            is_strict_order(&ids[..1], &[dec!(1), dec!(2)]),
            Err(LengthMismatch { vote: 1, points: 2 })
        );
    }

    #[test]
    fn date_shapes() {
        for ok in [
            "2020-03-01",
            "01.03.2020",
            "2020/03/01",
            "2020-03-01 12:00",
            "01/03/2020 08:30:00",
        ] {
            assert!(looks_like_date(ok), "{ok}");
        }
        for bad in ["March 2020", "2020", "2020-3-1", "", "2020-03-01T12:00"] {
            assert!(!looks_like_date(bad), "{bad}");
        }
    }

    #[test]
    fn codes_round_trip_through_text() {
        for code in ViolationCode::ALL {
            assert_eq!(code.as_str().parse::<ViolationCode>(), Ok(code));
            let json = serde_json::to_string(&code).unwrap();
            assert_eq!(json, format!("\"{}\"", code.as_str()));
        }
    }

    #[test]
    fn representability() {
        assert!(representable("Municipal PB in Wieliczka"));
        assert!(representable(""));
        assert!(!representable("a;b"));
        assert!(!representable("line\nbreak"));
        assert!(!representable(" padded"));
        assert!(!representable_item("a,b"));
        assert!(!representable_item(""));
    }
}
