//! Domain types for a participatory-budgeting instance.
//!
//! A `.pb` file holds three sections: META (instance-wide metadata and ballot
//! constraints), PROJECTS (candidate projects with their costs) and VOTES (one
//! ballot per voter). The types here mirror that layout. Money and points are
//! [`Decimal`]s so that budget arithmetic and score comparisons are exact.
//!
//! Optional META bounds are held in a [`Setting`], which remembers whether a
//! value was written in the file or filled in by [`MetaSection::resolve_defaults`].
//! The serializer only writes values that were given, so resolving defaults
//! never changes the canonical form of an instance.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use rust_decimal::Decimal;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

/// The four ballot formats a `.pb` file can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VoteType {
    /// A ballot lists the approved projects.
    Approval,
    /// A ballot ranks a subset of projects, most preferred first.
    Ordinal,
    /// A ballot spreads a bounded pool of positive points over projects.
    Cumulative,
    /// A ballot assigns scores from an interval; unlisted projects get `default_score`.
    Scoring,
}

impl VoteType {
    pub const ALL: [VoteType; 4] = [
        VoteType::Approval,
        VoteType::Ordinal,
        VoteType::Cumulative,
        VoteType::Scoring,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            VoteType::Approval => "approval",
            VoteType::Ordinal => "ordinal",
            VoteType::Cumulative => "cumulative",
            VoteType::Scoring => "scoring",
        }
    }

    /// Whether ballots of this type carry a `points` column.
    pub fn uses_points(self) -> bool {
        matches!(self, VoteType::Cumulative | VoteType::Scoring)
    }
}

impl fmt::Display for VoteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown vote type {0:?}")]
pub struct UnknownVoteType(pub String);

impl FromStr for VoteType {
    type Err = UnknownVoteType;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "approval" => Ok(VoteType::Approval),
            "ordinal" => Ok(VoteType::Ordinal),
            "cumulative" => Ok(VoteType::Cumulative),
            "scoring" => Ok(VoteType::Scoring),
            other => Err(UnknownVoteType(other.to_string())),
        }
    }
}

/// A decimal extended with the two infinities, used for bounds whose default
/// is unbounded (`max_sum_cost`, scoring `min_points`/`max_points`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInfinity,
    Finite(Decimal),
    PosInfinity,
}

impl Bound {
    pub fn finite(&self) -> Option<Decimal> {
        match self {
            Bound::Finite(d) => Some(*d),
            _ => None,
        }
    }

    /// `true` when `value` is at or above this bound.
    pub fn le(&self, value: Decimal) -> bool {
        *self <= Bound::Finite(value)
    }

    /// `true` when `value` is at or below this bound.
    pub fn ge(&self, value: Decimal) -> bool {
        *self >= Bound::Finite(value)
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        use Bound::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (_, NegInfinity) | (PosInfinity, _) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Decimal> for Bound {
    fn from(d: Decimal) -> Self {
        Bound::Finite(d)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInfinity => f.write_str("-inf"),
            Bound::Finite(d) => write!(f, "{d}"),
            Bound::PosInfinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An optional META value that tracks where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(tag = "source", content = "value", rename_all = "lowercase")]
pub enum Setting<T> {
    #[default]
    Absent,
    /// Written in the file (or set explicitly by the caller).
    Given(T),
    /// Filled in by [`MetaSection::resolve_defaults`].
    Defaulted(T),
}

impl<T> Setting<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Setting::Absent => None,
            Setting::Given(v) | Setting::Defaulted(v) => Some(v),
        }
    }

    pub fn given(&self) -> Option<&T> {
        match self {
            Setting::Given(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Setting::Absent)
    }

    fn fill(&mut self, default: impl FnOnce() -> T) {
        if self.is_absent() {
            *self = Setting::Defaulted(default());
        }
    }
}

/// The only scoring function for ordinal ballots that is implemented.
pub const BORDA: &str = "Borda";

/// The only aggregation rule that is implemented.
pub const GREEDY: &str = "greedy";

/// META keys that must be present in every file, in canonical output order.
pub const REQUIRED_META_KEYS: [&str; 9] = [
    "description",
    "country",
    "unit",
    "instance",
    "num_projects",
    "num_votes",
    "budget",
    "vote_type",
    "rule",
];

/// Optional META keys with a typed meaning, in canonical output order.
pub const OPTIONAL_META_KEYS: [&str; 17] = [
    "subunit",
    "date_begin",
    "date_end",
    "language",
    "edition",
    "district",
    "comment",
    "min_length",
    "max_length",
    "min_sum_cost",
    "max_sum_cost",
    "scoring_fn",
    "min_points",
    "max_points",
    "min_sum_points",
    "max_sum_points",
    "default_score",
];

pub fn is_typed_meta_key(key: &str) -> bool {
    REQUIRED_META_KEYS.contains(&key) || OPTIONAL_META_KEYS.contains(&key)
}

/// Typed PROJECTS columns. `project_id` and `cost` must lead the header.
pub const PROJECT_COLUMNS: [&str; 5] = ["project_id", "cost", "name", "category", "target"];

/// Typed VOTES columns. `voter_id` must lead the header and `vote` must be present.
pub const VOTE_COLUMNS: [&str; 6] = ["voter_id", "age", "sex", "voting_method", "vote", "points"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("required META key `{0}` is missing")]
    MissingRequiredKey(String),
}

/// The META section.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetaSection {
    pub description: String,
    pub country: String,
    pub unit: String,
    pub instance: String,
    pub num_projects: usize,
    pub num_votes: usize,
    pub budget: Decimal,
    pub rule: String,
    pub vote_type: VoteType,

    pub subunit: Option<String>,
    pub district: Option<String>,
    pub edition: Option<String>,
    pub language: Option<String>,
    pub comment: Option<String>,
    /// Kept verbatim; no date format is enforced.
    pub date_begin: Option<String>,
    pub date_end: Option<String>,

    pub min_length: Setting<usize>,
    pub max_length: Setting<usize>,
    pub min_sum_cost: Setting<Bound>,
    pub max_sum_cost: Setting<Bound>,
    pub min_points: Setting<Bound>,
    pub max_points: Setting<Bound>,
    pub min_sum_points: Setting<Bound>,
    pub max_sum_points: Setting<Bound>,
    pub scoring_fn: Setting<String>,
    pub default_score: Setting<Decimal>,

    /// Non-standard keys in file order. Never shares a key with the typed fields.
    pub extra: IndexMap<String, String>,
}

impl MetaSection {
    /// A META section with every obligatory key set and nothing optional.
    /// The text fields are left empty and `rule` is `greedy`.
    pub fn new(vote_type: VoteType, budget: Decimal, num_projects: usize, num_votes: usize) -> Self {
        MetaSection {
            description: String::new(),
            country: String::new(),
            unit: String::new(),
            instance: String::new(),
            num_projects,
            num_votes,
            budget,
            rule: GREEDY.to_string(),
            vote_type,
            subunit: None,
            district: None,
            edition: None,
            language: None,
            comment: None,
            date_begin: None,
            date_end: None,
            min_length: Setting::Absent,
            max_length: Setting::Absent,
            min_sum_cost: Setting::Absent,
            max_sum_cost: Setting::Absent,
            min_points: Setting::Absent,
            max_points: Setting::Absent,
            min_sum_points: Setting::Absent,
            max_sum_points: Setting::Absent,
            scoring_fn: Setting::Absent,
            default_score: Setting::Absent,
            extra: IndexMap::new(),
        }
    }

    /// Populates every optional bound that applies to `vote_type` with its
    /// default. Present values are left alone and bounds belonging to other
    /// vote types stay absent. Idempotent.
    pub fn resolve_defaults(mut self) -> Result<MetaSection, ModelError> {
        if self.vote_type == VoteType::Cumulative && self.max_sum_points.is_absent() {
            return Err(ModelError::MissingRequiredKey("max_sum_points".into()));
        }
        let num_projects = self.num_projects;
        self.min_length.fill(|| 1);
        self.max_length.fill(|| num_projects);
        match self.vote_type {
            VoteType::Approval => {
                self.min_sum_cost.fill(|| Bound::Finite(Decimal::ZERO));
                self.max_sum_cost.fill(|| Bound::PosInfinity);
            }
            VoteType::Ordinal => {
                self.scoring_fn.fill(|| BORDA.to_string());
            }
            VoteType::Cumulative => {
                let max_sum = *self.max_sum_points.value().expect("checked above");
                self.min_points.fill(|| Bound::Finite(Decimal::ZERO));
                self.max_points.fill(|| max_sum);
                self.min_sum_points.fill(|| Bound::Finite(Decimal::ZERO));
            }
            VoteType::Scoring => {
                self.min_points.fill(|| Bound::NegInfinity);
                self.max_points.fill(|| Bound::PosInfinity);
                self.default_score.fill(|| Decimal::ZERO);
            }
        }
        Ok(self)
    }

    // Resolved views. These fall back to the default when the setting is absent,
    // so they are usable on sections that were never resolved.

    pub fn min_length(&self) -> usize {
        self.min_length.value().copied().unwrap_or(1)
    }

    pub fn max_length(&self) -> usize {
        self.max_length.value().copied().unwrap_or(self.num_projects)
    }

    pub fn min_sum_cost(&self) -> Bound {
        self.min_sum_cost
            .value()
            .copied()
            .unwrap_or(Bound::Finite(Decimal::ZERO))
    }

    pub fn max_sum_cost(&self) -> Bound {
        self.max_sum_cost.value().copied().unwrap_or(Bound::PosInfinity)
    }

    pub fn max_sum_points(&self) -> Bound {
        self.max_sum_points.value().copied().unwrap_or(Bound::PosInfinity)
    }

    pub fn min_sum_points(&self) -> Bound {
        self.min_sum_points
            .value()
            .copied()
            .unwrap_or(Bound::Finite(Decimal::ZERO))
    }

    pub fn min_points(&self) -> Bound {
        self.min_points.value().copied().unwrap_or(match self.vote_type {
            VoteType::Cumulative => Bound::Finite(Decimal::ZERO),
            _ => Bound::NegInfinity,
        })
    }

    pub fn max_points(&self) -> Bound {
        self.max_points.value().copied().unwrap_or(match self.vote_type {
            VoteType::Cumulative => self.max_sum_points(),
            _ => Bound::PosInfinity,
        })
    }

    pub fn default_score(&self) -> Decimal {
        self.default_score.value().copied().unwrap_or(Decimal::ZERO)
    }

    pub fn scoring_fn(&self) -> &str {
        self.scoring_fn.value().map(String::as_str).unwrap_or(BORDA)
    }

    /// The META rows as they are written out: obligatory keys, then the
    /// optional typed keys that were given, then non-standard keys.
    pub fn rows(&self) -> Vec<(String, String)> {
        let mut rows: Vec<(&str, String)> = vec![
            ("description", self.description.clone()),
            ("country", self.country.clone()),
            ("unit", self.unit.clone()),
            ("instance", self.instance.clone()),
            ("num_projects", self.num_projects.to_string()),
            ("num_votes", self.num_votes.to_string()),
            ("budget", self.budget.to_string()),
            ("vote_type", self.vote_type.to_string()),
            ("rule", self.rule.clone()),
        ];
        let text = |key: &'static str, v: &Option<String>| v.as_ref().map(|v| (key, v.clone()));
        let given = |key: &'static str, v: Option<String>| v.map(|v| (key, v));
        let optional = [
            text("subunit", &self.subunit),
            text("date_begin", &self.date_begin),
            text("date_end", &self.date_end),
            text("language", &self.language),
            text("edition", &self.edition),
            text("district", &self.district),
            text("comment", &self.comment),
            given("min_length", self.min_length.given().map(ToString::to_string)),
            given("max_length", self.max_length.given().map(ToString::to_string)),
            given("min_sum_cost", self.min_sum_cost.given().map(ToString::to_string)),
            given("max_sum_cost", self.max_sum_cost.given().map(ToString::to_string)),
            given("scoring_fn", self.scoring_fn.given().cloned()),
            given("min_points", self.min_points.given().map(ToString::to_string)),
            given("max_points", self.max_points.given().map(ToString::to_string)),
            given("min_sum_points", self.min_sum_points.given().map(ToString::to_string)),
            given("max_sum_points", self.max_sum_points.given().map(ToString::to_string)),
            given("default_score", self.default_score.given().map(ToString::to_string)),
        ];
        rows.extend(optional.into_iter().flatten());
        rows.into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .chain(self.extra.iter().map(|(k, v)| (k.clone(), v.clone())))
            .collect()
    }
}

/// One row of the PROJECTS section.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Project {
    pub project_id: String,
    pub cost: Decimal,
    pub name: Option<String>,
    /// `None` when the column is missing or the cell is empty.
    pub category: Option<Vec<String>>,
    pub target: Option<Vec<String>>,
    /// One entry per non-standard header column, in header order.
    pub extra: IndexMap<String, String>,
}

impl Project {
    pub fn new(project_id: impl Into<String>, cost: Decimal) -> Self {
        Project {
            project_id: project_id.into(),
            cost,
            name: None,
            category: None,
            target: None,
            extra: IndexMap::new(),
        }
    }
}

/// One row of the VOTES section.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VoteRecord {
    pub voter_id: String,
    pub age: Option<u32>,
    pub sex: Option<String>,
    pub voting_method: Option<String>,
    /// Project ids in ballot order.
    pub vote: Vec<String>,
    /// Points parallel to `vote`. `None` when the column is missing or the cell is empty.
    pub points: Option<Vec<Decimal>>,
    pub extra: IndexMap<String, String>,
}

impl VoteRecord {
    pub fn new(voter_id: impl Into<String>, vote: Vec<String>) -> Self {
        VoteRecord {
            voter_id: voter_id.into(),
            age: None,
            sex: None,
            voting_method: None,
            vote,
            points: None,
            extra: IndexMap::new(),
        }
    }

    pub fn with_points(mut self, points: Vec<Decimal>) -> Self {
        self.points = Some(points);
        self
    }
}

/// A complete `.pb` instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PbInstance {
    pub meta: MetaSection,
    pub projects: Vec<Project>,
    pub votes: Vec<VoteRecord>,
    pub project_header: Vec<String>,
    pub vote_header: Vec<String>,
}

impl PbInstance {
    /// Builds an instance whose headers are derived from the data: typed
    /// columns that some row uses, followed by the non-standard columns of
    /// the first row.
    pub fn new(meta: MetaSection, projects: Vec<Project>, votes: Vec<VoteRecord>) -> Self {
        let mut project_header = vec!["project_id".to_string(), "cost".to_string()];
        for (column, used) in [
            ("name", projects.iter().any(|p| p.name.is_some())),
            ("category", projects.iter().any(|p| p.category.is_some())),
            ("target", projects.iter().any(|p| p.target.is_some())),
        ] {
            if used {
                project_header.push(column.to_string());
            }
        }
        if let Some(first) = projects.first() {
            project_header.extend(first.extra.keys().cloned());
        }

        let mut vote_header = vec!["voter_id".to_string()];
        for (column, used) in [
            ("age", votes.iter().any(|v| v.age.is_some())),
            ("sex", votes.iter().any(|v| v.sex.is_some())),
            ("voting_method", votes.iter().any(|v| v.voting_method.is_some())),
        ] {
            if used {
                vote_header.push(column.to_string());
            }
        }
        if let Some(first) = votes.first() {
            vote_header.extend(first.extra.keys().cloned());
        }
        vote_header.push("vote".to_string());
        if meta.vote_type.uses_points() || votes.iter().any(|v| v.points.is_some()) {
            vote_header.push("points".to_string());
        }

        PbInstance {
            meta,
            projects,
            votes,
            project_header,
            vote_header,
        }
    }

    pub fn project(&self, project_id: &str) -> Option<&Project> {
        self.projects.iter().find(|p| p.project_id == project_id)
    }

    /// Project id to position in `projects`.
    pub fn project_index(&self) -> HashMap<&str, usize> {
        self.projects
            .iter()
            .enumerate()
            .map(|(i, p)| (p.project_id.as_str(), i))
            .collect()
    }

    pub fn total_cost(&self) -> Decimal {
        self.projects
            .iter()
            .fold(Decimal::ZERO, |acc, p| acc.saturating_add(p.cost))
    }
}
