//! Seeded random instances for property tests and the `generate` command.
//!
//! Without a mutation the generated instance validates with zero errors. A
//! mutation names a validator error code and bends the instance just enough
//! to trigger it.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Bound, MetaSection, PbInstance, Project, Setting, VoteRecord, VoteType, BORDA};
use crate::validator::ViolationCode;

/// An inclusive range, written `MIN..MAX` (or a single value) on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span<T> {
    pub min: T,
    pub max: T,
}

impl<T> Span<T> {
    pub const fn new(min: T, max: T) -> Self {
        Span { min, max }
    }
}

impl<T: PartialOrd> Span<T> {
    pub fn is_empty(&self) -> bool {
        self.min > self.max
    }
}

impl<T: fmt::Display> fmt::Display for Span<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.min, self.max)
    }
}

impl<T: FromStr> FromStr for Span<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("`{s}` is not a range (expected MIN..MAX or a single value)");
        let (lo, hi) = s.split_once("..").unwrap_or((s, s));
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        Ok(Span {
            min: lo.trim().parse().map_err(|_| bad())?,
            max: hi.trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub vote_type: VoteType,
    pub num_projects: usize,
    pub num_votes: usize,
    /// Whole currency units.
    #[serde(default = "GeneratorSpec::default_budget")]
    pub budget: Span<u64>,
    /// Whole currency units; some costs get cents on top.
    #[serde(default = "GeneratorSpec::default_cost")]
    pub cost: Span<u64>,
    /// Ballot length bounds, written to META as `min_length`/`max_length`.
    /// `max` is capped at `num_projects`.
    #[serde(default = "GeneratorSpec::default_length")]
    pub length: Span<usize>,
    /// Per-project point bounds for cumulative and scoring ballots.
    #[serde(default = "GeneratorSpec::default_points")]
    pub points: Span<i64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub mutation: Option<ViolationCode>,
}

impl GeneratorSpec {
    fn default_budget() -> Span<u64> {
        Span::new(1_000, 10_000)
    }

    fn default_cost() -> Span<u64> {
        Span::new(100, 2_000)
    }

    fn default_length() -> Span<usize> {
        Span::new(1, 3)
    }

    fn default_points() -> Span<i64> {
        Span::new(1, 10)
    }

    pub fn new(vote_type: VoteType, num_projects: usize, num_votes: usize, seed: u64) -> Self {
        GeneratorSpec {
            vote_type,
            num_projects,
            num_votes,
            budget: Self::default_budget(),
            cost: Self::default_cost(),
            length: Self::default_length(),
            points: Self::default_points(),
            seed,
            mutation: None,
        }
    }

    pub fn with_mutation(mut self, mutation: ViolationCode) -> Self {
        self.mutation = Some(mutation);
        self
    }

    fn check(&self) -> Result<Span<usize>, GenerateError> {
        let infeasible = |msg: String| Err(GenerateError::InfeasibleSpec(msg));
        if self.num_projects == 0 {
            return infeasible("num_projects must be at least 1".into());
        }
        for (name, empty) in [
            ("budget", self.budget.is_empty()),
            ("cost", self.cost.is_empty()),
            ("length", self.length.is_empty()),
            ("points", self.points.is_empty()),
        ] {
            if empty {
                return infeasible(format!("{name} range is empty"));
            }
        }
        if self.length.min > self.num_projects {
            return infeasible(format!(
                "min length {} exceeds num_projects {}",
                self.length.min, self.num_projects
            ));
        }
        if self.vote_type == VoteType::Cumulative && self.points.min < 1 {
            return infeasible("cumulative points must be positive (points min >= 1)".into());
        }
        if let Some(code) = self.mutation {
            if code.severity() != crate::parser::Severity::Error || !code.applies_to(self.vote_type) {
                return Err(GenerateError::MutationNotApplicable {
                    code,
                    vote_type: self.vote_type,
                });
            }
        }
        Ok(Span::new(self.length.min, self.length.max.min(self.num_projects)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
    #[error("no mutation targets {code} for {vote_type} instances")]
    MutationNotApplicable { code: ViolationCode, vote_type: VoteType },
}

const CATEGORIES: [&str; 7] = [
    "education",
    "sport",
    "health",
    "culture",
    "environmental protection",
    "public space",
    "public transit and roads",
];
const TARGETS: [&str; 5] = ["adults", "seniors", "children", "youth", "families with children"];

/// Builds a random instance. The same spec (seed included) always yields
/// the same instance.
pub fn generate_random_instance(spec: &GeneratorSpec) -> Result<PbInstance, GenerateError> {
    let length = spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let vote_type = spec.vote_type;

    let with_name = rng.random_bool(0.5);
    let with_category = rng.random_bool(0.5);
    let with_target = rng.random_bool(0.3);
    let with_project_extra = rng.random_bool(0.3);
    let mut projects = Vec::with_capacity(spec.num_projects);
    let mut next_id: u64 = 0;
    for _ in 0..spec.num_projects {
        next_id += rng.random_range(1..=3);
        let units = rng.random_range(spec.cost.min..=spec.cost.max);
        let cost = if rng.random_bool(0.25) {
            Decimal::from(units) + Decimal::new(rng.random_range(0..100), 2)
        } else {
            Decimal::from(units)
        };
        let mut project = Project::new(next_id.to_string(), cost);
        if with_name {
            project.name = Some(format!("Project number {next_id}"));
        }
        if with_category {
            project.category = Some(labels(&mut rng, &CATEGORIES));
        }
        if with_target {
            project.target = Some(labels(&mut rng, &TARGETS));
        }
        if with_project_extra {
            project
                .extra
                .insert("neighborhood".into(), format!("N{}", rng.random_range(1..=9)));
        }
        projects.push(project);
    }

    let budget = Decimal::from(rng.random_range(spec.budget.min..=spec.budget.max));
    let mut meta = MetaSection::new(vote_type, budget, spec.num_projects, spec.num_votes);
    meta.description = format!("Generated {vote_type} instance");
    meta.country = "Nowhere".into();
    meta.unit = "Generated City".into();
    meta.instance = spec.seed.to_string();
    if rng.random_bool(0.3) {
        meta.subunit = Some(format!("District {}", rng.random_range(1..=20)));
    }
    if rng.random_bool(0.3) {
        meta.date_begin = Some("2020-05-01".into());
        meta.date_end = Some("2020-05-15".into());
    }
    if rng.random_bool(0.2) {
        meta.extra.insert("currency".into(), "PLN".into());
    }
    meta.min_length = Setting::Given(length.min);
    meta.max_length = Setting::Given(length.max);

    let points = spec.points;
    match vote_type {
        VoteType::Approval => {
            if rng.random_bool(0.5) {
                meta.min_sum_cost = Setting::Given(Bound::Finite(Decimal::ZERO));
            }
            if rng.random_bool(0.5) {
                let total: Decimal = projects.iter().map(|p| p.cost).sum();
                meta.max_sum_cost = Setting::Given(Bound::Finite(total));
            }
        }
        VoteType::Ordinal => {
            if rng.random_bool(0.5) {
                meta.scoring_fn = Setting::Given(BORDA.into());
            }
        }
        VoteType::Cumulative => {
            meta.min_points = Setting::Given(Bound::Finite(points.min.into()));
            meta.max_points = Setting::Given(Bound::Finite(points.max.into()));
            let max_sum = Decimal::from(points.max) * Decimal::from(length.max.max(1));
            meta.max_sum_points = Setting::Given(Bound::Finite(max_sum));
            if rng.random_bool(0.5) {
                meta.min_sum_points = Setting::Given(Bound::Finite(Decimal::ZERO));
            }
        }
        VoteType::Scoring => {
            meta.min_points = Setting::Given(Bound::Finite(points.min.into()));
            meta.max_points = Setting::Given(Bound::Finite(points.max.into()));
            if rng.random_bool(0.5) {
                meta.default_score = Setting::Given(Decimal::from(rng.random_range(points.min..=points.max)));
            }
        }
    }

    let with_age = rng.random_bool(0.5);
    let with_sex = rng.random_bool(0.5);
    let with_method = rng.random_bool(0.3);
    let with_vote_extra = rng.random_bool(0.2);
    let mut votes = Vec::with_capacity(spec.num_votes);
    for voter in 1..=spec.num_votes {
        let len = rng.random_range(length.min..=length.max);
        let mut chosen: Vec<String> = sample(&mut rng, projects.len(), len)
            .into_iter()
            .map(|i| projects[i].project_id.clone())
            .collect();
        let mut record = VoteRecord::new(voter.to_string(), Vec::new());
        if vote_type.uses_points() && len > 0 {
            let mut pairs: Vec<(Decimal, String)> = chosen
                .drain(..)
                .map(|id| (random_points(&mut rng, points), id))
                .collect();
            pairs.sort_by_key(|p| std::cmp::Reverse(p.0));
            let (pts, ids): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
            chosen = ids;
            record.points = Some(pts);
        }
        record.vote = chosen;
        if with_age {
            record.age = Some(rng.random_range(16..=90));
        }
        if with_sex {
            record.sex = Some(if rng.random_bool(0.5) { "f" } else { "m" }.into());
        }
        if with_method {
            record.voting_method = Some(if rng.random_bool(0.5) { "internet" } else { "paper" }.into());
        }
        if with_vote_extra {
            record
                .extra
                .insert("district".into(), format!("D{}", rng.random_range(1..=5)));
        }
        votes.push(record);
    }

    let meta = meta.resolve_defaults().expect("max_sum_points is set for cumulative");
    let mut instance = PbInstance::new(meta, projects, votes);
    if let Some(code) = spec.mutation {
        mutate(&mut instance, code);
    }
    Ok(instance)
}

fn labels(rng: &mut ChaCha8Rng, pool: &[&str]) -> Vec<String> {
    let n = rng.random_range(1..=2);
    sample(rng, pool.len(), n)
        .into_iter()
        .map(|i| pool[i].to_string())
        .collect()
}

/// Integers in range, sometimes with a half point when that stays in range.
fn random_points(rng: &mut ChaCha8Rng, span: Span<i64>) -> Decimal {
    let whole = rng.random_range(span.min..=span.max);
    if whole < span.max && rng.random_bool(0.2) {
        Decimal::from(whole) + Decimal::new(5, 1)
    } else {
        Decimal::from(whole)
    }
}

/// Makes sure the first vote exists and lists at least one project.
fn first_vote(instance: &mut PbInstance) -> &mut VoteRecord {
    if instance.votes.is_empty() {
        let mut record = VoteRecord::new("mutant", Vec::new());
        record.extra = instance
            .vote_header
            .iter()
            .filter(|c| !crate::model::VOTE_COLUMNS.contains(&c.as_str()))
            .map(|c| (c.clone(), String::new()))
            .collect();
        instance.votes.push(record);
        instance.meta.num_votes += 1;
    }
    let first_project = instance.projects[0].project_id.clone();
    let point = instance.meta.max_points().finite().unwrap_or(Decimal::ONE);
    let uses_points = instance.meta.vote_type.uses_points();
    let vote = &mut instance.votes[0];
    if vote.vote.is_empty() {
        vote.vote.push(first_project);
        if uses_points {
            vote.points = Some(vec![point]);
        }
    }
    vote
}

fn vote_cost(instance: &PbInstance, vote: &VoteRecord) -> Decimal {
    vote.vote
        .iter()
        .filter_map(|id| instance.project(id))
        .map(|p| p.cost)
        .sum()
}

fn mutate(instance: &mut PbInstance, code: ViolationCode) {
    use ViolationCode::*;
    match code {
        CountProjects => instance.meta.num_projects += 1,
        CountVotes => instance.meta.num_votes += 1,
        UnknownProjectRef => {
            first_vote(instance).vote[0] = "no-such-project".into();
        }
        DuplicateVoteEntry => {
            let vote = first_vote(instance);
            vote.vote.push(vote.vote[0].clone());
            if let Some(points) = &mut vote.points {
                points.push(*points.last().expect("non-empty"));
            }
        }
        VoteLen => {
            if instance.meta.min_length() >= 1 {
                let vote = first_vote(instance);
                vote.vote.clear();
                vote.points = None;
            } else {
                let len = first_vote(instance).vote.len();
                instance.meta.min_length = Setting::Given(len + 1);
            }
        }
        SumCost => {
            let vote = first_vote(instance).clone();
            let total = vote_cost(instance, &vote);
            instance.meta.min_sum_cost = Setting::Given(Bound::Finite(total + Decimal::ONE));
        }
        PointsPresent => {
            let vote = first_vote(instance);
            vote.points = Some(vec![Decimal::ONE; vote.vote.len()]);
            if !instance.vote_header.iter().any(|c| c == "points") {
                instance.vote_header.push("points".into());
            }
        }
        PointsRequired => {
            first_vote(instance).points = None;
        }
        PointsLength => {
            let vote = first_vote(instance);
            if let Some(points) = &mut vote.points {
                points.push(*points.last().expect("non-empty"));
            }
        }
        PointRange => {
            let cumulative = instance.meta.vote_type == VoteType::Cumulative;
            let (lo, hi) = (instance.meta.min_points(), instance.meta.max_points());
            let points = first_vote(instance).points.as_mut().expect("points ballots");
            let last = points.len() - 1;
            match (cumulative, lo, hi) {
                (true, _, _) => points[last] = Decimal::ZERO,
                (false, Bound::Finite(lo), _) => points[last] = lo - Decimal::ONE,
                (false, _, Bound::Finite(hi)) => points[0] = hi + Decimal::ONE,
                // Unbounded scoring intervals admit every value.
                _ => {}
            }
        }
        SumPoints => {
            let vote = first_vote(instance);
            let total: Decimal = vote.points.iter().flatten().sum();
            instance.meta.min_sum_points = Setting::Given(Bound::Finite(total + Decimal::ONE));
        }
        PointsOrder => {
            first_vote(instance);
            let spare = instance
                .projects
                .iter()
                .map(|p| p.project_id.clone())
                .find(|id| !instance.votes[0].vote.contains(id));
            let vote = &mut instance.votes[0];
            let points = vote.points.as_mut().expect("points ballots");
            let last = points.len() - 1;
            if last > 0 && points[0] > points[last] {
                points.swap(0, last);
            } else if last > 0 {
                points[last] = points[0] + Decimal::ONE;
            } else {
                // A single entry is always ordered; add a second, larger one.
                let extra = points[0] + Decimal::ONE;
                points.push(extra);
                let repeat = vote.vote[0].clone();
                vote.vote.push(spare.unwrap_or(repeat));
            }
        }
        MetaUnknownKey | NonstandardColumn | DateFormat | BudgetUnderfunded | EmptyCategory | UnrepresentableValue => {
            unreachable!("warnings are rejected by GeneratorSpec::check")
        }
    }
}
