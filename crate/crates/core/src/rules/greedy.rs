use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rust_decimal::Decimal;
use serde::Serialize;

use super::{aggregate_scores, RuleError, Scores};
use crate::model::{PbInstance, Project, GREEDY};
use crate::validator::validate;

/// What to do when the next project in score order does not fit the
/// remaining budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GreedyVariant {
    /// Skip it and keep going down the list.
    #[default]
    SkipUnaffordable,
    /// Stop; it and every later project go unfunded.
    StopAtFirstUnaffordable,
}

impl FromStr for GreedyVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "skip" | "skip_unaffordable" => Ok(GreedyVariant::SkipUnaffordable),
            "stop" | "stop_at_first_unaffordable" => Ok(GreedyVariant::StopAtFirstUnaffordable),
            other => Err(format!("unknown greedy variant `{other}` (expected skip or stop)")),
        }
    }
}

/// Order among projects with equal scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    /// See [`compare_project_ids`].
    #[default]
    ByProjectIdAscending,
    ByCostAscendingThenId,
    ByInputOrder,
}

impl FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "id" | "by_project_id_ascending" => Ok(TieBreak::ByProjectIdAscending),
            "cost" | "by_cost_ascending_then_id" => Ok(TieBreak::ByCostAscendingThenId),
            "input" | "by_input_order" => Ok(TieBreak::ByInputOrder),
            other => Err(format!("unknown tie-break `{other}` (expected id, cost or input)")),
        }
    }
}

/// Orders project ids: ids made only of digits come first and compare as
/// numbers, all other ids follow in lexicographic order. Numerically equal
/// ids such as `07` and `7` fall back to comparing the raw text.
pub fn compare_project_ids(a: &str, b: &str) -> Ordering {
    fn numeric(s: &str) -> Option<&str> {
        (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())).then(|| {
            let trimmed = s.trim_start_matches('0');
            if trimmed.is_empty() {
                "0"
            } else {
                trimmed
            }
        })
    }
    match (numeric(a), numeric(b)) {
        (Some(x), Some(y)) => x.len().cmp(&y.len()).then_with(|| x.cmp(y)).then_with(|| a.cmp(b)),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.cmp(b),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Funded,
    Unaffordable,
    NotConsidered,
}

/// One project's turn in the greedy walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub project_id: String,
    pub score: Decimal,
    pub cost: Decimal,
    /// Budget left when the project's turn came.
    pub remaining_before: Decimal,
    pub decision: Decision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    Unaffordable,
    NotConsidered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub project_id: String,
    pub reason: SkipReason,
}

/// Result of a greedy run.
///
/// `spent` is the total cost of `funded`, and `spent + remaining == budget`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub variant: GreedyVariant,
    pub tie_break: TieBreak,
    pub budget: Decimal,
    pub scores: Scores,
    /// Funded projects in funding order.
    pub funded: Vec<String>,
    pub spent: Decimal,
    pub remaining: Decimal,
    pub skipped: Vec<Skipped>,
    /// Every project, in the order the walk visited them.
    pub steps: Vec<Step>,
}

impl Outcome {
    /// Project ids in the order the walk visited them.
    pub fn order(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.project_id.as_str()).collect()
    }
}

/// Indices into `instance.projects`, sorted by score descending and then by
/// `tie_break` ascending.
pub fn ranking(instance: &PbInstance, scores: &Scores, tie_break: TieBreak) -> Vec<usize> {
    let score = |p: &Project| scores.get(&p.project_id).copied().unwrap_or_default();
    let mut order: Vec<usize> = (0..instance.projects.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (&instance.projects[i], &instance.projects[j]);
        score(b).cmp(&score(a)).then_with(|| match tie_break {
            TieBreak::ByProjectIdAscending => compare_project_ids(&a.project_id, &b.project_id),
            TieBreak::ByCostAscendingThenId => a
                .cost
                .cmp(&b.cost)
                .then_with(|| compare_project_ids(&a.project_id, &b.project_id)),
            TieBreak::ByInputOrder => i.cmp(&j),
        })
    });
    order
}

/// Funds projects in decreasing score order until the budget runs out or
/// there are no more projects.
///
/// The instance must declare `rule; greedy` and validate without errors.
pub fn greedy_outcome(
    instance: &PbInstance,
    variant: GreedyVariant,
    tie_break: TieBreak,
) -> Result<Outcome, RuleError> {
    if instance.meta.rule != GREEDY {
        return Err(RuleError::UnsupportedRule(instance.meta.rule.clone()));
    }
    let errors: Vec<_> = validate(instance).into_iter().filter(|v| v.is_error()).collect();
    if !errors.is_empty() {
        return Err(RuleError::ValidationRequired(errors));
    }

    let scores = aggregate_scores(instance)?;
    let budget = instance.meta.budget;
    let mut remaining = budget;
    let mut stopped = false;
    let mut steps = Vec::with_capacity(instance.projects.len());
    for idx in ranking(instance, &scores, tie_break) {
        let project = &instance.projects[idx];
        let decision = if stopped {
            Decision::NotConsidered
        } else if project.cost <= remaining {
            Decision::Funded
        } else {
            if variant == GreedyVariant::StopAtFirstUnaffordable {
                stopped = true;
            }
            Decision::Unaffordable
        };
        steps.push(Step {
            project_id: project.project_id.clone(),
            score: scores[&project.project_id],
            cost: project.cost,
            remaining_before: remaining,
            decision,
        });
        if decision == Decision::Funded {
            remaining -= project.cost;
        }
    }

    let funded = steps
        .iter()
        .filter(|s| s.decision == Decision::Funded)
        .map(|s| s.project_id.clone())
        .collect();
    let skipped = steps
        .iter()
        .filter_map(|s| {
            let reason = match s.decision {
                Decision::Funded => return None,
                Decision::Unaffordable => SkipReason::Unaffordable,
                Decision::NotConsidered => SkipReason::NotConsidered,
            };
            Some(Skipped {
                project_id: s.project_id.clone(),
                reason,
            })
        })
        .collect();
    Ok(Outcome {
        variant,
        tie_break,
        budget,
        scores,
        funded,
        spent: budget - remaining,
        remaining,
        skipped,
        steps,
    })
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variant: {}", serde_plain(&self.variant))?;
        writeln!(f, "tie-break: {}", serde_plain(&self.tie_break))?;
        writeln!(f, "scores:")?;
        for (project, score) in &self.scores {
            writeln!(f, "  {project}: {score}")?;
        }
        writeln!(f, "funded: {}", self.funded.join(", "))?;
        writeln!(f, "spent: {} of {}", self.spent, self.budget)?;
        writeln!(f, "remaining: {}", self.remaining)?;
        for s in &self.skipped {
            writeln!(f, "skipped: {} ({})", s.project_id, serde_plain(&s.reason))?;
        }
        Ok(())
    }
}

fn serde_plain<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}
