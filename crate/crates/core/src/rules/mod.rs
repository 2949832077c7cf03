//! Aggregation: per-project scores for each ballot type and the greedy rule.
//!
//! Scores are exact decimals, so rankings never depend on rounding.

mod greedy;
mod scores;

use thiserror::Error;

use crate::model::VoteType;
use crate::validator::Violation;

pub use greedy::{
    compare_project_ids, greedy_outcome, ranking, Decision, GreedyVariant, Outcome, SkipReason, Skipped, Step, TieBreak,
};
pub use scores::{aggregate_scores, approval_scores, borda_scores, points_scores, Scores};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("expected {expected} votes but the instance has {found} votes")]
    WrongVoteType { expected: &'static str, found: VoteType },
    #[error("unsupported scoring function `{0}` (only Borda is implemented)")]
    UnsupportedScoringFn(String),
    #[error("unsupported rule `{0}` (only greedy is implemented)")]
    UnsupportedRule(String),
    #[error("instance has {} validation error(s); the first is: {}", .0.len(), .0[0])]
    ValidationRequired(Vec<Violation>),
    #[error("score arithmetic overflowed")]
    Overflow,
}
