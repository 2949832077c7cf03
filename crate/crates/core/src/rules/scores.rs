use indexmap::IndexMap;
use rust_decimal::Decimal;

use super::RuleError;
use crate::model::{PbInstance, VoteType, BORDA};

/// Project id to total score, in project order. Every project has an entry.
pub type Scores = IndexMap<String, Decimal>;

fn zero_scores(instance: &PbInstance) -> Scores {
    instance
        .projects
        .iter()
        .map(|p| (p.project_id.clone(), Decimal::ZERO))
        .collect()
}

fn add(scores: &mut Scores, project: &str, amount: Decimal) -> Result<(), RuleError> {
    // Votes for unknown projects are a validation error; they score nothing here.
    if let Some(score) = scores.get_mut(project) {
        *score = score.checked_add(amount).ok_or(RuleError::Overflow)?;
    }
    Ok(())
}

/// Scores according to the instance's vote type. Ordinal ballots use Borda,
/// the only scoring function implemented.
pub fn aggregate_scores(instance: &PbInstance) -> Result<Scores, RuleError> {
    match instance.meta.vote_type {
        VoteType::Approval => approval_scores(instance),
        VoteType::Ordinal => {
            let scoring_fn = instance.meta.scoring_fn();
            if scoring_fn != BORDA {
                return Err(RuleError::UnsupportedScoringFn(scoring_fn.to_string()));
            }
            borda_scores(instance)
        }
        VoteType::Cumulative | VoteType::Scoring => points_scores(instance),
    }
}

/// The number of votes approving each project.
pub fn approval_scores(instance: &PbInstance) -> Result<Scores, RuleError> {
    if instance.meta.vote_type != VoteType::Approval {
        return Err(RuleError::WrongVoteType {
            expected: "approval",
            found: instance.meta.vote_type,
        });
    }
    let mut scores = zero_scores(instance);
    for vote in &instance.votes {
        for project in &vote.vote {
            add(&mut scores, project, Decimal::ONE)?;
        }
    }
    Ok(scores)
}

/// Borda with `m = num_projects`: the project ranked k-th (1-based) on a
/// ballot gets `m - k` points from it, whatever the ballot's length.
/// Unranked projects get nothing.
pub fn borda_scores(instance: &PbInstance) -> Result<Scores, RuleError> {
    if instance.meta.vote_type != VoteType::Ordinal {
        return Err(RuleError::WrongVoteType {
            expected: "ordinal",
            found: instance.meta.vote_type,
        });
    }
    let m = Decimal::from(instance.meta.num_projects);
    let mut scores = zero_scores(instance);
    for vote in &instance.votes {
        let mut weight = m;
        for project in &vote.vote {
            weight -= Decimal::ONE;
            add(&mut scores, project, weight)?;
        }
    }
    Ok(scores)
}

/// Sum of points. A project missing from a ballot gets 0 (cumulative) or
/// `default_score` (scoring) from it.
pub fn points_scores(instance: &PbInstance) -> Result<Scores, RuleError> {
    let vote_type = instance.meta.vote_type;
    if !vote_type.uses_points() {
        return Err(RuleError::WrongVoteType {
            expected: "cumulative or scoring",
            found: vote_type,
        });
    }
    let default = match vote_type {
        VoteType::Scoring => instance.meta.default_score(),
        _ => Decimal::ZERO,
    };

    // Every ballot first gives every project the default, then listed
    // projects are corrected to their actual points.
    let base = Decimal::from(instance.votes.len())
        .checked_mul(default)
        .ok_or(RuleError::Overflow)?;
    let mut scores: Scores = instance.projects.iter().map(|p| (p.project_id.clone(), base)).collect();
    for vote in &instance.votes {
        let Some(points) = &vote.points else { continue };
        for (project, &p) in vote.vote.iter().zip(points) {
            let delta = p.checked_sub(default).ok_or(RuleError::Overflow)?;
            add(&mut scores, project, delta)?;
        }
    }
    Ok(scores)
}
