use std::collections::BTreeMap;
use std::fmt;

use rust_decimal::Decimal;
use serde::Serialize;

use crate::model::{PbInstance, VoteType};

/// Headline facts about an instance. Counts come from the sections
/// themselves, not from the META claims.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceSummary {
    pub description: String,
    pub country: String,
    pub unit: String,
    pub instance: String,
    pub vote_type: VoteType,
    pub rule: String,
    pub num_projects: usize,
    pub num_votes: usize,
    pub budget: Decimal,
    pub total_project_cost: Decimal,
    /// `None` when there are no votes.
    pub min_vote_length: Option<usize>,
    pub max_vote_length: Option<usize>,
    /// Rounded to four decimal places.
    pub mean_vote_length: Option<Decimal>,
    /// Projects per category label. A project with two labels counts for both.
    pub categories: BTreeMap<String, usize>,
}

impl InstanceSummary {
    pub fn of(instance: &PbInstance) -> Self {
        let meta = &instance.meta;
        let lengths: Vec<usize> = instance.votes.iter().map(|v| v.vote.len()).collect();
        let total: usize = lengths.iter().sum();
        let mean = (!lengths.is_empty()).then(|| {
            (Decimal::from(total) / Decimal::from(lengths.len()))
                .round_dp(4)
                .normalize()
        });
        let mut categories = BTreeMap::new();
        for label in instance.projects.iter().flat_map(|p| p.category.iter().flatten()) {
            *categories.entry(label.clone()).or_insert(0) += 1;
        }
        InstanceSummary {
            description: meta.description.clone(),
            country: meta.country.clone(),
            unit: meta.unit.clone(),
            instance: meta.instance.clone(),
            vote_type: meta.vote_type,
            rule: meta.rule.clone(),
            num_projects: instance.projects.len(),
            num_votes: instance.votes.len(),
            budget: meta.budget,
            total_project_cost: instance.total_cost(),
            min_vote_length: lengths.iter().min().copied(),
            max_vote_length: lengths.iter().max().copied(),
            mean_vote_length: mean,
            categories,
        }
    }
}

impl fmt::Display for InstanceSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn opt<T: fmt::Display>(value: Option<T>) -> String {
            value.map_or_else(|| "-".to_string(), |v| v.to_string())
        }
        writeln!(f, "description: {}", self.description)?;
        writeln!(f, "country: {}", self.country)?;
        writeln!(f, "unit: {}", self.unit)?;
        writeln!(f, "instance: {}", self.instance)?;
        writeln!(f, "vote type: {}", self.vote_type)?;
        writeln!(f, "rule: {}", self.rule)?;
        writeln!(f, "projects: {}", self.num_projects)?;
        writeln!(f, "votes: {}", self.num_votes)?;
        writeln!(f, "budget: {}", self.budget)?;
        writeln!(f, "total project cost: {}", self.total_project_cost)?;
        writeln!(
            f,
            "vote length: min {}, max {}, mean {}",
            opt(self.min_vote_length),
            opt(self.max_vote_length),
            opt(self.mean_vote_length)
        )?;
        for (category, count) in &self.categories {
            writeln!(f, "category {category}: {count}")?;
        }
        Ok(())
    }
}
