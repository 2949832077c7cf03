//! Borda scores for ranked ballots.
//!
//! cargo run --example ordinal_borda

use pbkit::model::{MetaSection, Project, VoteRecord};
use pbkit::rules::{borda_scores, greedy_outcome, GreedyVariant, TieBreak};
use pbkit::{PbInstance, VoteType};

fn main() {
    let projects = vec![
        Project::new("park", 300.into()),
        Project::new("library", 500.into()),
        Project::new("bikes", 200.into()),
        Project::new("murals", 100.into()),
    ];
    let ballots: [&[&str]; 4] = [
        &["library", "park", "bikes"],
        &["park", "library"],
        &["bikes", "murals", "park"],
        &["library"],
    ];
    let votes = ballots
        .iter()
        .enumerate()
        .map(|(i, b)| VoteRecord::new((i + 1).to_string(), b.iter().map(|s| s.to_string()).collect()))
        .collect();
    let meta = MetaSection::new(VoteType::Ordinal, 700.into(), 4, 4);
    let instance = PbInstance::new(meta.resolve_defaults().unwrap(), projects, votes);

    // With four projects, first place is worth 3, second 2, third 1.
    for (project, score) in borda_scores(&instance).unwrap() {
        println!("{project:>8}: {score}");
    }
    let outcome = greedy_outcome(&instance, GreedyVariant::default(), TieBreak::default()).unwrap();
    println!("funded: {}", outcome.funded.join(", "));
}
