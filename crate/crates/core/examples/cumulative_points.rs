//! Cumulative and scoring ballots, where voters hand out points.
//!
//! cargo run --example cumulative_points

use pbkit::model::{Bound, MetaSection, Project, Setting, VoteRecord};
use pbkit::rules::points_scores;
use pbkit::validator::{render_text, validate};
use pbkit::{PbInstance, VoteType};
use rust_decimal::Decimal;

fn ballot(id: &str, entries: &[(&str, i64)]) -> VoteRecord {
    VoteRecord::new(id, entries.iter().map(|(p, _)| p.to_string()).collect())
        .with_points(entries.iter().map(|&(_, n)| Decimal::from(n)).collect())
}

fn main() {
    let projects = vec![
        Project::new("a", 400.into()),
        Project::new("b", 250.into()),
        Project::new("c", 350.into()),
    ];
    let votes = vec![
        ballot("1", &[("a", 6), ("c", 4)]),
        ballot("2", &[("b", 10)]),
        ballot("3", &[("c", 5), ("a", 3), ("b", 2)]),
    ];

    let mut meta = MetaSection::new(VoteType::Cumulative, 700.into(), 3, 3);
    meta.max_sum_points = Setting::Given(Bound::Finite(10.into()));
    let cumulative = PbInstance::new(meta.resolve_defaults().unwrap(), projects.clone(), votes.clone());
    println!("cumulative: {:?}", points_scores(&cumulative).unwrap());

    // A scoring ballot gives unlisted projects the default score.
    let mut meta = MetaSection::new(VoteType::Scoring, 700.into(), 3, 3);
    meta.default_score = Setting::Given(1.into());
    let scoring = PbInstance::new(meta.resolve_defaults().unwrap(), projects, votes);
    println!("scoring, default 1: {:?}", points_scores(&scoring).unwrap());

    let mut over = cumulative.clone();
    over.votes[0] = ballot("1", &[("a", 8), ("c", 4)]);
    print!("{}", render_text(&validate(&over)));
}
