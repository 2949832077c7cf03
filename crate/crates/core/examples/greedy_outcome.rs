//! Run the greedy rule on the sample file with each variant and tie-break.
//!
//! cargo run --example greedy_outcome

use pbkit::parse;
use pbkit::rules::{greedy_outcome, GreedyVariant, TieBreak};

fn main() {
    let mut instance = parse(include_str!("../tests/data/wieliczka.pb")).instance.unwrap();
    let outcome = greedy_outcome(&instance, GreedyVariant::default(), TieBreak::default()).unwrap();
    print!("{outcome}");

    // With 2900 to spend, skipping over project 1 reaches the cheaper project 2.
    instance.meta.budget = 2900.into();
    instance.projects[0].cost = 900.into();
    instance.projects[1].cost = 400.into();
    for variant in [GreedyVariant::SkipUnaffordable, GreedyVariant::StopAtFirstUnaffordable] {
        for tie_break in [TieBreak::ByProjectIdAscending, TieBreak::ByCostAscendingThenId] {
            let o = greedy_outcome(&instance, variant, tie_break).unwrap();
            println!(
                "{variant:?} / {tie_break:?}: funded {:?}, {} left",
                o.funded, o.remaining
            );
        }
    }
}
