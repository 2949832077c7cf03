//! Break the sample file in a few ways and print the validator's report,
//! as text and as JSON.
//!
//! cargo run --example validate_report

use pbkit::model::{Bound, Setting};
use pbkit::parse;
use pbkit::validator::{render_json, render_text, validate};

fn main() {
    let mut instance = parse(include_str!("../tests/data/wieliczka.pb")).instance.unwrap();
    print!("as shipped:\n{}", render_text(&validate(&instance)));

    instance.meta.num_votes = 9;
    instance.votes[0].vote.push("5".into());
    instance.meta.max_sum_cost = Setting::Given(Bound::Finite(3000.into()));
    instance.meta.extra.insert("currency".into(), "PLN".into());

    let violations = validate(&instance);
    print!("\nafter edits:\n{}", render_text(&violations));
    println!("\n{}", render_json(&violations));
}
