//! Parse a `.pb` file and print what was read.
//!
//! cargo run --example parse_file [-- path/to/file.pb]

use std::env;
use std::fs;

use pbkit::parse_bytes;

const SAMPLE: &str = include_str!("../tests/data/wieliczka.pb");

fn main() {
    let bytes = match env::args().nth(1) {
        Some(path) => fs::read(&path).unwrap_or_else(|e| panic!("cannot read {path}: {e}")),
        None => SAMPLE.as_bytes().to_vec(),
    };
    let result = parse_bytes(&bytes);
    for d in &result.diagnostics {
        eprintln!("{d}");
    }
    let Some(instance) = result.instance else {
        eprintln!("file rejected");
        std::process::exit(2);
    };
    let meta = &instance.meta;
    println!("{} ({}, {})", meta.description, meta.unit, meta.instance);
    println!(
        "{} votes over {} projects, budget {}",
        meta.vote_type,
        instance.projects.len(),
        meta.budget
    );
    for p in &instance.projects {
        let category = p.category.as_deref().map(|c| c.join(", ")).unwrap_or_default();
        println!("  project {:>4}  cost {:>8}  {category}", p.project_id, p.cost);
    }
    for v in instance.votes.iter().take(5) {
        println!("  voter {:>4}: {}", v.voter_id, v.vote.join(" > "));
    }
    if instance.votes.len() > 5 {
        println!("  ... {} more", instance.votes.len() - 5);
    }
}
