//! Rewrite a messy file in canonical form and show that doing it twice
//! changes nothing.
//!
//! cargo run --example canonicalize

use pbkit::{parse, serialize_canonical};

const MESSY: &str = "META\r
key;value\r
description ;  Small test  \r
country;Nowhere\r
unit;Town\r
instance;1\r
num_projects;2\r
num_votes;2\r
budget;100.50\r
vote_type;ordinal\r
rule;greedy\r
\r
PROJECTS\r
project_id;cost;name\r
b;40.25;Bench\r
a;60;\r
VOTES\r
voter_id;vote\r
x;a , b\r
y;b\r
";

fn main() {
    let first = serialize_canonical(&parse(MESSY).into_result().expect("parses"));
    print!("{first}");
    let second = serialize_canonical(&parse(&first).into_result().expect("parses"));
    assert_eq!(first, second);
    println!("-- canonical form is a fixed point ({} bytes)", first.len());
}
