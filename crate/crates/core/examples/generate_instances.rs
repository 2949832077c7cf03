//! Generate random instances, including ones broken on purpose.
//!
//! cargo run --example generate_instances

use pbkit::cli::{generate_random_instance, GeneratorSpec, Span};
use pbkit::serialize_canonical;
use pbkit::validator::{validate, ViolationCode};
use pbkit::VoteType;

fn main() {
    let mut spec = GeneratorSpec::new(VoteType::Scoring, 4, 6, 2024);
    spec.points = Span { min: -2, max: 5 };
    let instance = generate_random_instance(&spec).unwrap();
    print!("{}", serialize_canonical(&instance));
    assert_eq!(
        instance,
        generate_random_instance(&spec).unwrap(),
        "same seed, same instance"
    );

    println!();
    for code in [
        ViolationCode::VoteLen,
        ViolationCode::PointsOrder,
        ViolationCode::CountProjects,
    ] {
        let broken = generate_random_instance(&spec.clone().with_mutation(code)).unwrap();
        let found: Vec<_> = validate(&broken).iter().map(|v| v.code.as_str()).collect();
        println!("mutation {code}: validator reports {found:?}");
    }
}
