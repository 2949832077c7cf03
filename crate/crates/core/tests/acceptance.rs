//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.
//!
//! `cargo test -p pbkit --test acceptance`

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{count_approvals_in_text, naive_borda, naive_greedy_skip, naive_scores, WIELICZKA};
use pbkit::cli::{generate_random_instance, run, GeneratorSpec};
use pbkit::model::{Bound, Setting};
use pbkit::parser::{parse, parse_bytes, serialize_canonical};
use pbkit::rules::{borda_scores, greedy_outcome, GreedyVariant, TieBreak};
use pbkit::validator::{error_count, validate, ViolationCode};
use pbkit::{PbInstance, VoteType};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rust_decimal::Decimal;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn golden_example() -> Check {
    let started = Instant::now();
    let result = parse(WIELICZKA);
    let elapsed = started.elapsed();
    ensure!(result.diagnostics.is_empty(), "diagnostics: {:?}", result.diagnostics);
    let inst = result.instance.ok_or("no instance")?;
    ensure!(inst.projects.len() == 5, "{} projects", inst.projects.len());
    ensure!(inst.votes.len() == 10, "{} votes", inst.votes.len());
    ensure!(inst.meta.budget == Decimal::from(2500), "budget {}", inst.meta.budget);
    ensure!(
        inst.meta.vote_type == VoteType::Approval,
        "vote_type {}",
        inst.meta.vote_type
    );
    ensure!(
        inst.meta.min_length == Setting::Given(1),
        "min_length {:?}",
        inst.meta.min_length
    );
    ensure!(
        inst.meta.max_length == Setting::Given(3),
        "max_length {:?}",
        inst.meta.max_length
    );
    ensure!(elapsed < Duration::from_millis(10), "parse took {elapsed:?}");
    Ok(format!(
        "5 projects, 10 votes, budget 2500, approval, lengths 1..3, parsed in {elapsed:?}"
    ))
}

fn derived_outcome() -> Check {
    // The oracle works on the raw listing and is checked against the hand count first.
    let counts = count_approvals_in_text(WIELICZKA);
    let hand: BTreeMap<String, u32> = [("1", 4), ("2", 4), ("4", 6), ("5", 5), ("7", 3)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    ensure!(counts == hand, "raw count {counts:?} disagrees with the hand count");
    let inst = parse(WIELICZKA).instance.ok_or("golden file does not parse")?;
    let oracle_scores: BTreeMap<String, Decimal> = counts.iter().map(|(k, v)| (k.clone(), Decimal::from(*v))).collect();
    let oracle_funded = naive_greedy_skip(&inst, &oracle_scores);
    ensure!(oracle_funded == ["4", "5"], "oracle funds {oracle_funded:?}");

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("wieliczka.pb");
    std::fs::write(&path, WIELICZKA).map_err(|e| e.to_string())?;
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        ["pbkit", "outcome", path.to_str().unwrap(), "--format", "json"],
        &mut out,
        &mut err,
    );
    ensure!(code == 0, "exit {code}: {}", String::from_utf8_lossy(&err));
    let json: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;

    let scores: BTreeMap<String, Decimal> = json["scores"]
        .as_object()
        .ok_or("no scores")?
        .iter()
        .map(|(k, v)| (k.clone(), v.as_str().unwrap_or("").parse().unwrap_or(Decimal::MIN)))
        .collect();
    ensure!(scores == oracle_scores, "scores {scores:?}");
    let funded: Vec<String> = serde_json::from_value(json["funded"].clone()).map_err(|e| e.to_string())?;
    ensure!(funded == oracle_funded, "funded {funded:?}");
    let spent: Decimal = oracle_funded.iter().map(|id| inst.project(id).unwrap().cost).sum();
    ensure!(spent == Decimal::from(2400), "oracle spent {spent}");
    ensure!(json["spent"] == "2400", "spent {}", json["spent"]);
    ensure!(json["remaining"] == "100", "remaining {}", json["remaining"]);
    Ok("scores {1:4, 2:4, 4:6, 5:5, 7:3}, funded [4, 5], spent 2400, remaining 100".into())
}

fn round_trip() -> Check {
    let mut checked = 0;
    for vote_type in VoteType::ALL {
        for seed in 0..1000u64 {
            let spec = GeneratorSpec::new(vote_type, 1 + (seed % 12) as usize, (seed % 25) as usize, seed);
            let inst = generate_random_instance(&spec).map_err(|e| format!("{vote_type} seed {seed}: {e}"))?;
            let text = serialize_canonical(&inst);
            let result = parse(&text);
            // warnings such as a non-standard META key are expected
            ensure!(
                result.errors().next().is_none(),
                "{vote_type} seed {seed}: {:?}",
                result.diagnostics
            );
            let back = result.instance.unwrap();
            ensure!(back == inst, "{vote_type} seed {seed}: parse(serialize(I)) != I");
            ensure!(
                serialize_canonical(&back) == text,
                "{vote_type} seed {seed}: not a fixed point"
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} instances, 0 failures"))
}

fn validator_completeness() -> Check {
    let mut pairs = 0;
    for code in ViolationCode::ALL
        .into_iter()
        .filter(|c| c.severity() == pbkit::parser::Severity::Error)
    {
        let types: Vec<_> = VoteType::ALL.into_iter().filter(|t| code.applies_to(*t)).collect();
        ensure!(!types.is_empty(), "{code} applies to no vote type");
        for vote_type in types {
            for seed in 0..5u64 {
                let twin_spec = GeneratorSpec::new(vote_type, 6, 8, seed);
                let twin = generate_random_instance(&twin_spec).map_err(|e| e.to_string())?;
                let twin_errors = error_count(&validate(&twin));
                ensure!(
                    twin_errors == 0,
                    "{code}/{vote_type}/{seed}: twin has {twin_errors} errors"
                );
                let mutated = generate_random_instance(&twin_spec.with_mutation(code))
                    .map_err(|e| format!("{code}/{vote_type}/{seed}: {e}"))?;
                let found: Vec<_> = validate(&mutated).into_iter().map(|v| v.code).collect();
                ensure!(found.contains(&code), "{code}/{vote_type}/{seed}: got {found:?}");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (code, vote type, seed) mutations each caught"))
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut borda_checked = 0;
    for vote_type in VoteType::ALL {
        for _ in 0..200 {
            let seed = rng.random();
            let spec = GeneratorSpec::new(vote_type, rng.random_range(1..=10), rng.random_range(0..=40), seed);
            let inst = generate_random_instance(&spec).map_err(|e| e.to_string())?;
            let outcome = greedy_outcome(&inst, GreedyVariant::SkipUnaffordable, TieBreak::ByProjectIdAscending)
                .map_err(|e| format!("{vote_type} seed {seed}: {e}"))?;
            let oracle = naive_greedy_skip(&inst, &naive_scores(&inst));
            ensure!(
                outcome.funded == oracle,
                "{vote_type} seed {seed}: {:?} vs {oracle:?}",
                outcome.funded
            );
            if vote_type == VoteType::Ordinal {
                let borda: BTreeMap<_, _> = borda_scores(&inst).map_err(|e| e.to_string())?.into_iter().collect();
                ensure!(borda == naive_borda(&inst), "seed {seed}: Borda differs");
                borda_checked += 1;
            }
        }
    }
    Ok(format!("800 greedy outcomes and {borda_checked} Borda profiles match"))
}

const INTERESTING: &[u8] = b";,\n\r .-0123456789eE+META PROJECTS VOTES\xff\xc3\x80\x00\t";

fn mutate(rng: &mut ChaCha8Rng, base: &[u8]) -> Vec<u8> {
    let mut bytes = base.to_vec();
    for _ in 0..rng.random_range(1..=4) {
        let len = bytes.len();
        let at = if len == 0 { 0 } else { rng.random_range(0..len) };
        match rng.random_range(0..7) {
            0 if len > 0 => bytes[at] = rng.random(),
            1 => bytes.insert(at, INTERESTING[rng.random_range(0..INTERESTING.len())]),
            2 if len > 0 => {
                let end = (at + rng.random_range(1..40)).min(len);
                bytes.drain(at..end);
            }
            3 => bytes.truncate(at),
            4 if len > 0 => {
                let end = (at + rng.random_range(1..60)).min(len);
                let chunk = bytes[at..end].to_vec();
                let to = rng.random_range(0..=len);
                bytes.splice(to..to, chunk);
            }
            5 if len > 0 => bytes[at] = INTERESTING[rng.random_range(0..INTERESTING.len())],
            _ => {
                let digits = rng.random_range(1..30);
                let junk: Vec<u8> = (0..digits).map(|_| b'0' + rng.random_range(0..10)).collect();
                bytes.splice(at..at, junk);
            }
        }
    }
    bytes
}

fn robustness() -> Check {
    let mut corpus = vec![WIELICZKA.as_bytes().to_vec()];
    for (i, vote_type) in VoteType::ALL.into_iter().enumerate() {
        let inst =
            generate_random_instance(&GeneratorSpec::new(vote_type, 6, 10, i as u64)).map_err(|e| e.to_string())?;
        corpus.push(serialize_canonical(&inst).into_bytes());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut rejected = 0;
    panic::set_hook(Box::new(|_| {}));
    let mut failure = None;
    for i in 0..10_000 {
        let input = if i % 5 == 4 {
            let n = rng.random_range(0..512);
            (0..n).map(|_| rng.random()).collect()
        } else {
            let base = &corpus[rng.random_range(0..corpus.len())];
            mutate(&mut rng, base)
        };
        let result = match panic::catch_unwind(AssertUnwindSafe(|| parse_bytes(&input))) {
            Ok(r) => r,
            Err(_) => {
                failure = Some(format!("input {i} panicked: {:?}", String::from_utf8_lossy(&input)));
                break;
            }
        };
        if result.instance.is_none() {
            rejected += 1;
            let positioned = result.diagnostics.iter().any(|d| d.is_error() && d.line >= 1);
            if !positioned {
                failure = Some(format!(
                    "input {i} rejected without a positioned error: {:?}",
                    result.diagnostics
                ));
                break;
            }
        }
    }
    let _ = panic::take_hook();
    if let Some(f) = failure {
        return Err(f);
    }
    Ok(format!(
        "10000 inputs, {rejected} rejected, all with positioned diagnostics, no panics"
    ))
}

fn scale_bound(bound: &mut Setting<Bound>, c: Decimal) {
    let scaled = |b: &Bound| match b {
        Bound::Finite(d) => Bound::Finite(d * c),
        other => *other,
    };
    *bound = match bound {
        Setting::Given(b) => Setting::Given(scaled(b)),
        Setting::Defaulted(b) => Setting::Defaulted(scaled(b)),
        Setting::Absent => Setting::Absent,
    };
}

fn scaled(inst: &PbInstance, c: Decimal) -> PbInstance {
    let mut out = inst.clone();
    for vote in &mut out.votes {
        if let Some(points) = &mut vote.points {
            points.iter_mut().for_each(|p| *p *= c);
        }
    }
    for bound in [
        &mut out.meta.min_points,
        &mut out.meta.max_points,
        &mut out.meta.min_sum_points,
        &mut out.meta.max_sum_points,
    ] {
        scale_bound(bound, c);
    }
    out
}

fn argmax_stability() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let seed = rng.random();
        let spec = GeneratorSpec::new(
            VoteType::Cumulative,
            rng.random_range(1..=12),
            rng.random_range(1..=30),
            seed,
        );
        let inst = generate_random_instance(&spec).map_err(|e| e.to_string())?;
        let run = |i: &PbInstance| greedy_outcome(i, GreedyVariant::SkipUnaffordable, TieBreak::ByProjectIdAscending);
        let base = run(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        for c in [Decimal::from(2), Decimal::from(10)] {
            let other = run(&scaled(&inst, c)).map_err(|e| format!("seed {seed} x{c}: {e}"))?;
            ensure!(other.order() == base.order(), "seed {seed} x{c}: order changed");
            ensure!(other.funded == base.funded, "seed {seed} x{c}: funded set changed");
        }
    }
    Ok("100 cumulative instances, order and funded set unchanged at x2 and x10".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("golden example", golden_example),
        ("derived outcome", derived_outcome),
        ("round trip", round_trip),
        ("validator completeness", validator_completeness),
        ("oracle equivalence", oracle_equivalence),
        ("robustness", robustness),
        ("argmax stability", argmax_stability),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let result = panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
