//! Independent reference computations shared by the integration tests.
//! Nothing here calls into the scoring or allocation code under test.

#![allow(dead_code)]

use std::collections::BTreeMap;

use pbkit::{PbInstance, VoteType};
use rust_decimal::Decimal;

pub const WIELICZKA: &str = include_str!("../data/wieliczka.pb");

/// Approval counts read straight off the raw text: the last `;` field of
/// every row after the VOTES keyword (skipping its header) is the ballot.
pub fn count_approvals_in_text(text: &str) -> BTreeMap<String, u32> {
    let mut counts = BTreeMap::new();
    let mut in_votes = false;
    let mut header_seen = false;
    for line in text.lines() {
        if line.trim() == "VOTES" {
            in_votes = true;
            continue;
        }
        if !in_votes || line.trim().is_empty() {
            continue;
        }
        if !header_seen {
            header_seen = true;
            continue;
        }
        let ballot = line.rsplit(';').next().unwrap();
        for id in ballot.split(',') {
            *counts.entry(id.trim().to_string()).or_insert(0) += 1;
        }
    }
    counts
}

/// Positional scoring evaluated literally: for every vote, every rank k and
/// every project p, add w(k) = m - k when p sits at rank k.
pub fn naive_borda(instance: &PbInstance) -> BTreeMap<String, Decimal> {
    let m = instance.meta.num_projects as i64;
    let mut scores = BTreeMap::new();
    for project in &instance.projects {
        let mut total = Decimal::ZERO;
        for vote in &instance.votes {
            for k in 1..=vote.vote.len() {
                if vote.vote[k - 1] == project.project_id {
                    total += Decimal::from(m - k as i64);
                }
            }
        }
        scores.insert(project.project_id.clone(), total);
    }
    scores
}

/// Per-project, per-vote summation: a listed project gets its points, an
/// unlisted one 0 (cumulative) or the default score (scoring); approval
/// counts 1 per listing.
pub fn naive_scores(instance: &PbInstance) -> BTreeMap<String, Decimal> {
    if instance.meta.vote_type == VoteType::Ordinal {
        return naive_borda(instance);
    }
    let default = match instance.meta.vote_type {
        VoteType::Scoring => instance.meta.default_score(),
        _ => Decimal::ZERO,
    };
    let mut scores = BTreeMap::new();
    for project in &instance.projects {
        let mut total = Decimal::ZERO;
        for vote in &instance.votes {
            let position = vote.vote.iter().position(|id| *id == project.project_id);
            total += match (instance.meta.vote_type, position) {
                (VoteType::Approval, Some(_)) => Decimal::ONE,
                (VoteType::Approval, None) => Decimal::ZERO,
                (_, Some(i)) => vote.points.as_ref().unwrap()[i],
                (_, None) => default,
            };
        }
        scores.insert(project.project_id.clone(), total);
    }
    scores
}

/// Ties among equal scores: all-digit ids first by numeric value, then
/// everything else by text.
fn id_key(id: &str) -> (bool, u128, String) {
    match id.parse::<u128>() {
        Ok(n) if id.bytes().all(|b| b.is_ascii_digit()) => (false, n, id.to_string()),
        _ => (true, 0, id.to_string()),
    }
}

/// Literal greedy: repeatedly take the best remaining project (highest
/// score, then smallest id key) and fund it if it still fits.
pub fn naive_greedy_skip(instance: &PbInstance, scores: &BTreeMap<String, Decimal>) -> Vec<String> {
    let mut pool: Vec<(String, Decimal, Decimal)> = instance
        .projects
        .iter()
        .map(|p| (p.project_id.clone(), p.cost, scores[&p.project_id]))
        .collect();
    let mut left = instance.meta.budget;
    let mut funded = Vec::new();
    while !pool.is_empty() {
        let mut best = 0;
        for i in 1..pool.len() {
            let (a, b) = (&pool[i], &pool[best]);
            if a.2 > b.2 || (a.2 == b.2 && id_key(&a.0) < id_key(&b.0)) {
                best = i;
            }
        }
        let (id, cost, _) = pool.remove(best);
        if cost <= left {
            left -= cost;
            funded.push(id);
        }
    }
    funded
}
