use std::fmt::Write as _;

use crate::model::{PbInstance, Project, VoteRecord};

/// Writes the canonical form of `instance`.
///
/// Sections come in the order META, PROJECTS, VOTES. Fields are joined by
/// `"; "`, list items by `","`, every line ends with a single `\n` and no
/// line carries trailing whitespace. META rows are written obligatory keys
/// first, then the optional typed keys that were given, then non-standard
/// keys in their original order. Resolved defaults are not written.
///
/// Values containing `;`, `,` (in list items) or line breaks cannot be
/// represented; the validator warns about them.
pub fn serialize_canonical(instance: &PbInstance) -> String {
    let mut out = String::new();
    out.push_str("META\n");
    push_row(&mut out, ["key", "value"]);
    for (key, value) in instance.meta.rows() {
        push_row(&mut out, [key.as_str(), value.as_str()]);
    }

    out.push_str("PROJECTS\n");
    push_row(&mut out, instance.project_header.iter().map(String::as_str));
    for project in &instance.projects {
        let cells: Vec<String> = instance
            .project_header
            .iter()
            .map(|column| project_cell(project, column))
            .collect();
        push_row(&mut out, cells.iter().map(String::as_str));
    }

    out.push_str("VOTES\n");
    push_row(&mut out, instance.vote_header.iter().map(String::as_str));
    for vote in &instance.votes {
        let cells: Vec<String> = instance
            .vote_header
            .iter()
            .map(|column| vote_cell(vote, column))
            .collect();
        push_row(&mut out, cells.iter().map(String::as_str));
    }
    out
}

fn push_row<'a>(out: &mut String, fields: impl IntoIterator<Item = &'a str>) {
    let start = out.len();
    for (i, field) in fields.into_iter().enumerate() {
        if i > 0 {
            out.push_str("; ");
        }
        out.push_str(field);
    }
    // An empty last field would otherwise leave "; " dangling.
    let trimmed = out[start..].trim_end().len();
    out.truncate(start + trimmed);
    out.push('\n');
}

fn join_list(items: &[String]) -> String {
    items.join(",")
}

fn project_cell(project: &Project, column: &str) -> String {
    match column {
        "project_id" => project.project_id.clone(),
        "cost" => project.cost.to_string(),
        "name" => project.name.clone().unwrap_or_default(),
        "category" => project.category.as_deref().map(join_list).unwrap_or_default(),
        "target" => project.target.as_deref().map(join_list).unwrap_or_default(),
        other => project.extra.get(other).cloned().unwrap_or_default(),
    }
}

fn vote_cell(vote: &VoteRecord, column: &str) -> String {
    match column {
        "voter_id" => vote.voter_id.clone(),
        "age" => vote.age.map(|a| a.to_string()).unwrap_or_default(),
        "sex" => vote.sex.clone().unwrap_or_default(),
        "voting_method" => vote.voting_method.clone().unwrap_or_default(),
        "vote" => join_list(&vote.vote),
        "points" => match &vote.points {
            Some(points) => {
                let mut s = String::new();
                for (i, p) in points.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    let _ = write!(s, "{p}");
                }
                s
            }
            None => String::new(),
        },
        other => vote.extra.get(other).cloned().unwrap_or_default(),
    }
}
