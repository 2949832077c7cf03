use std::collections::{HashMap, HashSet};

use indexmap::IndexMap;
use rust_decimal::Decimal;

use super::diagnostic::{Diagnostic, DiagnosticCode as Code};
use crate::model::{is_typed_meta_key, Bound, MetaSection, PbInstance, Project, Setting, VoteRecord, VoteType};

/// Output of [`parse`]. `instance` is `None` exactly when `diagnostics`
/// holds at least one error.
#[derive(Debug, Clone)]
pub struct ParseResult {
    pub instance: Option<PbInstance>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseResult {
    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| !d.is_error())
    }

    pub fn into_result(self) -> Result<PbInstance, Vec<Diagnostic>> {
        match self.instance {
            Some(instance) => Ok(instance),
            None => Err(self.diagnostics),
        }
    }
}

/// Parses raw bytes. Bytes that are not UTF-8 produce an `InvalidUtf8`
/// error positioned at the offending line.
pub fn parse_bytes(bytes: &[u8]) -> ParseResult {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(err) => {
            let valid = &bytes[..err.valid_up_to()];
            let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
            let line_start = valid.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
            // The prefix is valid UTF-8, so the column counts characters.
            let column = std::str::from_utf8(&valid[line_start..])
                .map(|s| s.chars().count() + 1)
                .unwrap_or(1);
            ParseResult {
                instance: None,
                diagnostics: vec![Diagnostic::new(
                    Code::InvalidUtf8,
                    line,
                    Some(column),
                    format!("invalid UTF-8 sequence at byte offset {}", err.valid_up_to()),
                )],
            }
        }
    }
}

/// Parses the text of a `.pb` file.
pub fn parse(text: &str) -> ParseResult {
    let mut parser = Parser::default();
    let instance = parser.run(text);
    let has_error = parser.diagnostics.iter().any(Diagnostic::is_error);
    ParseResult {
        instance: if has_error { None } else { instance },
        diagnostics: parser.diagnostics,
    }
}

#[derive(Debug, Clone, Copy)]
struct Line<'a> {
    number: usize,
    text: &'a str,
}

#[derive(Debug, Clone, Copy)]
struct Field<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Meta,
    Projects,
    Votes,
}

impl Section {
    const ALL: [Section; 3] = [Section::Meta, Section::Projects, Section::Votes];

    fn keyword(self) -> &'static str {
        match self {
            Section::Meta => "META",
            Section::Projects => "PROJECTS",
            Section::Votes => "VOTES",
        }
    }

    fn from_keyword(line: &str) -> Option<Section> {
        Section::ALL.into_iter().find(|s| s.keyword() == line)
    }
}

#[derive(Default)]
struct SectionBody<'a> {
    keyword_line: usize,
    rows: Vec<Line<'a>>,
}

/// Splits `line` on `;` and trims each field, remembering where the trimmed
/// text starts.
fn split_fields(line: Line<'_>) -> Vec<Field<'_>> {
    let mut fields = Vec::new();
    let mut offset = 0;
    for piece in line.text.split(';') {
        let lead = piece.len() - piece.trim_start().len();
        let start = offset + lead;
        fields.push(Field {
            text: piece.trim(),
            column: line.text[..start].chars().count() + 1,
        });
        offset += piece.len() + 1;
    }
    fields
}

fn is_count(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// `-?digits(.digits)?`, checked before handing the text to `Decimal`.
fn is_decimal_literal(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let (int, frac) = match body.split_once('.') {
        Some((int, frac)) => (int, Some(frac)),
        None => (body, None),
    };
    is_count(int) && frac.is_none_or(is_count)
}

pub(crate) fn parse_decimal(s: &str) -> Option<Decimal> {
    if !is_decimal_literal(s) {
        return None;
    }
    Decimal::from_str_exact(s).ok()
}

#[derive(Default)]
struct Parser {
    diagnostics: Vec<Diagnostic>,
}

impl Parser {
    fn error(&mut self, code: Code, line: usize, column: Option<usize>, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic::new(code, line, column, message));
    }

    fn run(&mut self, text: &str) -> Option<PbInstance> {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        let lines: Vec<Line<'_>> = text
            .split('\n')
            .enumerate()
            .map(|(i, l)| Line {
                number: i + 1,
                text: l.strip_suffix('\r').unwrap_or(l),
            })
            .collect();

        let [meta, projects, votes] = self.split_sections(&lines)?;

        let meta = self.parse_meta(&meta);
        let projects = self.parse_projects(&projects);
        let votes = self.parse_votes(&votes, projects.as_ref().map(|(p, _)| p.as_slice()));

        let (projects, project_header) = projects?;
        let (votes, vote_header) = votes?;
        let meta = meta?.resolve_defaults().ok()?;
        Some(PbInstance {
            meta,
            projects,
            votes,
            project_header,
            vote_header,
        })
    }

    fn split_sections<'a>(&mut self, lines: &[Line<'a>]) -> Option<[SectionBody<'a>; 3]> {
        let mut bodies: [SectionBody<'a>; 3] = Default::default();
        let mut seen = [false; 3];
        let mut current: Option<usize> = None;
        let mut structural_error = false;

        for &line in lines {
            let trimmed = line.text.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(section) = Section::from_keyword(trimmed) {
                let idx = section as usize;
                if seen[idx] {
                    self.error(
                        Code::SectionOutOfOrder,
                        line.number,
                        Some(1),
                        format!("section {} appears more than once", section.keyword()),
                    );
                    structural_error = true;
                } else if let Some(missing) = (0..idx).find(|&i| !seen[i]) {
                    self.error(
                        Code::SectionOutOfOrder,
                        line.number,
                        Some(1),
                        format!(
                            "section {} appears before section {}",
                            section.keyword(),
                            Section::ALL[missing].keyword()
                        ),
                    );
                    structural_error = true;
                } else if let Some(later) = (idx + 1..3).find(|&i| seen[i]) {
                    self.error(
                        Code::SectionOutOfOrder,
                        line.number,
                        Some(1),
                        format!(
                            "section {} appears after section {}",
                            section.keyword(),
                            Section::ALL[later].keyword()
                        ),
                    );
                    structural_error = true;
                }
                seen[idx] = true;
                bodies[idx].keyword_line = line.number;
                current = Some(idx);
                continue;
            }
            match current {
                Some(idx) => bodies[idx].rows.push(line),
                None => {
                    self.error(
                        Code::UnexpectedLine,
                        line.number,
                        Some(1),
                        "content before the META section",
                    );
                    structural_error = true;
                }
            }
        }

        let last_line = lines.len().max(1);
        for (idx, section) in Section::ALL.into_iter().enumerate() {
            if !seen[idx] {
                self.error(
                    Code::SectionMissing,
                    last_line,
                    None,
                    format!("section {} is missing", section.keyword()),
                );
                structural_error = true;
            }
        }
        (!structural_error).then_some(bodies)
    }

    /// Validates a header row and returns the column names.
    fn parse_header(&mut self, body: &SectionBody<'_>, section: &str) -> Option<(Vec<String>, usize)> {
        let Some(&header) = body.rows.first() else {
            self.error(
                Code::HeaderMissingRequiredColumn,
                body.keyword_line,
                None,
                format!("{section} section has no header row"),
            );
            return None;
        };
        let fields = split_fields(header);
        let mut seen = HashSet::new();
        let mut ok = true;
        for field in &fields {
            if field.text.is_empty() {
                self.error(
                    Code::EmptyIdentifier,
                    header.number,
                    Some(field.column),
                    "empty column name",
                );
                ok = false;
            } else if !seen.insert(field.text) {
                self.error(
                    Code::DuplicateColumn,
                    header.number,
                    Some(field.column),
                    format!("column `{}` appears more than once", field.text),
                );
                ok = false;
            }
        }
        ok.then(|| (fields.iter().map(|f| f.text.to_string()).collect(), header.number))
    }

    fn require_prefix(&mut self, header: &[String], line: usize, required: &[&str], section: &str) -> bool {
        let ok = header.len() >= required.len() && header.iter().zip(required).all(|(h, r)| h == r);
        if !ok {
            self.error(
                Code::HeaderMissingRequiredColumn,
                line,
                Some(1),
                format!("{section} header must begin with `{}`", required.join("; ")),
            );
        }
        ok
    }

    /// Splits a row and checks it against the header arity.
    fn row_fields<'a>(&mut self, line: Line<'a>, arity: usize) -> Option<Vec<Field<'a>>> {
        let fields = split_fields(line);
        if fields.len() != arity {
            self.error(
                Code::RowArityMismatch,
                line.number,
                None,
                format!("expected {arity} fields, found {}", fields.len()),
            );
            return None;
        }
        Some(fields)
    }

    fn list(&mut self, field: Field<'_>, line: usize, what: &str) -> Option<Vec<String>> {
        if field.text.is_empty() {
            return Some(Vec::new());
        }
        let items: Vec<String> = field.text.split(',').map(|s| s.trim().to_string()).collect();
        if items.iter().any(String::is_empty) {
            self.error(
                Code::EmptyListItem,
                line,
                Some(field.column),
                format!("empty item in {what} list `{}`", field.text),
            );
            return None;
        }
        Some(items)
    }

    fn decimal(&mut self, field: Field<'_>, line: usize, what: &str, non_negative: bool) -> Option<Decimal> {
        let Some(value) = parse_decimal(field.text) else {
            self.error(
                Code::MalformedNumber,
                line,
                Some(field.column),
                format!("{what}: `{}` is not a decimal number", field.text),
            );
            return None;
        };
        if non_negative && value.is_sign_negative() && !value.is_zero() {
            self.error(
                Code::NegativeValue,
                line,
                Some(field.column),
                format!("{what} must not be negative, found {}", field.text),
            );
            return None;
        }
        Some(value)
    }

    fn count<T: std::str::FromStr>(&mut self, field: Field<'_>, line: usize, what: &str) -> Option<T> {
        let parsed = is_count(field.text).then(|| field.text.parse::<T>().ok()).flatten();
        if parsed.is_none() {
            self.error(
                Code::MalformedNumber,
                line,
                Some(field.column),
                format!("{what}: `{}` is not a non-negative integer", field.text),
            );
        }
        parsed
    }

    fn parse_meta(&mut self, body: &SectionBody<'_>) -> Option<MetaSection> {
        let (header, header_line) = self.parse_header(body, "META")?;
        if header != ["key", "value"] {
            self.error(
                Code::HeaderMissingRequiredColumn,
                header_line,
                Some(1),
                "META header must be `key; value`",
            );
            return None;
        }

        let mut entries: IndexMap<&str, (Field<'_>, usize)> = IndexMap::new();
        let mut ok = true;
        for &line in &body.rows[1..] {
            let Some(fields) = self.row_fields(line, 2) else {
                ok = false;
                continue;
            };
            let (key, value) = (fields[0], fields[1]);
            if key.text.is_empty() {
                self.error(Code::EmptyIdentifier, line.number, Some(key.column), "empty META key");
                ok = false;
            } else if entries.contains_key(key.text) {
                self.error(
                    Code::DuplicateMetaKey,
                    line.number,
                    Some(key.column),
                    format!("META key `{}` appears more than once", key.text),
                );
                ok = false;
            } else {
                entries.insert(key.text, (value, line.number));
            }
        }

        let keyword_line = body.keyword_line;
        let missing = |parser: &mut Parser, key: &str| {
            parser.error(
                Code::MissingRequiredKey,
                keyword_line,
                None,
                format!("required META key `{key}` is missing"),
            );
        };
        let text = |parser: &mut Parser, key: &str| -> Option<String> {
            match entries.get(key) {
                Some((f, _)) => Some(f.text.to_string()),
                None => {
                    missing(parser, key);
                    None
                }
            }
        };
        let description = text(self, "description");
        let country = text(self, "country");
        let unit = text(self, "unit");
        let instance = text(self, "instance");
        let rule = text(self, "rule");

        let num_projects = self.required_with(&entries, "num_projects", keyword_line, |p, f, l| {
            p.count::<usize>(f, l, "num_projects")
        });
        let num_votes = self.required_with(&entries, "num_votes", keyword_line, |p, f, l| {
            p.count::<usize>(f, l, "num_votes")
        });
        let budget = self.required_with(&entries, "budget", keyword_line, |p, f, l| {
            p.decimal(f, l, "budget", true)
        });
        let vote_type = self.required_with(&entries, "vote_type", keyword_line, |p, f, l| {
            match f.text.parse::<VoteType>() {
                Ok(vt) => Some(vt),
                Err(_) => {
                    p.error(
                        Code::UnknownVoteType,
                        l,
                        Some(f.column),
                        format!("unknown vote_type `{}`", f.text),
                    );
                    None
                }
            }
        });

        let opt_text = |key: &str| entries.get(key).map(|(f, _)| f.text.to_string());
        let subunit = opt_text("subunit");
        let district = opt_text("district");
        let edition = opt_text("edition");
        let language = opt_text("language");
        let comment = opt_text("comment");
        let date_begin = opt_text("date_begin");
        let date_end = opt_text("date_end");
        let scoring_fn = opt_text("scoring_fn").map_or(Setting::Absent, Setting::Given);

        let opt_count = |p: &mut Parser, key: &str| -> Result<Setting<usize>, ()> {
            match entries.get(key) {
                None => Ok(Setting::Absent),
                Some(&(f, l)) => p.count(f, l, key).map(Setting::Given).ok_or(()),
            }
        };
        let min_length = opt_count(self, "min_length");
        let max_length = opt_count(self, "max_length");

        let opt_bound = |p: &mut Parser, key: &str, non_negative: bool| -> Result<Setting<Bound>, ()> {
            match entries.get(key) {
                None => Ok(Setting::Absent),
                Some(&(f, l)) => p
                    .decimal(f, l, key, non_negative)
                    .map(|d| Setting::Given(Bound::Finite(d)))
                    .ok_or(()),
            }
        };
        let min_sum_cost = opt_bound(self, "min_sum_cost", true);
        let max_sum_cost = opt_bound(self, "max_sum_cost", true);
        let min_points = opt_bound(self, "min_points", false);
        let max_points = opt_bound(self, "max_points", false);
        let min_sum_points = opt_bound(self, "min_sum_points", false);
        let max_sum_points = opt_bound(self, "max_sum_points", false);
        let default_score = match entries.get("default_score") {
            None => Ok(Setting::Absent),
            Some(&(f, l)) => self.decimal(f, l, "default_score", false).map(Setting::Given).ok_or(()),
        };

        let mut extra = IndexMap::new();
        for (key, (value, line)) in &entries {
            if !is_typed_meta_key(key) {
                self.diagnostics.push(Diagnostic::new(
                    Code::UnknownMetaKey,
                    *line,
                    Some(1),
                    format!("non-standard META key `{key}` kept as extra"),
                ));
                extra.insert(key.to_string(), value.text.to_string());
            }
        }

        if vote_type == Some(VoteType::Cumulative) && matches!(max_sum_points, Ok(Setting::Absent)) {
            self.error(
                Code::MissingRequiredKey,
                keyword_line,
                None,
                "required META key `max_sum_points` is missing (vote_type is cumulative)",
            );
            return None;
        }

        if !ok {
            return None;
        }
        Some(MetaSection {
            description: description?,
            country: country?,
            unit: unit?,
            instance: instance?,
            num_projects: num_projects?,
            num_votes: num_votes?,
            budget: budget?,
            rule: rule?,
            vote_type: vote_type?,
            subunit,
            district,
            edition,
            language,
            comment,
            date_begin,
            date_end,
            min_length: min_length.ok()?,
            max_length: max_length.ok()?,
            min_sum_cost: min_sum_cost.ok()?,
            max_sum_cost: max_sum_cost.ok()?,
            min_points: min_points.ok()?,
            max_points: max_points.ok()?,
            min_sum_points: min_sum_points.ok()?,
            max_sum_points: max_sum_points.ok()?,
            scoring_fn,
            default_score: default_score.ok()?,
            extra,
        })
    }

    fn required_with<'a, T>(
        &mut self,
        entries: &IndexMap<&str, (Field<'a>, usize)>,
        key: &str,
        keyword_line: usize,
        convert: impl FnOnce(&mut Parser, Field<'a>, usize) -> Option<T>,
    ) -> Option<T> {
        match entries.get(key) {
            Some(&(field, line)) => convert(self, field, line),
            None => {
                self.error(
                    Code::MissingRequiredKey,
                    keyword_line,
                    None,
                    format!("required META key `{key}` is missing"),
                );
                None
            }
        }
    }

    fn parse_projects(&mut self, body: &SectionBody<'_>) -> Option<(Vec<Project>, Vec<String>)> {
        let (header, header_line) = self.parse_header(body, "PROJECTS")?;
        if !self.require_prefix(&header, header_line, &["project_id", "cost"], "PROJECTS") {
            return None;
        }

        let mut projects = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        for &line in &body.rows[1..] {
            let Some(fields) = self.row_fields(line, header.len()) else {
                continue;
            };
            let Some(project) = self.project_row(&header, &fields, line.number) else {
                continue;
            };
            if let Some(first) = ids.get(&project.project_id) {
                self.error(
                    Code::DuplicateProjectId,
                    line.number,
                    Some(fields[0].column),
                    format!("project id `{}` already used on line {first}", project.project_id),
                );
            } else {
                ids.insert(project.project_id.clone(), line.number);
                projects.push(project);
            }
        }
        // Votes are still checked against the projects that did parse; the
        // recorded errors keep the instance from being returned.
        Some((projects, header))
    }

    fn project_row(&mut self, header: &[String], fields: &[Field<'_>], line: usize) -> Option<Project> {
        let id = fields[0];
        let mut ok = true;
        if id.text.is_empty() {
            self.error(Code::EmptyIdentifier, line, Some(id.column), "empty project_id");
            ok = false;
        }
        let cost = self.decimal(fields[1], line, "cost", true);
        let mut project = Project::new(id.text, cost.unwrap_or_default());
        ok &= cost.is_some();
        for (column, &field) in header.iter().zip(fields).skip(2) {
            let non_empty = (!field.text.is_empty()).then(|| field.text.to_string());
            match column.as_str() {
                "name" => project.name = non_empty,
                "category" => match self.list(field, line, "category") {
                    Some(items) => project.category = (!items.is_empty()).then_some(items),
                    None => ok = false,
                },
                "target" => match self.list(field, line, "target") {
                    Some(items) => project.target = (!items.is_empty()).then_some(items),
                    None => ok = false,
                },
                _ => {
                    project.extra.insert(column.clone(), field.text.to_string());
                }
            }
        }
        ok.then_some(project)
    }

    fn parse_votes(
        &mut self,
        body: &SectionBody<'_>,
        projects: Option<&[Project]>,
    ) -> Option<(Vec<VoteRecord>, Vec<String>)> {
        let (header, header_line) = self.parse_header(body, "VOTES")?;
        let mut header_ok = self.require_prefix(&header, header_line, &["voter_id"], "VOTES");
        if !header.iter().any(|h| h == "vote") {
            self.error(
                Code::HeaderMissingRequiredColumn,
                header_line,
                Some(1),
                "VOTES header must contain a `vote` column",
            );
            header_ok = false;
        }
        if !header_ok {
            return None;
        }

        let known: Option<HashSet<&str>> = projects.map(|ps| ps.iter().map(|p| p.project_id.as_str()).collect());
        let mut votes = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        for &line in &body.rows[1..] {
            let Some(fields) = self.row_fields(line, header.len()) else {
                continue;
            };
            let Some(record) = self.vote_row(&header, &fields, line.number, known.as_ref()) else {
                continue;
            };
            if let Some(first) = ids.get(&record.voter_id) {
                self.error(
                    Code::DuplicateVoterId,
                    line.number,
                    Some(fields[0].column),
                    format!("voter id `{}` already used on line {first}", record.voter_id),
                );
                continue;
            }
            ids.insert(record.voter_id.clone(), line.number);
            votes.push(record);
        }
        Some((votes, header))
    }

    fn vote_row(
        &mut self,
        header: &[String],
        fields: &[Field<'_>],
        line: usize,
        known: Option<&HashSet<&str>>,
    ) -> Option<VoteRecord> {
        let id = fields[0];
        let mut ok = true;
        if id.text.is_empty() {
            self.error(Code::EmptyIdentifier, line, Some(id.column), "empty voter_id");
            ok = false;
        }
        let mut record = VoteRecord::new(id.text, Vec::new());
        let mut vote_field = None;
        let mut points_field = None;
        for (column, &field) in header.iter().zip(fields).skip(1) {
            let non_empty = (!field.text.is_empty()).then(|| field.text.to_string());
            match column.as_str() {
                "age" => {
                    if !field.text.is_empty() {
                        match self.count::<u32>(field, line, "age") {
                            Some(age) => record.age = Some(age),
                            None => ok = false,
                        }
                    }
                }
                "sex" => record.sex = non_empty,
                "voting_method" => record.voting_method = non_empty,
                "vote" => match self.list(field, line, "vote") {
                    Some(items) => {
                        record.vote = items;
                        vote_field = Some(field);
                    }
                    None => ok = false,
                },
                "points" => {
                    if !field.text.is_empty() {
                        match self.list(field, line, "points") {
                            Some(items) => {
                                let mut points = Vec::with_capacity(items.len());
                                for item in &items {
                                    match parse_decimal(item) {
                                        Some(p) => points.push(p),
                                        None => {
                                            self.error(
                                                Code::MalformedNumber,
                                                line,
                                                Some(field.column),
                                                format!("points: `{item}` is not a decimal number"),
                                            );
                                            ok = false;
                                        }
                                    }
                                }
                                record.points = Some(points);
                                points_field = Some(field);
                            }
                            None => ok = false,
                        }
                    }
                }
                _ => {
                    record.extra.insert(column.clone(), field.text.to_string());
                }
            }
        }

        if let Some(field) = vote_field {
            let mut seen = HashSet::new();
            for project in &record.vote {
                if !seen.insert(project.as_str()) {
                    self.error(
                        Code::DuplicateVoteEntry,
                        line,
                        Some(field.column),
                        format!("project `{project}` listed more than once"),
                    );
                    ok = false;
                }
                if known.is_some_and(|k| !k.contains(project.as_str())) {
                    self.error(
                        Code::UnknownProjectReference,
                        line,
                        Some(field.column),
                        format!("vote references unknown project `{project}`"),
                    );
                    ok = false;
                }
            }
        }
        if let (Some(points), Some(field)) = (&record.points, points_field) {
            if ok && points.len() != record.vote.len() {
                self.error(
                    Code::PointsLengthMismatch,
                    line,
                    Some(field.column),
                    format!("{} points for {} voted projects", points.len(), record.vote.len()),
                );
                ok = false;
            }
        }
        ok.then_some(record)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals() {
        for good in ["0", "2500", "600.50", "-3", "-0.25", "007"] {
            assert!(parse_decimal(good).is_some(), "{good}");
        }
        for bad in [
            "", "+1", "1.", ".5", "1e3", "Infinity", "inf", "NaN", "1,5", " 1", "--1", "-",
        ] {
            assert!(parse_decimal(bad).is_none(), "{bad}");
        }
        // too many digits for an exact decimal
        assert!(parse_decimal("123456789012345678901234567890123").is_none());
    }

    #[test]
    fn fields_remember_columns() {
        let line = Line {
            number: 3,
            text: "1;  600 ; culture, education ",
        };
        let fields = split_fields(line);
        let got: Vec<_> = fields.iter().map(|f| (f.text, f.column)).collect();
        assert_eq!(got, vec![("1", 1), ("600", 5), ("culture, education", 11)]);
    }

    #[test]
    fn columns_count_characters_not_bytes() {
        let line = Line {
            number: 1,
            text: "żółw; x",
        };
        assert_eq!(split_fields(line)[1].column, 7);
    }

    #[test]
    fn invalid_utf8_is_positioned() {
        let result = parse_bytes(b"META\nkey; value\ndescription; \xff\xfe\n");
        assert!(result.instance.is_none());
        let d = &result.diagnostics[0];
        assert_eq!(d.code, Code::InvalidUtf8);
        assert_eq!(d.line, 3);
        assert_eq!(d.column, Some(14));
    }
}
