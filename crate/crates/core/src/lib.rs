//! Tools for participatory-budgeting instances stored as `.pb` files.
//!
//! - [`parser`] reads `.pb` text into a [`PbInstance`] with positioned
//!   diagnostics and writes the canonical form back out.
//! - [`validator`] checks an instance against the constraints its META
//!   section declares or defaults.
//! - [`rules`] computes per-project scores for all four ballot types and runs
//!   the greedy allocation rule.
//! - [`cli`] is the command-line front end and a seeded instance generator.

pub mod cli;
pub mod model;
pub mod parser;
pub mod rules;
pub mod validator;

pub use model::{Bound, MetaSection, PbInstance, Project, Setting, VoteRecord, VoteType};
pub use parser::{parse, parse_bytes, serialize_canonical, Diagnostic, ParseResult};
