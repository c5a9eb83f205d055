//! Scenario files.
//!
//! A scenario is stored as a TOML document:
//!
//! ```toml
//! users = ["Alice", "Bob", "Charlie"]
//! delta = 5
//! uploader = "Alice"
//! negotiators = ["Alice", "Bob"]
//! targets = ["Charlie"]
//!
//! [[ties]]
//! from = "Alice"
//! to = "Charlie"
//! strength = 4
//!
//! [[groups]]
//! owner = "Alice"
//! name = "MyFriends"
//! members = ["Charlie"]
//!
//! [[policies]]
//! owner = "Alice"
//! granted = ["MyFriends"]
//! exceptions = []
//! ```
//!
//! Group declaration order is significant. Unknown keys are rejected.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::policy::{
    validate_scenario_with, Group, GroupSet, PrivacyPolicy, Scenario, TieStrengthTable, UserId,
    ValidationOptions, ValidationReport,
};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    users: Vec<UserId>,
    delta: u32,
    uploader: UserId,
    negotiators: Vec<UserId>,
    targets: Vec<UserId>,
    #[serde(default)]
    ties: Vec<TieEntry>,
    #[serde(default)]
    groups: Vec<GroupEntry>,
    #[serde(default)]
    policies: Vec<PolicyEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TieEntry {
    from: UserId,
    to: UserId,
    strength: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupEntry {
    owner: UserId,
    name: String,
    members: Vec<UserId>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolicyEntry {
    owner: UserId,
    granted: Vec<String>,
    #[serde(default)]
    exceptions: Vec<UserId>,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Schema(String),
    #[error("tie {from}->{to} given more than once")]
    DuplicateTie { from: UserId, to: UserId },
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format {
        path: PathBuf,
        #[source]
        source: FormatError,
    },
    #[error("{path}: invalid scenario\n{report}")]
    Invalid {
        path: PathBuf,
        report: ValidationReport,
    },
}

/// Parses a scenario document without validating it.
pub fn parse_scenario(text: &str) -> Result<Scenario, FormatError> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| match e.span() {
        Some(span) => FormatError::Syntax {
            line: text[..span.start.min(text.len())].matches('\n').count() + 1,
            message: e.message().trim_end().to_owned(),
        },
        None => FormatError::Schema(e.message().trim_end().to_owned()),
    })?;

    let mut ties = TieStrengthTable::new(file.delta);
    for t in file.ties {
        if ties.raw(&t.from, &t.to).is_some() {
            return Err(FormatError::DuplicateTie {
                from: t.from,
                to: t.to,
            });
        }
        ties.set(t.from, t.to, t.strength);
    }

    let mut group_sets: Vec<GroupSet> = Vec::new();
    for g in file.groups {
        let group = Group {
            name: g.name,
            members: g.members,
        };
        match group_sets.iter_mut().find(|gs| gs.owner == g.owner) {
            Some(gs) => gs.groups.push(group),
            None => group_sets.push(GroupSet::new(g.owner, vec![group])),
        }
    }

    Ok(Scenario {
        users: file.users,
        negotiators: file.negotiators,
        uploader: file.uploader,
        targets: file.targets,
        group_sets,
        policies: file
            .policies
            .into_iter()
            .map(|p| PrivacyPolicy {
                owner: p.owner,
                granted: p.granted,
                exceptions: p.exceptions,
            })
            .collect(),
        ties,
    })
}

/// Canonical text form. Ties are written in sorted pair order; groups and
/// policies keep their stored order.
pub fn scenario_to_string(s: &Scenario) -> String {
    let file = ScenarioFile {
        users: s.users.clone(),
        delta: s.delta(),
        uploader: s.uploader.clone(),
        negotiators: s.negotiators.clone(),
        targets: s.targets.clone(),
        ties: s
            .ties
            .iter()
            .map(|(from, to, strength)| TieEntry {
                from: from.clone(),
                to: to.clone(),
                strength,
            })
            .collect(),
        groups: s
            .group_sets
            .iter()
            .flat_map(|gs| {
                gs.groups.iter().map(|g| GroupEntry {
                    owner: gs.owner.clone(),
                    name: g.name.clone(),
                    members: g.members.clone(),
                })
            })
            .collect(),
        policies: s
            .policies
            .iter()
            .map(|p| PolicyEntry {
                owner: p.owner.clone(),
                granted: p.granted.clone(),
                exceptions: p.exceptions.clone(),
            })
            .collect(),
    };
    toml::to_string(&file).expect("scenario serializes")
}

/// Reads, parses and validates a scenario file.
pub fn load_scenario(
    path: impl AsRef<Path>,
    opts: ValidationOptions,
) -> Result<Scenario, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })?;
    let scenario = parse_scenario(&text).map_err(|source| LoadError::Format {
        path: path.to_owned(),
        source,
    })?;
    let report = validate_scenario_with(&scenario, opts);
    if !report.is_valid() {
        return Err(LoadError::Invalid {
            path: path.to_owned(),
            report,
        });
    }
    Ok(scenario)
}

pub fn save_scenario(path: impl AsRef<Path>, s: &Scenario) -> std::io::Result<()> {
    fs::write(path, scenario_to_string(s))
}
