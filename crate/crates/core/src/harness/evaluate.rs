//! Match rates of each mechanism against recorded concession behaviour.
//!
//! A record matches a mechanism when the mechanism's resolved action for the
//! conflict target equals the action the focal user finally accepted (their
//! preferred action, flipped if they conceded). Records are stratified by the
//! concession rule the mediator fired for the focal user.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use crate::baseline::{majority_voting, uploader_overwrites, veto_voting, MechanismId, TieBreak};
use crate::policy::{Action, ActionVector, Scenario, UserId, ValidationOptions};
use crate::resolution::{mediate, Branch, Mediation, RuleTag};

use super::records::ConcessionRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stratum {
    All,
    Idm,
    Iu,
    Nc,
}

impl Stratum {
    pub const ALL: [Stratum; 4] = [Stratum::All, Stratum::Idm, Stratum::Iu, Stratum::Nc];

    pub fn of(rule: RuleTag) -> Stratum {
        match rule {
            RuleTag::Idm | RuleTag::Maj => Stratum::Idm,
            RuleTag::Iu => Stratum::Iu,
            RuleTag::Nc => Stratum::Nc,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Stratum::All => "ALL",
            Stratum::Idm => "IDM",
            Stratum::Iu => "IU",
            Stratum::Nc => "NC",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub matches: u64,
    pub total: u64,
}

impl Tally {
    /// `matches / total`, or `None` for an empty tally.
    pub fn rate(&self) -> Option<f64> {
        (self.total > 0).then(|| self.matches as f64 / self.total as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    UnknownScenario,
    InvalidScenario(String),
    NotNegotiator,
    NotConflict,
    PreferenceMismatch { recorded: Action, actual: Action },
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkipReason::UnknownScenario => f.write_str("unknown scenario"),
            SkipReason::InvalidScenario(msg) => write!(f, "invalid scenario: {msg}"),
            SkipReason::NotNegotiator => f.write_str("focal user is not a negotiator"),
            SkipReason::NotConflict => f.write_str("target is not in conflict"),
            SkipReason::PreferenceMismatch { recorded, actual } => {
                write!(
                    f,
                    "recorded preferred action {recorded} but the policy gives {actual}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedRecord {
    pub record: ConcessionRecord,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchReport {
    /// Indexed by mechanism then stratum.
    cells: [[Tally; 4]; 4],
    /// Evaluated records whose conflict went through the all-HIGH majority vote.
    pub majority_branch: u64,
    pub skipped: Vec<SkippedRecord>,
}

impl MatchReport {
    pub fn tally(&self, mechanism: MechanismId, stratum: Stratum) -> Tally {
        self.cells[mechanism as usize][stratum.index()]
    }

    pub fn rate(&self, mechanism: MechanismId, stratum: Stratum) -> Option<f64> {
        self.tally(mechanism, stratum).rate()
    }

    /// Evaluated records.
    pub fn total(&self) -> u64 {
        self.tally(MechanismId::Ar, Stratum::All).total
    }

    /// How many evaluated records each rule was fired for.
    pub fn instantiations(&self, stratum: Stratum) -> u64 {
        self.tally(MechanismId::Ar, stratum).total
    }

    fn add(&mut self, mechanism: MechanismId, stratum: Stratum, matched: bool) {
        for s in [Stratum::All, stratum] {
            let cell = &mut self.cells[mechanism as usize][s.index()];
            cell.total += 1;
            cell.matches += u64::from(matched);
        }
    }

    /// Combines partial reports. Counts add; skipped records concatenate.
    pub fn merge(&mut self, other: MatchReport) {
        for (row, other_row) in self.cells.iter_mut().zip(other.cells) {
            for (cell, o) in row.iter_mut().zip(other_row) {
                cell.matches += o.matches;
                cell.total += o.total;
            }
        }
        self.majority_branch += other.majority_branch;
        self.skipped.extend(other.skipped);
    }

    /// `mechanism,stratum,matches,total,rate` with 4-decimal rates. An empty
    /// stratum has rate 0.0000.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("mechanism,stratum,matches,total,rate\n");
        for m in MechanismId::ALL {
            for s in Stratum::ALL {
                let t = self.tally(m, s);
                let _ = writeln!(
                    out,
                    "{m},{s},{},{},{:.4}",
                    t.matches,
                    t.total,
                    t.rate().unwrap_or(0.0)
                );
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalOptions {
    pub tie_break: TieBreak,
    pub validation: ValidationOptions,
}

struct Evaluated {
    mediation: Mediation,
    vectors: [ActionVector; 4],
}

fn evaluate_scenario(s: &Scenario, opts: EvalOptions) -> Result<Evaluated, String> {
    let mediation = mediate(s, opts.validation).map_err(|e| e.to_string())?;
    let cs = &mediation.conflicts;
    let vectors = [
        mediation.outcome.actions.clone(),
        uploader_overwrites(s, cs),
        majority_voting(s, cs, opts.tie_break),
        veto_voting(s, cs),
    ];
    Ok(Evaluated { mediation, vectors })
}

/// Scores every mechanism on every record. Records that reference a missing
/// scenario, a non-negotiator, a non-conflicting target, or contradict the
/// scenario's policies are skipped and listed in the report.
pub fn evaluate(
    scenarios: &BTreeMap<String, Scenario>,
    records: &[ConcessionRecord],
    opts: EvalOptions,
) -> MatchReport {
    let mut cache: HashMap<&str, Result<Evaluated, String>> = HashMap::new();
    let mut report = MatchReport::default();
    for record in records {
        let Some(s) = scenarios.get(&record.scenario_id) else {
            report.skipped.push(SkippedRecord {
                record: record.clone(),
                reason: SkipReason::UnknownScenario,
            });
            continue;
        };
        let entry = cache
            .entry(record.scenario_id.as_str())
            .or_insert_with(|| evaluate_scenario(s, opts));
        match score(record, entry) {
            Ok(partial) => report.merge(partial),
            Err(reason) => report.skipped.push(SkippedRecord {
                record: record.clone(),
                reason,
            }),
        }
    }
    report
}

fn score(
    record: &ConcessionRecord,
    evaluated: &Result<Evaluated, String>,
) -> Result<MatchReport, SkipReason> {
    let ev = evaluated
        .as_ref()
        .map_err(|e| SkipReason::InvalidScenario(e.clone()))?;
    let focal: &UserId = &record.focal_user;
    let conflicts = &ev.mediation.conflicts;
    if conflicts.vector(focal).is_none() {
        return Err(SkipReason::NotNegotiator);
    }
    let resolution = ev
        .mediation
        .outcome
        .conflict(&record.conflict_target)
        .ok_or(SkipReason::NotConflict)?;
    let actual = conflicts
        .preference(focal, &record.conflict_target)
        .ok_or(SkipReason::NotConflict)?;
    if actual != record.preferred_action {
        return Err(SkipReason::PreferenceMismatch {
            recorded: record.preferred_action,
            actual,
        });
    }
    let decision = resolution
        .decision(focal)
        .ok_or(SkipReason::NotNegotiator)?;

    let truth = record.accepted_action();
    let stratum = Stratum::of(decision.rule);
    let mut partial = MatchReport::default();
    for (m, v) in MechanismId::ALL.into_iter().zip(&ev.vectors) {
        let resolved = v
            .get(&record.conflict_target)
            .expect("mechanisms cover every target");
        partial.add(m, stratum, resolved == truth);
    }
    if resolution.branch == Branch::Majority {
        partial.majority_branch = 1;
    }
    Ok(partial)
}
