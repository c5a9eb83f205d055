//! Concession rules and the resolution of detected conflicts.
//!
//! For every conflicting target the mediator looks at each negotiator's
//! willingness class:
//!
//! - everyone HIGH: any outcome is acceptable, so a majority vote decides, the
//!   uploader breaking exact ties;
//! - two LOW negotiators disagree: deny;
//! - otherwise the LOW negotiators, who all share one preferred action, decide.
//!
//! Each negotiator is tagged with the rule that describes their behaviour:
//! IDM (high willingness, concedes), IU (low-willingness grantor yielding to a
//! low-willingness denier) or NC (holds firm).

use std::fmt;

use crate::conflict::{detect_conflicts_with, ConflictSet, InvalidScenario};
use crate::policy::{Action, ActionVector, Scenario, UserId, ValidationOptions};
use crate::willingness::{
    WillingnessClass, WillingnessError, WillingnessEstimator, WillingnessTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleTag {
    /// "I do not mind": high willingness, concedes.
    Idm,
    /// "I understand": low willingness grantor concedes to a low willingness denier.
    Iu,
    /// "No concession".
    Nc,
    /// All negotiators high; the modified majority vote decided.
    Maj,
}

impl RuleTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleTag::Idm => "IDM",
            RuleTag::Iu => "IU",
            RuleTag::Nc => "NC",
            RuleTag::Maj => "MAJ",
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Every negotiator HIGH.
    Majority,
    /// At least one negotiator LOW.
    LowWillingness,
}

impl Branch {
    pub fn tag(self) -> Option<RuleTag> {
        match self {
            Branch::Majority => Some(RuleTag::Maj),
            Branch::LowWillingness => None,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Majority => "MAJ",
            Branch::LowWillingness => "LOW",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NegotiatorDecision {
    pub negotiator: UserId,
    pub preferred: Action,
    pub willingness: f64,
    pub class: WillingnessClass,
    pub rule: RuleTag,
    /// The rule says this negotiator concedes.
    pub conceded: bool,
    /// The resolved action differs from the preferred one.
    pub changed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConflictResolution {
    pub target: UserId,
    pub branch: Branch,
    pub action: Action,
    /// One entry per negotiator, in negotiator order.
    pub decisions: Vec<NegotiatorDecision>,
}

impl ConflictResolution {
    pub fn decision(&self, negotiator: &UserId) -> Option<&NegotiatorDecision> {
        self.decisions.iter().find(|d| &d.negotiator == negotiator)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionOutcome {
    /// Final decisions over all targets.
    pub actions: ActionVector,
    /// Trace for each conflicting target, in target order.
    pub conflicts: Vec<ConflictResolution>,
}

impl ResolutionOutcome {
    pub fn conflict(&self, target: &UserId) -> Option<&ConflictResolution> {
        self.conflicts.iter().find(|c| &c.target == target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolveError {
    #[error("no willingness report for {negotiator} on {target}")]
    MissingReport { negotiator: UserId, target: UserId },
    #[error("no preferred action for {negotiator} on {target}")]
    MissingPreference { negotiator: UserId, target: UserId },
    #[error("target {0} is listed as a conflict but is not a scenario target")]
    UnknownConflict(UserId),
}

/// Counts grant and deny votes.
pub fn tally(preferences: impl IntoIterator<Item = Action>) -> (usize, usize) {
    preferences.into_iter().fold((0, 0), |(g, d), a| match a {
        Action::Grant => (g + 1, d),
        Action::Deny => (g, d + 1),
    })
}

/// Strict-majority action among the preferences for `target`; an exact tie
/// goes to the uploader's preference.
pub fn modified_majority(vectors: &ConflictSet, uploader: &UserId, target: &UserId) -> Action {
    let (grants, denies) = tally(vectors.preferences(target).map(|(_, a)| a));
    if grants != denies {
        return Action::from_bit(grants > denies);
    }
    vectors.preference(uploader, target).unwrap_or(Action::Deny)
}

/// Concession rule for `negotiator` on `target`, and whether it concedes.
pub fn classify_rule(
    negotiator: &UserId,
    target: &UserId,
    reports: &WillingnessTable,
    vectors: &ConflictSet,
) -> Result<(RuleTag, bool), ResolveError> {
    let report = reports
        .get(negotiator, target)
        .ok_or_else(|| ResolveError::MissingReport {
            negotiator: negotiator.clone(),
            target: target.clone(),
        })?;
    if report.class == WillingnessClass::High {
        return Ok((RuleTag::Idm, true));
    }
    let preferred = preference(vectors, negotiator, target)?;
    if preferred == Action::Grant && has_low_denier(target, reports, vectors) {
        Ok((RuleTag::Iu, true))
    } else {
        Ok((RuleTag::Nc, false))
    }
}

fn preference(
    vectors: &ConflictSet,
    negotiator: &UserId,
    target: &UserId,
) -> Result<Action, ResolveError> {
    vectors
        .preference(negotiator, target)
        .ok_or_else(|| ResolveError::MissingPreference {
            negotiator: negotiator.clone(),
            target: target.clone(),
        })
}

fn has_low_denier(target: &UserId, reports: &WillingnessTable, vectors: &ConflictSet) -> bool {
    reports.for_target(target).any(|r| {
        r.class == WillingnessClass::Low
            && vectors.preference(&r.negotiator, target) == Some(Action::Deny)
    })
}

/// Resolves every conflict in `conflicts` and passes unanimous targets through.
pub fn resolve(
    s: &Scenario,
    conflicts: &ConflictSet,
    reports: &WillingnessTable,
) -> Result<ResolutionOutcome, ResolveError> {
    let mut traces = Vec::with_capacity(conflicts.conflicts.len());
    for c in &conflicts.conflicts {
        if !s.is_target(c) {
            return Err(ResolveError::UnknownConflict(c.clone()));
        }
        traces.push(resolve_one(s, c, conflicts, reports)?);
    }

    let mut actions = Vec::with_capacity(s.targets.len());
    for t in &s.targets {
        let action = match traces.iter().find(|r| &r.target == t) {
            Some(r) => r.action,
            None => {
                let first =
                    s.negotiators
                        .first()
                        .ok_or_else(|| ResolveError::MissingPreference {
                            negotiator: s.uploader.clone(),
                            target: t.clone(),
                        })?;
                preference(conflicts, first, t)?
            }
        };
        actions.push((t.clone(), action));
    }

    Ok(ResolutionOutcome {
        actions: ActionVector {
            owner: s.uploader.clone(),
            actions,
        },
        conflicts: traces,
    })
}

fn resolve_one(
    s: &Scenario,
    target: &UserId,
    vectors: &ConflictSet,
    reports: &WillingnessTable,
) -> Result<ConflictResolution, ResolveError> {
    struct Row<'a> {
        negotiator: &'a UserId,
        preferred: Action,
        willingness: f64,
        class: WillingnessClass,
    }
    let mut rows = Vec::with_capacity(s.negotiators.len());
    for n in &s.negotiators {
        let report = reports
            .get(n, target)
            .ok_or_else(|| ResolveError::MissingReport {
                negotiator: n.clone(),
                target: target.clone(),
            })?;
        rows.push(Row {
            negotiator: n,
            preferred: preference(vectors, n, target)?,
            willingness: report.willingness,
            class: report.class,
        });
    }

    let lows: Vec<Action> = rows
        .iter()
        .filter(|r| r.class == WillingnessClass::Low)
        .map(|r| r.preferred)
        .collect();
    let (branch, action) = match lows.split_first() {
        None => (
            Branch::Majority,
            modified_majority(vectors, &s.uploader, target),
        ),
        Some((first, rest)) => {
            if rest.iter().any(|a| a != first) {
                (Branch::LowWillingness, Action::Deny)
            } else {
                (Branch::LowWillingness, *first)
            }
        }
    };

    let low_denier = lows.contains(&Action::Deny);
    let decisions = rows
        .into_iter()
        .map(|r| {
            let (rule, conceded) = match r.class {
                WillingnessClass::High => (RuleTag::Idm, true),
                WillingnessClass::Low if r.preferred == Action::Grant && low_denier => {
                    (RuleTag::Iu, true)
                }
                WillingnessClass::Low => (RuleTag::Nc, false),
            };
            let changed = r.preferred != action;
            assert!(
                !changed || conceded,
                "negotiator {} holds firm but the outcome overrides them",
                r.negotiator
            );
            NegotiatorDecision {
                negotiator: r.negotiator.clone(),
                preferred: r.preferred,
                willingness: r.willingness,
                class: r.class,
                rule,
                conceded,
                changed,
            }
        })
        .collect();

    Ok(ConflictResolution {
        target: target.clone(),
        branch,
        action,
        decisions,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum MediationError {
    #[error(transparent)]
    Invalid(#[from] InvalidScenario),
    #[error(transparent)]
    Willingness(#[from] WillingnessError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

/// Everything the mediator computes for one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Mediation {
    pub conflicts: ConflictSet,
    pub willingness: WillingnessTable,
    pub outcome: ResolutionOutcome,
}

/// Validate, detect, estimate willingness and resolve.
pub fn mediate(s: &Scenario, opts: ValidationOptions) -> Result<Mediation, MediationError> {
    let conflicts = detect_conflicts_with(s, opts)?;
    let willingness = WillingnessEstimator::new(s)?.reports_for(&conflicts)?;
    let outcome = resolve(s, &conflicts, &willingness)?;
    Ok(Mediation {
        conflicts,
        willingness,
        outcome,
    })
}
