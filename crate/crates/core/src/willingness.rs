//! Willingness to concede on a conflicting target.
//!
//! Three quantities, all in tie-strength units on `0..=delta`:
//!
//! - *group strictness*: the lowest tie strength a granted member of the group
//!   has, or `delta` when nobody in the group is granted;
//! - *sensitivity*: the mean strictness over all of the negotiator's groups;
//! - *relative importance*: the gap between the target's tie strength and the
//!   strictness of the target's group (or the sensitivity, when the target is
//!   in none of the negotiator's groups).
//!
//! Willingness combines importance and sensitivity as half the 2-d Canberra
//! distance from each to `delta`, which keeps it in `[0, 1]` for any scale.

use std::collections::HashMap;
use std::fmt;

use crate::conflict::ConflictSet;
use crate::policy::{
    act, Action, Group, GroupSet, PrivacyPolicy, Scenario, TieStrengthTable, UserId,
};

/// Willingness strictly above this value is HIGH; the threshold itself is LOW.
pub const HIGH_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WillingnessClass {
    Low,
    High,
}

impl WillingnessClass {
    pub fn of(willingness: f64) -> Self {
        if willingness > HIGH_THRESHOLD {
            WillingnessClass::High
        } else {
            WillingnessClass::Low
        }
    }
}

impl fmt::Display for WillingnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WillingnessClass::Low => "LOW",
            WillingnessClass::High => "HIGH",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WillingnessReport {
    pub negotiator: UserId,
    pub target: UserId,
    pub sensitivity: f64,
    pub importance: f64,
    pub willingness: f64,
    pub class: WillingnessClass,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WillingnessError {
    #[error("group {group} of {owner} has no members")]
    EmptyGroup { owner: UserId, group: String },
    #[error("{0} defines no groups")]
    NoGroups(UserId),
    #[error("{0} is not a negotiator")]
    UnknownNegotiator(UserId),
}

fn strictness_term(
    groups: &GroupSet,
    policy: &PrivacyPolicy,
    ties: &TieStrengthTable,
    member: &UserId,
) -> u32 {
    match act(policy, groups, member) {
        Action::Grant => ties.get(&groups.owner, member),
        Action::Deny => ties.delta(),
    }
}

/// Minimum tie strength a member of `group` needs to be granted access.
pub fn group_strictness(
    groups: &GroupSet,
    group: &Group,
    policy: &PrivacyPolicy,
    ties: &TieStrengthTable,
) -> Result<f64, WillingnessError> {
    group
        .members
        .iter()
        .map(|m| strictness_term(groups, policy, ties, m))
        .min()
        .map(f64::from)
        .ok_or_else(|| WillingnessError::EmptyGroup {
            owner: groups.owner.clone(),
            group: group.name.clone(),
        })
}

/// Mean group strictness over all of the owner's groups.
pub fn sensitivity(
    groups: &GroupSet,
    policy: &PrivacyPolicy,
    ties: &TieStrengthTable,
) -> Result<f64, WillingnessError> {
    if groups.groups.is_empty() {
        return Err(WillingnessError::NoGroups(groups.owner.clone()));
    }
    let mut total = 0.0;
    for g in &groups.groups {
        total += group_strictness(groups, g, policy, ties)?;
    }
    Ok(total / groups.groups.len() as f64)
}

/// Relative importance of `target` given a precomputed sensitivity.
pub fn relative_importance_with(
    groups: &GroupSet,
    policy: &PrivacyPolicy,
    ties: &TieStrengthTable,
    sensitivity: f64,
    target: &UserId,
) -> Result<f64, WillingnessError> {
    let tie = f64::from(ties.get(&groups.owner, target));
    let reference = match groups.group_of(target) {
        Some(g) => group_strictness(groups, g, policy, ties)?,
        None => sensitivity,
    };
    Ok((reference - tie).abs())
}

pub fn relative_importance(
    groups: &GroupSet,
    policy: &PrivacyPolicy,
    ties: &TieStrengthTable,
    target: &UserId,
) -> Result<f64, WillingnessError> {
    let s = sensitivity(groups, policy, ties)?;
    relative_importance_with(groups, policy, ties, s, target)
}

/// Half the Canberra distance between `(importance, sensitivity)` and
/// `(delta, delta)`.
pub fn willingness_value(importance: f64, sensitivity: f64, delta: f64) -> f64 {
    let term = |x: f64| {
        let denom = delta + x;
        if denom == 0.0 {
            0.0
        } else {
            (delta - x).abs() / denom
        }
    };
    0.5 * (term(importance) + term(sensitivity))
}

/// Willingness of `negotiator` to change their preferred action for `target`.
pub fn willingness(
    negotiator: &UserId,
    target: &UserId,
    s: &Scenario,
) -> Result<WillingnessReport, WillingnessError> {
    let (groups, policy) = negotiator_inputs(s, negotiator)?;
    let sens = sensitivity(groups, policy, &s.ties)?;
    report_with(groups, policy, &s.ties, sens, target)
}

fn negotiator_inputs<'a>(
    s: &'a Scenario,
    negotiator: &UserId,
) -> Result<(&'a GroupSet, &'a PrivacyPolicy), WillingnessError> {
    let unknown = || WillingnessError::UnknownNegotiator(negotiator.clone());
    let groups = s.group_set(negotiator).ok_or_else(unknown)?;
    let policy = s.policy(negotiator).ok_or_else(unknown)?;
    Ok((groups, policy))
}

fn report_with(
    groups: &GroupSet,
    policy: &PrivacyPolicy,
    ties: &TieStrengthTable,
    sensitivity: f64,
    target: &UserId,
) -> Result<WillingnessReport, WillingnessError> {
    let importance = relative_importance_with(groups, policy, ties, sensitivity, target)?;
    let w = willingness_value(importance, sensitivity, f64::from(ties.delta()));
    Ok(WillingnessReport {
        negotiator: groups.owner.clone(),
        target: target.clone(),
        sensitivity,
        importance,
        willingness: w,
        class: WillingnessClass::of(w),
    })
}

/// Per-negotiator sensitivities, computed once per scenario and then shared
/// read-only across conflicts.
#[derive(Debug, Clone)]
pub struct WillingnessEstimator<'a> {
    scenario: &'a Scenario,
    sensitivities: HashMap<UserId, f64>,
}

impl<'a> WillingnessEstimator<'a> {
    pub fn new(scenario: &'a Scenario) -> Result<Self, WillingnessError> {
        let mut sensitivities = HashMap::with_capacity(scenario.negotiators.len());
        for n in &scenario.negotiators {
            let (groups, policy) = negotiator_inputs(scenario, n)?;
            sensitivities.insert(n.clone(), sensitivity(groups, policy, &scenario.ties)?);
        }
        Ok(Self {
            scenario,
            sensitivities,
        })
    }

    pub fn sensitivity(&self, negotiator: &UserId) -> Option<f64> {
        self.sensitivities.get(negotiator).copied()
    }

    pub fn report(
        &self,
        negotiator: &UserId,
        target: &UserId,
    ) -> Result<WillingnessReport, WillingnessError> {
        let (groups, policy) = negotiator_inputs(self.scenario, negotiator)?;
        let sens = self
            .sensitivity(negotiator)
            .ok_or_else(|| WillingnessError::UnknownNegotiator(negotiator.clone()))?;
        report_with(groups, policy, &self.scenario.ties, sens, target)
    }

    /// Reports for every (conflict, negotiator) pair, conflict-major.
    pub fn reports_for(
        &self,
        conflicts: &ConflictSet,
    ) -> Result<WillingnessTable, WillingnessError> {
        let mut reports =
            Vec::with_capacity(conflicts.conflicts.len() * self.scenario.negotiators.len());
        for c in &conflicts.conflicts {
            for n in &self.scenario.negotiators {
                reports.push(self.report(n, c)?);
            }
        }
        Ok(WillingnessTable { reports })
    }
}

/// Willingness reports for a scenario's conflicts.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WillingnessTable {
    pub reports: Vec<WillingnessReport>,
}

impl WillingnessTable {
    pub fn get(&self, negotiator: &UserId, target: &UserId) -> Option<&WillingnessReport> {
        self.reports
            .iter()
            .find(|r| &r.negotiator == negotiator && &r.target == target)
    }

    pub fn for_target<'a>(
        &'a self,
        target: &'a UserId,
    ) -> impl Iterator<Item = &'a WillingnessReport> + 'a {
        self.reports.iter().filter(move |r| &r.target == target)
    }
}
