//! Conflict detection over the negotiators' action vectors.

use crate::policy::{
    action_vector, validate_scenario_with, Action, ActionVector, Scenario, UserId,
    ValidationOptions, ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictSet {
    /// Conflicting targets, in scenario target order.
    pub conflicts: Vec<UserId>,
    /// One vector per negotiator, in negotiator order.
    pub vectors: Vec<ActionVector>,
}

impl ConflictSet {
    pub fn is_empty(&self) -> bool {
        self.conflicts.is_empty()
    }

    pub fn contains(&self, target: &UserId) -> bool {
        self.conflicts.contains(target)
    }

    pub fn vector(&self, negotiator: &UserId) -> Option<&ActionVector> {
        self.vectors.iter().find(|v| &v.owner == negotiator)
    }

    /// Preferred action of `negotiator` for `target`.
    pub fn preference(&self, negotiator: &UserId, target: &UserId) -> Option<Action> {
        self.vector(negotiator)?.get(target)
    }

    /// All negotiators' preferred actions for `target`, in negotiator order.
    pub fn preferences<'a>(
        &'a self,
        target: &'a UserId,
    ) -> impl Iterator<Item = (&'a UserId, Action)> + 'a {
        self.vectors
            .iter()
            .filter_map(move |v| v.get(target).map(|a| (&v.owner, a)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scenario:\n{0}")]
pub struct InvalidScenario(pub ValidationReport);

/// Computes every negotiator's action vector and the targets they disagree on.
pub fn detect_conflicts(s: &Scenario) -> Result<ConflictSet, InvalidScenario> {
    detect_conflicts_with(s, ValidationOptions::default())
}

pub fn detect_conflicts_with(
    s: &Scenario,
    opts: ValidationOptions,
) -> Result<ConflictSet, InvalidScenario> {
    let report = validate_scenario_with(s, opts);
    if !report.is_valid() {
        return Err(InvalidScenario(report));
    }
    Ok(detect_unchecked(s))
}

/// Detection without the validation pass. The scenario must already be valid.
pub fn detect_unchecked(s: &Scenario) -> ConflictSet {
    let vectors: Vec<ActionVector> = s
        .negotiators
        .iter()
        .map(|n| {
            let policy = s.policy(n).expect("validated: negotiator has a policy");
            let groups = s.group_set(n).expect("validated: negotiator has groups");
            action_vector(policy, groups, &s.targets)
        })
        .collect();

    // Equality is transitive, so some pair disagrees iff some vector
    // disagrees with the first.
    let conflicts = match vectors.split_first() {
        None => Vec::new(),
        Some((first, rest)) => first
            .actions
            .iter()
            .enumerate()
            .filter(|(i, (_, a))| rest.iter().any(|v| v.actions[*i].1 != *a))
            .map(|(_, (t, _))| t.clone())
            .collect(),
    };
    ConflictSet { conflicts, vectors }
}

pub fn is_unanimous(s: &Scenario) -> Result<bool, InvalidScenario> {
    Ok(detect_conflicts(s)?.is_empty())
}
