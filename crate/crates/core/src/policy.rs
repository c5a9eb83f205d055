//! Users, groups, tie strengths and group-based privacy policies.
//!
//! A [`PrivacyPolicy`] grants a set of the owner's groups access to an item
//! and lists individual exceptions. The action function [`act`] turns a
//! policy into a grant/deny decision for one target; [`action_vector`] does
//! so for a whole target list.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Default maximum tie strength: six levels, 0 (no relationship) to 5.
pub const DEFAULT_DELTA: u32 = 5;

/// Opaque user identifier. Compared case-sensitively.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UserId(String);

impl UserId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for UserId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

impl From<String> for UserId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

/// Grant or deny access for a single target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Deny,
    Grant,
}

impl Action {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Action::Grant
        } else {
            Action::Deny
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Action::Deny => 0,
            Action::Grant => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Action::Deny => Action::Grant,
            Action::Grant => Action::Deny,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub name: String,
    /// Members in declaration order.
    pub members: Vec<UserId>,
}

impl Group {
    pub fn new<I, U>(name: impl Into<String>, members: I) -> Self
    where
        I: IntoIterator<Item = U>,
        U: Into<UserId>,
    {
        Self {
            name: name.into(),
            members: members.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains(&self, user: &UserId) -> bool {
        self.members.iter().any(|m| m == user)
    }
}

/// All groups defined by one user, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSet {
    pub owner: UserId,
    pub groups: Vec<Group>,
}

impl GroupSet {
    pub fn new(owner: impl Into<UserId>, groups: Vec<Group>) -> Self {
        Self {
            owner: owner.into(),
            groups,
        }
    }

    pub fn get(&self, name: &str) -> Option<&Group> {
        self.groups.iter().find(|g| g.name == name)
    }

    /// First group (in declaration order) containing `user`.
    pub fn group_of(&self, user: &UserId) -> Option<&Group> {
        self.groups.iter().find(|g| g.contains(user))
    }

    pub fn contains_member(&self, user: &UserId) -> bool {
        self.group_of(user).is_some()
    }
}

/// Directed tie strengths on the scale `0..=delta`.
///
/// Values are stored as signed integers so that out-of-range input survives
/// parsing and is reported by validation instead of being clamped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieStrengthTable {
    delta: u32,
    entries: BTreeMap<(UserId, UserId), i64>,
}

impl Default for TieStrengthTable {
    fn default() -> Self {
        Self::new(DEFAULT_DELTA)
    }
}

impl TieStrengthTable {
    pub fn new(delta: u32) -> Self {
        Self {
            delta,
            entries: BTreeMap::new(),
        }
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn set(
        &mut self,
        from: impl Into<UserId>,
        to: impl Into<UserId>,
        value: i64,
    ) -> Option<i64> {
        self.entries.insert((from.into(), to.into()), value)
    }

    pub fn with(mut self, from: impl Into<UserId>, to: impl Into<UserId>, value: i64) -> Self {
        self.set(from, to, value);
        self
    }

    /// Stored value for the ordered pair, if any.
    pub fn raw(&self, from: &UserId, to: &UserId) -> Option<i64> {
        self.entries.get(&(from.clone(), to.clone())).copied()
    }

    /// Tie strength from `from` to `to`; missing pairs mean no relationship (0).
    /// Out-of-range values are clamped here; validation reports them.
    pub fn get(&self, from: &UserId, to: &UserId) -> u32 {
        self.raw(from, to)
            .map(|v| v.clamp(0, i64::from(self.delta)) as u32)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&UserId, &UserId, i64)> {
        self.entries.iter().map(|((a, b), v)| (a, b, *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A group-based privacy policy: granted group names plus individual exceptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivacyPolicy {
    pub owner: UserId,
    pub granted: Vec<String>,
    pub exceptions: Vec<UserId>,
}

impl PrivacyPolicy {
    pub fn new<G, S, E, U>(owner: impl Into<UserId>, granted: G, exceptions: E) -> Self
    where
        G: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = U>,
        U: Into<UserId>,
    {
        Self {
            owner: owner.into(),
            granted: granted.into_iter().map(Into::into).collect(),
            exceptions: exceptions.into_iter().map(Into::into).collect(),
        }
    }

    pub fn grants_group(&self, name: &str) -> bool {
        self.granted.iter().any(|g| g == name)
    }

    pub fn is_excepted(&self, user: &UserId) -> bool {
        self.exceptions.iter().any(|e| e == user)
    }
}

/// One co-owned item: who negotiates, who may see it, and everyone's policies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    /// Declared user universe. When non-empty, every referenced id must be in it.
    pub users: Vec<UserId>,
    pub negotiators: Vec<UserId>,
    pub uploader: UserId,
    pub targets: Vec<UserId>,
    pub group_sets: Vec<GroupSet>,
    pub policies: Vec<PrivacyPolicy>,
    pub ties: TieStrengthTable,
}

impl Scenario {
    pub fn delta(&self) -> u32 {
        self.ties.delta()
    }

    pub fn group_set(&self, owner: &UserId) -> Option<&GroupSet> {
        self.group_sets.iter().find(|gs| &gs.owner == owner)
    }

    pub fn policy(&self, owner: &UserId) -> Option<&PrivacyPolicy> {
        self.policies.iter().find(|p| &p.owner == owner)
    }

    pub fn is_negotiator(&self, user: &UserId) -> bool {
        self.negotiators.contains(user)
    }

    pub fn is_target(&self, user: &UserId) -> bool {
        self.targets.contains(user)
    }
}

/// Grant/deny decisions of one negotiator over the scenario's targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionVector {
    pub owner: UserId,
    /// Target order follows the scenario.
    pub actions: Vec<(UserId, Action)>,
}

impl ActionVector {
    pub fn get(&self, target: &UserId) -> Option<Action> {
        self.actions
            .iter()
            .find(|(t, _)| t == target)
            .map(|(_, a)| *a)
    }

    pub fn bits(&self) -> Vec<u8> {
        self.actions.iter().map(|(_, a)| a.bit()).collect()
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }
}

impl fmt::Display for ActionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (t, a)) in self.actions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}:{a}")?;
        }
        f.write_str(")")
    }
}

/// The action function.
///
/// The base decision grants iff `target` is in some granted group. An
/// exception flips the base decision whether or not the excepted user is a
/// member of any group.
pub fn act(policy: &PrivacyPolicy, groups: &GroupSet, target: &UserId) -> Action {
    debug_assert_eq!(policy.owner, groups.owner);
    let base = groups
        .groups
        .iter()
        .any(|g| policy.grants_group(&g.name) && g.contains(target));
    let decision = Action::from_bit(base);
    if policy.is_excepted(target) {
        decision.flipped()
    } else {
        decision
    }
}

pub fn action_vector(
    policy: &PrivacyPolicy,
    groups: &GroupSet,
    targets: &[UserId],
) -> ActionVector {
    ActionVector {
        owner: policy.owner.clone(),
        actions: targets
            .iter()
            .map(|t| (t.clone(), act(policy, groups, t)))
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Accept groups of one owner that share members. A target in several
    /// groups is granted if any of them is granted.
    pub allow_overlapping_groups: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("delta must be at least 1, got {0}")]
    InvalidDelta(u32),
    #[error("scenario has no negotiators")]
    NoNegotiators,
    #[error("negotiator {0} listed more than once")]
    DuplicateNegotiator(UserId),
    #[error("uploader {0} is not a negotiator")]
    UploaderNotNegotiator(UserId),
    #[error("target {0} listed more than once")]
    DuplicateTarget(UserId),
    #[error("empty user id in {0}")]
    EmptyUserId(&'static str),
    #[error("user {user} referenced in {context} is not declared in users")]
    UndeclaredUser { user: UserId, context: String },
    #[error("user {0} declared more than once")]
    DuplicateUser(UserId),
    #[error("negotiator {0} has no policy")]
    MissingPolicy(UserId),
    #[error("negotiator {0} has more than one policy")]
    DuplicatePolicy(UserId),
    #[error("policy owner {0} is not a negotiator")]
    PolicyOwnerNotNegotiator(UserId),
    #[error("negotiator {0} defines no groups")]
    EmptyGroupSet(UserId),
    #[error("group owner {0} is not a negotiator")]
    GroupOwnerNotNegotiator(UserId),
    #[error("group set of {0} appears more than once")]
    DuplicateGroupSet(UserId),
    #[error("group of {0} has an empty name")]
    EmptyGroupName(UserId),
    #[error("{owner} defines group {name} more than once")]
    DuplicateGroupName { owner: UserId, name: String },
    #[error("group {name} of {owner} has no members")]
    EmptyGroup { owner: UserId, name: String },
    #[error("group {name} of {owner} lists {member} more than once")]
    DuplicateMember {
        owner: UserId,
        name: String,
        member: UserId,
    },
    #[error("groups {first} and {second} of {owner} both contain {member}")]
    OverlappingGroups {
        owner: UserId,
        first: String,
        second: String,
        member: UserId,
    },
    #[error("policy of {owner} grants unknown group {group}")]
    UnknownGroup { owner: UserId, group: String },
    #[error("tie strength {from}->{to} = {value} outside 0..={delta}")]
    TieOutOfRange {
        from: UserId,
        to: UserId,
        value: i64,
        delta: u32,
    },
}

/// Conditions that are legal but worth surfacing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Warning {
    /// The exception flips the decision to grant even though the user is in
    /// none of the owner's groups.
    #[error("policy of {owner} excepts {user}, who is in none of the owner's groups")]
    ExceptionOutsideGroups { owner: UserId, user: UserId },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "error: {v}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

pub fn validate_scenario(s: &Scenario) -> ValidationReport {
    validate_scenario_with(s, ValidationOptions::default())
}

pub fn validate_scenario_with(s: &Scenario, opts: ValidationOptions) -> ValidationReport {
    let mut violations = Vec::new();
    let mut warnings = Vec::new();

    if s.delta() < 1 {
        violations.push(Violation::InvalidDelta(s.delta()));
    }

    let declared: HashSet<&UserId> = s.users.iter().collect();
    {
        let mut seen = HashSet::new();
        for u in &s.users {
            if !seen.insert(u) {
                violations.push(Violation::DuplicateUser(u.clone()));
            }
        }
    }
    let check_declared = |user: &UserId, context: &dyn Fn() -> String, out: &mut Vec<Violation>| {
        if !declared.is_empty() && !declared.contains(user) {
            out.push(Violation::UndeclaredUser {
                user: user.clone(),
                context: context(),
            });
        }
    };

    if s.negotiators.is_empty() {
        violations.push(Violation::NoNegotiators);
    }
    let mut seen = HashSet::new();
    for n in &s.negotiators {
        if n.as_str().is_empty() {
            violations.push(Violation::EmptyUserId("negotiators"));
        }
        if !seen.insert(n) {
            violations.push(Violation::DuplicateNegotiator(n.clone()));
        }
        check_declared(n, &|| "negotiators".into(), &mut violations);
    }
    if !s.is_negotiator(&s.uploader) {
        violations.push(Violation::UploaderNotNegotiator(s.uploader.clone()));
    }

    let mut seen = HashSet::new();
    for t in &s.targets {
        if t.as_str().is_empty() {
            violations.push(Violation::EmptyUserId("targets"));
        }
        if !seen.insert(t) {
            violations.push(Violation::DuplicateTarget(t.clone()));
        }
        check_declared(t, &|| "targets".into(), &mut violations);
    }

    let mut owners = HashSet::new();
    for gs in &s.group_sets {
        if !s.is_negotiator(&gs.owner) {
            violations.push(Violation::GroupOwnerNotNegotiator(gs.owner.clone()));
        }
        if !owners.insert(&gs.owner) {
            violations.push(Violation::DuplicateGroupSet(gs.owner.clone()));
        }
        let mut names = HashSet::new();
        for g in &gs.groups {
            if g.name.is_empty() {
                violations.push(Violation::EmptyGroupName(gs.owner.clone()));
            }
            if !names.insert(g.name.as_str()) {
                violations.push(Violation::DuplicateGroupName {
                    owner: gs.owner.clone(),
                    name: g.name.clone(),
                });
            }
            if g.members.is_empty() {
                violations.push(Violation::EmptyGroup {
                    owner: gs.owner.clone(),
                    name: g.name.clone(),
                });
            }
            let mut members = HashSet::new();
            for m in &g.members {
                if !members.insert(m) {
                    violations.push(Violation::DuplicateMember {
                        owner: gs.owner.clone(),
                        name: g.name.clone(),
                        member: m.clone(),
                    });
                }
                check_declared(
                    m,
                    &|| format!("group {} of {}", g.name, gs.owner),
                    &mut violations,
                );
            }
        }
        if !opts.allow_overlapping_groups {
            // first group (by declaration order) that claimed each member
            let mut claimed: BTreeMap<&UserId, &str> = BTreeMap::new();
            for g in &gs.groups {
                let unique: BTreeSet<&UserId> = g.members.iter().collect();
                for m in unique {
                    if let Some(first) = claimed.get(m) {
                        violations.push(Violation::OverlappingGroups {
                            owner: gs.owner.clone(),
                            first: (*first).to_owned(),
                            second: g.name.clone(),
                            member: m.clone(),
                        });
                    } else {
                        claimed.insert(m, &g.name);
                    }
                }
            }
        }
    }
    for n in &s.negotiators {
        match s.group_set(n) {
            Some(gs) if !gs.groups.is_empty() => {}
            _ => violations.push(Violation::EmptyGroupSet(n.clone())),
        }
    }

    let mut policy_owners = HashSet::new();
    for p in &s.policies {
        if !s.is_negotiator(&p.owner) {
            violations.push(Violation::PolicyOwnerNotNegotiator(p.owner.clone()));
        }
        if !policy_owners.insert(&p.owner) {
            violations.push(Violation::DuplicatePolicy(p.owner.clone()));
        }
        let gs = s.group_set(&p.owner);
        for name in &p.granted {
            if gs.and_then(|gs| gs.get(name)).is_none() {
                violations.push(Violation::UnknownGroup {
                    owner: p.owner.clone(),
                    group: name.clone(),
                });
            }
        }
        for e in &p.exceptions {
            check_declared(e, &|| format!("exceptions of {}", p.owner), &mut violations);
            if !gs.is_some_and(|gs| gs.contains_member(e)) {
                warnings.push(Warning::ExceptionOutsideGroups {
                    owner: p.owner.clone(),
                    user: e.clone(),
                });
            }
        }
    }
    for n in &s.negotiators {
        if !policy_owners.contains(n) {
            violations.push(Violation::MissingPolicy(n.clone()));
        }
    }

    let delta = s.delta();
    for (a, b, v) in s.ties.iter() {
        if v < 0 || v > i64::from(delta) {
            violations.push(Violation::TieOutOfRange {
                from: a.clone(),
                to: b.clone(),
                value: v,
                delta,
            });
        }
        check_declared(a, &|| "ties".into(), &mut violations);
        check_declared(b, &|| "ties".into(), &mut violations);
    }

    ValidationReport {
        violations,
        warnings,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn ids(names: &[&str]) -> Vec<UserId> {
        names.iter().map(|n| UserId::from(*n)).collect()
    }

    /// The two-negotiator photo scenario with the tie strengths used for the
    /// willingness walkthrough.
    pub(crate) fn example1() -> Scenario {
        Scenario {
            users: ids(&["Alice", "Bob", "Charlie", "Dan", "Eve", "Frank"]),
            negotiators: ids(&["Alice", "Bob"]),
            uploader: "Alice".into(),
            targets: ids(&["Charlie", "Dan", "Eve", "Frank"]),
            group_sets: vec![
                GroupSet::new(
                    "Alice",
                    vec![Group::new("MyFriends", ["Charlie", "Dan", "Eve"])],
                ),
                GroupSet::new(
                    "Bob",
                    vec![
                        Group::new("CloseFriends", ["Charlie", "Eve"]),
                        Group::new("Family", ["Dan", "Frank"]),
                    ],
                ),
            ],
            policies: vec![
                PrivacyPolicy::new("Alice", ["MyFriends"], ["Eve"]),
                PrivacyPolicy::new("Bob", ["CloseFriends", "Family"], Vec::<UserId>::new()),
            ],
            ties: TieStrengthTable::new(5)
                .with("Alice", "Charlie", 4)
                .with("Alice", "Dan", 2)
                .with("Alice", "Eve", 1)
                .with("Alice", "Frank", 0)
                .with("Bob", "Charlie", 3)
                .with("Bob", "Dan", 2)
                .with("Bob", "Eve", 5)
                .with("Bob", "Frank", 2),
        }
    }

    #[test]
    fn example1_is_valid() {
        let report = validate_scenario(&example1());
        assert!(report.is_valid(), "{report}");
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn unknown_granted_group_is_reported() {
        let mut s = example1();
        s.policies[0].granted.push("Work".into());
        let report = validate_scenario(&s);
        assert_eq!(
            report.violations,
            vec![Violation::UnknownGroup {
                owner: "Alice".into(),
                group: "Work".into()
            }]
        );
    }

    #[test]
    fn out_of_range_tie_is_reported() {
        let mut s = example1();
        s.ties.set("Alice", "Bob", 7);
        let report = validate_scenario(&s);
        assert_eq!(
            report.violations,
            vec![Violation::TieOutOfRange {
                from: "Alice".into(),
                to: "Bob".into(),
                value: 7,
                delta: 5
            }]
        );
        s.ties.set("Alice", "Bob", -1);
        assert_eq!(validate_scenario(&s).violations.len(), 1);
    }

    #[test]
    fn structural_violations() {
        let mut s = example1();
        s.uploader = "Charlie".into();
        s.targets.push("Dan".into());
        let v = validate_scenario(&s).violations;
        assert!(v.contains(&Violation::UploaderNotNegotiator("Charlie".into())));
        assert!(v.contains(&Violation::DuplicateTarget("Dan".into())));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn overlap_rejected_unless_allowed() {
        let mut s = example1();
        s.group_sets[1].groups[1].members.push("Eve".into());
        let v = validate_scenario(&s).violations;
        assert_eq!(
            v,
            vec![Violation::OverlappingGroups {
                owner: "Bob".into(),
                first: "CloseFriends".into(),
                second: "Family".into(),
                member: "Eve".into()
            }]
        );
        let relaxed = validate_scenario_with(
            &s,
            ValidationOptions {
                allow_overlapping_groups: true,
            },
        );
        assert!(relaxed.is_valid());
    }

    #[test]
    fn empty_groups_and_missing_policy() {
        let mut s = example1();
        s.group_sets[0].groups[0].members.clear();
        s.policies.pop();
        let v = validate_scenario(&s).violations;
        assert!(v.contains(&Violation::EmptyGroup {
            owner: "Alice".into(),
            name: "MyFriends".into()
        }));
        assert!(v.contains(&Violation::MissingPolicy("Bob".into())));

        let mut s = example1();
        s.group_sets[1].groups.clear();
        s.policies[1].granted.clear();
        assert_eq!(
            validate_scenario(&s).violations,
            vec![Violation::EmptyGroupSet("Bob".into())]
        );
    }

    #[test]
    fn undeclared_user_is_reported() {
        let mut s = example1();
        s.targets.push("Zed".into());
        assert_eq!(
            validate_scenario(&s).violations,
            vec![Violation::UndeclaredUser {
                user: "Zed".into(),
                context: "targets".into()
            }]
        );
    }

    #[test]
    fn exception_outside_groups_warns() {
        let mut s = example1();
        s.users.push("Zed".into());
        s.policies[0].exceptions.push("Zed".into());
        let report = validate_scenario(&s);
        assert!(report.is_valid());
        assert_eq!(
            report.warnings,
            vec![Warning::ExceptionOutsideGroups {
                owner: "Alice".into(),
                user: "Zed".into()
            }]
        );
    }

    #[test]
    fn act_examples() {
        let s = example1();
        let (p, gs) = (&s.policies[0], &s.group_sets[0]);
        assert_eq!(act(p, gs, &"Charlie".into()), Action::Grant);
        assert_eq!(act(p, gs, &"Eve".into()), Action::Deny);
        assert_eq!(act(p, gs, &"Frank".into()), Action::Deny);

        let nothing = PrivacyPolicy::new("Alice", Vec::<String>::new(), Vec::<UserId>::new());
        for t in &s.targets {
            assert_eq!(act(&nothing, gs, t), Action::Deny);
        }
        // an exception flips even for a user in none of the owner's groups
        let outsider = PrivacyPolicy::new("Alice", Vec::<String>::new(), ["Zed"]);
        assert_eq!(act(&outsider, gs, &"Zed".into()), Action::Grant);
    }

    #[test]
    fn action_vectors_of_example1() {
        let s = example1();
        let alice = action_vector(&s.policies[0], &s.group_sets[0], &s.targets);
        let bob = action_vector(&s.policies[1], &s.group_sets[1], &s.targets);
        assert_eq!(alice.bits(), vec![1, 1, 0, 0]);
        assert_eq!(bob.bits(), vec![1, 1, 1, 1]);
        assert_eq!(alice.get(&"Eve".into()), Some(Action::Deny));
        assert_eq!(alice.to_string(), "(Charlie:1, Dan:1, Eve:0, Frank:0)");
        assert!(action_vector(&s.policies[0], &s.group_sets[0], &[]).is_empty());
    }

    #[test]
    fn overlapping_groups_grant_if_any_granted() {
        let gs = GroupSet::new("A", vec![Group::new("X", ["t"]), Group::new("Y", ["t"])]);
        let p = PrivacyPolicy::new("A", ["Y"], Vec::<UserId>::new());
        assert_eq!(act(&p, &gs, &"t".into()), Action::Grant);
    }

    #[test]
    fn missing_tie_defaults_to_zero() {
        let t = TieStrengthTable::default();
        assert_eq!(t.delta(), DEFAULT_DELTA);
        assert_eq!(t.get(&"a".into(), &"b".into()), 0);
    }
}
