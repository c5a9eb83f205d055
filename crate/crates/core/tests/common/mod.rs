#![allow(dead_code)]

use std::path::PathBuf;

use privmed::{act, Action, Group, GroupSet, PrivacyPolicy, Scenario, TieStrengthTable, UserId};
use rand::seq::IndexedRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub struct Shape {
    pub negotiators: std::ops::RangeInclusive<u32>,
    pub targets: std::ops::RangeInclusive<u32>,
    pub delta: u32,
}

impl Default for Shape {
    fn default() -> Self {
        Self {
            negotiators: 1..=6,
            targets: 0..=6,
            delta: 5,
        }
    }
}

/// A random valid scenario, conflicting or not. Negotiators are sometimes
/// also targets, some tie strengths are left out, and exceptions may name
/// users outside every group.
pub fn random_scenario(rng: &mut impl Rng, shape: &Shape) -> Scenario {
    let k = rng.random_range(shape.negotiators.clone());
    let m = rng.random_range(shape.targets.clone());
    let negotiators: Vec<UserId> = (1..=k).map(|i| format!("a{i}").into()).collect();
    let mut targets: Vec<UserId> = (1..=m).map(|i| format!("b{i}").into()).collect();
    if rng.random_bool(0.2) {
        targets.push(negotiators.choose(rng).unwrap().clone());
    }
    let mut users: Vec<UserId> = negotiators.clone();
    users.extend(targets.iter().filter(|t| !negotiators.contains(t)).cloned());
    let outsider: UserId = "z".into();
    users.push(outsider.clone());

    let mut ties = TieStrengthTable::new(shape.delta);
    let mut group_sets = Vec::new();
    let mut policies = Vec::new();
    for n in &negotiators {
        let g = rng.random_range(1..=3usize);
        let mut buckets = vec![Vec::new(); g];
        for t in &targets {
            let slot = rng.random_range(0..=g);
            if slot < g {
                buckets[slot].push(t.clone());
            }
        }
        if rng.random_bool(0.1) {
            buckets[0].push(outsider.clone());
        }
        buckets.retain(|b: &Vec<UserId>| !b.is_empty());
        if buckets.is_empty() {
            buckets.push(vec![outsider.clone()]);
        }
        let groups: Vec<Group> = buckets
            .into_iter()
            .enumerate()
            .map(|(i, members)| Group {
                name: format!("G{i}"),
                members,
            })
            .collect();
        for t in &targets {
            if rng.random_bool(0.85) {
                ties.set(
                    n.clone(),
                    t.clone(),
                    i64::from(rng.random_range(0..=shape.delta)),
                );
            }
        }
        let granted = groups
            .iter()
            .filter(|_| rng.random_bool(0.6))
            .map(|g| g.name.clone())
            .collect();
        let mut exceptions: Vec<UserId> = targets
            .iter()
            .filter(|_| rng.random_bool(0.15))
            .cloned()
            .collect();
        if rng.random_bool(0.05) {
            exceptions.push(outsider.clone());
        }
        policies.push(PrivacyPolicy {
            owner: n.clone(),
            granted,
            exceptions,
        });
        group_sets.push(GroupSet::new(n.clone(), groups));
    }
    Scenario {
        users,
        uploader: negotiators.choose(rng).unwrap().clone(),
        negotiators,
        targets,
        group_sets,
        policies,
        ties,
    }
}

pub fn preference(s: &Scenario, n: &UserId, t: &UserId) -> Action {
    act(s.policy(n).unwrap(), s.group_set(n).unwrap(), t)
}

/// Brute-force conflict oracle: every target, every ordered pair of negotiators.
pub fn oracle_conflicts(s: &Scenario) -> Vec<UserId> {
    s.targets
        .iter()
        .filter(|t| {
            s.negotiators.iter().any(|a| {
                s.negotiators
                    .iter()
                    .any(|b| a != b && preference(s, a, t) != preference(s, b, t))
            })
        })
        .cloned()
        .collect()
}

/// Majority over preferences with the uploader deciding exact ties.
pub fn oracle_modified_majority(s: &Scenario, t: &UserId) -> Action {
    let grants = s
        .negotiators
        .iter()
        .filter(|n| preference(s, n, t) == Action::Grant)
        .count();
    let denies = s.negotiators.len() - grants;
    if 2 * grants > s.negotiators.len() {
        Action::Grant
    } else if 2 * denies > s.negotiators.len() {
        Action::Deny
    } else {
        preference(s, &s.uploader, t)
    }
}
