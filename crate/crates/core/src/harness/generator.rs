//! Seeded synthetic scenarios and concession records.
//!
//! Negotiators are named `n1..`, targets `t1..`. For each negotiator every
//! target lands in one of `groups_per_user` groups or stays ungrouped (each of
//! those `groups_per_user + 1` outcomes equally likely); empty groups are
//! dropped and at least one non-empty group is kept. Tie strengths from each
//! negotiator to each target are uniform on `0..=delta`. Each group is granted
//! with `grant_probability` and each target becomes an exception with
//! `exception_probability`. Scenarios without a conflict are redrawn.
//!
//! The RNG is ChaCha8 so output is identical across platforms.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::records::ConcessionRecord;
use crate::conflict::detect_unchecked;
use crate::policy::{
    Group, GroupSet, PrivacyPolicy, Scenario, TieStrengthTable, UserId, ValidationOptions,
};
use crate::resolution::mediate;

/// Redraws allowed per scenario before giving up.
pub const RETRY_BUDGET: u32 = 1_000;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub negotiator_count: u32,
    pub target_count: u32,
    pub groups_per_user: u32,
    pub delta: u32,
    pub grant_probability: f64,
    pub exception_probability: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            negotiator_count: 3,
            target_count: 6,
            groups_per_user: 2,
            delta: crate::policy::DEFAULT_DELTA,
            grant_probability: 0.6,
            exception_probability: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeneratorError {
    #[error("{0} must be at least 1")]
    ZeroCount(&'static str),
    #[error("{name} = {value} is not a probability")]
    BadProbability { name: &'static str, value: f64 },
    #[error(
        "no conflicting scenario after {0} attempts; the configuration cannot produce conflicts"
    )]
    NoConflicts(u32),
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), GeneratorError> {
        for (name, v) in [
            ("negotiator_count", self.negotiator_count),
            ("target_count", self.target_count),
            ("groups_per_user", self.groups_per_user),
            ("delta", self.delta),
        ] {
            if v == 0 {
                return Err(GeneratorError::ZeroCount(name));
            }
        }
        for (name, value) in [
            ("grant_probability", self.grant_probability),
            ("exception_probability", self.exception_probability),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(GeneratorError::BadProbability { name, value });
            }
        }
        Ok(())
    }
}

/// Identifier used for the `index`-th generated scenario.
pub fn scenario_id(index: usize) -> String {
    format!("s{:04}", index + 1)
}

/// Draws `count` conflicting scenarios.
pub fn generate_scenarios(
    cfg: &GeneratorConfig,
    count: usize,
) -> Result<Vec<Scenario>, GeneratorError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..count)
        .map(|_| draw_conflicting(cfg, &mut rng))
        .collect()
}

fn draw_conflicting(
    cfg: &GeneratorConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Scenario, GeneratorError> {
    for _ in 0..RETRY_BUDGET {
        let s = draw(cfg, rng);
        if !detect_unchecked(&s).is_empty() {
            return Ok(s);
        }
    }
    Err(GeneratorError::NoConflicts(RETRY_BUDGET))
}

fn draw(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Scenario {
    let negotiators: Vec<UserId> = (1..=cfg.negotiator_count)
        .map(|i| format!("n{i}").into())
        .collect();
    let targets: Vec<UserId> = (1..=cfg.target_count)
        .map(|i| format!("t{i}").into())
        .collect();
    let uploader = negotiators
        .choose(rng)
        .expect("at least one negotiator")
        .clone();

    let mut ties = TieStrengthTable::new(cfg.delta);
    let mut group_sets = Vec::with_capacity(negotiators.len());
    let mut policies = Vec::with_capacity(negotiators.len());
    for n in &negotiators {
        let mut buckets: Vec<Vec<UserId>> = vec![Vec::new(); cfg.groups_per_user as usize];
        for t in &targets {
            let slot = rng.random_range(0..=cfg.groups_per_user) as usize;
            if let Some(bucket) = buckets.get_mut(slot) {
                bucket.push(t.clone());
            }
        }
        buckets.retain(|b| !b.is_empty());
        if buckets.is_empty() {
            let pick = rng.random_range(0..cfg.target_count) as usize;
            buckets.push(vec![targets[pick].clone()]);
        }
        let groups: Vec<Group> = buckets
            .into_iter()
            .enumerate()
            .map(|(i, members)| Group {
                name: format!("g{}", i + 1),
                members,
            })
            .collect();

        for t in &targets {
            ties.set(
                n.clone(),
                t.clone(),
                i64::from(rng.random_range(0..=cfg.delta)),
            );
        }
        let granted: Vec<String> = groups
            .iter()
            .filter(|_| rng.random_bool(cfg.grant_probability))
            .map(|g| g.name.clone())
            .collect();
        let exceptions: Vec<UserId> = targets
            .iter()
            .filter(|_| rng.random_bool(cfg.exception_probability))
            .cloned()
            .collect();
        policies.push(PrivacyPolicy {
            owner: n.clone(),
            granted,
            exceptions,
        });
        group_sets.push(GroupSet::new(n.clone(), groups));
    }

    Scenario {
        users: negotiators.iter().chain(&targets).cloned().collect(),
        negotiators,
        uploader,
        targets,
        group_sets,
        policies,
        ties,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RecordConfig {
    pub seed: u64,
    /// One record per negotiator instead of a single random focal user.
    pub multi_focal: bool,
}

/// Concession records for scenarios whose users behave exactly as the
/// concession rules predict: the recorded user concedes iff the mediator's
/// resolution differs from their preferred action.
///
/// One random conflict per scenario; one random focal negotiator unless
/// `multi_focal` is set.
pub fn synthesize_records(
    scenarios: &[(String, Scenario)],
    cfg: RecordConfig,
) -> Vec<ConcessionRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for (id, s) in scenarios {
        let Ok(m) = mediate(s, ValidationOptions::default()) else {
            continue;
        };
        let Some(target) = m.conflicts.conflicts.choose(&mut rng) else {
            continue;
        };
        let resolution = m
            .outcome
            .conflict(target)
            .expect("every conflict is resolved");
        let focal: Vec<&UserId> = if cfg.multi_focal {
            s.negotiators.iter().collect()
        } else {
            vec![s.negotiators.choose(&mut rng).expect("non-empty")]
        };
        for n in focal {
            let preferred = m
                .conflicts
                .preference(n, target)
                .expect("negotiator has a vector");
            out.push(ConcessionRecord {
                scenario_id: id.clone(),
                focal_user: n.clone(),
                conflict_target: target.clone(),
                preferred_action: preferred,
                conceded: preferred != resolution.action,
            });
        }
    }
    out
}
