mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{oracle_conflicts, oracle_modified_majority, preference, random_scenario, Shape};
use privmed::baseline::{majority_voting, uploader_overwrites, veto_voting, TieBreak};
use privmed::conflict::detect_unchecked;
use privmed::harness::evaluate::{evaluate, EvalOptions, MatchReport};
use privmed::harness::format::{parse_scenario, scenario_to_string};
use privmed::harness::generator::{
    generate_scenarios, scenario_id, synthesize_records, GeneratorConfig, RecordConfig,
};
use privmed::policy::validate_scenario;
use privmed::resolution::{mediate, Branch, RuleTag};
use privmed::willingness::{
    group_strictness, willingness_value, WillingnessClass, WillingnessEstimator,
};
use privmed::{act, action_vector, Action, Scenario, TieStrengthTable, UserId, ValidationOptions};

fn scenario(seed: u64) -> Scenario {
    let s = random_scenario(&mut ChaCha8Rng::seed_from_u64(seed), &Shape::default());
    debug_assert!(validate_scenario(&s).is_valid());
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn random_scenarios_are_valid(seed in any::<u64>()) {
        let s = scenario(seed);
        let report = validate_scenario(&s);
        prop_assert!(report.is_valid(), "{}", report);
    }

    #[test]
    fn exception_flips_action(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let s = scenario(seed);
        let n = &s.negotiators[pick.index(s.negotiators.len())];
        let (policy, groups) = (s.policy(n).unwrap(), s.group_set(n).unwrap());
        for t in s.targets.clone() {
            if policy.is_excepted(&t) {
                continue;
            }
            let before = act(policy, groups, &t);
            let mut flipped = policy.clone();
            flipped.exceptions.push(t.clone());
            prop_assert_eq!(act(&flipped, groups, &t), before.flipped());
        }
    }

    #[test]
    fn action_vector_is_pointwise(seed in any::<u64>(), mask in any::<u64>()) {
        let s = scenario(seed);
        let subset: Vec<UserId> = s
            .targets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
            .map(|(_, t)| t.clone())
            .collect();
        for n in &s.negotiators {
            let (p, g) = (s.policy(n).unwrap(), s.group_set(n).unwrap());
            let v = action_vector(p, g, &subset);
            prop_assert_eq!(v.len(), subset.len());
            for (t, a) in &v.actions {
                prop_assert_eq!(*a, act(p, g, t));
            }
        }
    }

    #[test]
    fn detection_matches_oracle(seed in any::<u64>()) {
        let s = scenario(seed);
        prop_assert_eq!(detect_unchecked(&s).conflicts, oracle_conflicts(&s));
    }

    #[test]
    fn detection_ignores_negotiator_order(seed in any::<u64>()) {
        let s = scenario(seed);
        let mut permuted = s.clone();
        permuted.negotiators.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        prop_assert_eq!(detect_unchecked(&s).conflicts, detect_unchecked(&permuted).conflicts);
    }

    #[test]
    fn removing_a_negotiator_adds_no_conflict(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let s = scenario(seed);
        prop_assume!(s.negotiators.len() > 1);
        let gone = s.negotiators[pick.index(s.negotiators.len())].clone();
        let mut smaller = s.clone();
        smaller.negotiators.retain(|n| n != &gone);
        smaller.policies.retain(|p| p.owner != gone);
        smaller.group_sets.retain(|g| g.owner != gone);
        if smaller.uploader == gone {
            smaller.uploader = smaller.negotiators[0].clone();
        }
        let before = detect_unchecked(&s).conflicts;
        for c in detect_unchecked(&smaller).conflicts {
            prop_assert!(before.contains(&c));
        }
    }

    #[test]
    fn willingness_in_unit_interval(i in 0.0f64..=5.0, s in 0.0f64..=5.0) {
        let w = willingness_value(i, s, 5.0);
        prop_assert!((0.0..=1.0).contains(&w));
    }

    #[test]
    fn willingness_decreases_in_each_argument(a in 0.0f64..=5.0, b in 0.0f64..=5.0, other in 0.0f64..=5.0) {
        prop_assume!((a - b).abs() > 1e-9);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(willingness_value(lo, other, 5.0) > willingness_value(hi, other, 5.0));
        prop_assert!(willingness_value(other, lo, 5.0) > willingness_value(other, hi, 5.0));
    }

    #[test]
    fn willingness_is_scale_free(i in 0u32..=5, s in 0u32..=10, k in 1u32..=4) {
        let s = f64::from(s) / 2.0;
        let (i, k) = (f64::from(i), f64::from(k));
        let w = willingness_value(i, s, 5.0);
        prop_assert!((willingness_value(k * i, k * s, k * 5.0) - w).abs() < 1e-12);
    }

    #[test]
    fn doubling_the_scale_keeps_willingness(seed in any::<u64>()) {
        let s = scenario(seed);
        let mut doubled = s.clone();
        let mut ties = TieStrengthTable::new(2 * s.delta());
        for (a, b, v) in s.ties.iter() {
            ties.set(a.clone(), b.clone(), 2 * v);
        }
        doubled.ties = ties;
        let cs = detect_unchecked(&s);
        let base = WillingnessEstimator::new(&s).unwrap().reports_for(&cs).unwrap();
        let scaled = WillingnessEstimator::new(&doubled).unwrap().reports_for(&cs).unwrap();
        for (a, b) in base.reports.iter().zip(&scaled.reports) {
            prop_assert!((a.willingness - b.willingness).abs() < 1e-12);
            prop_assert!((2.0 * a.sensitivity - b.sensitivity).abs() < 1e-12);
        }
    }

    #[test]
    fn strictness_is_bounded(seed in any::<u64>()) {
        let s = scenario(seed);
        for n in &s.negotiators {
            let (p, gs) = (s.policy(n).unwrap(), s.group_set(n).unwrap());
            for g in &gs.groups {
                let t = group_strictness(gs, g, p, &s.ties).unwrap();
                prop_assert!(t <= f64::from(s.delta()));
                let granted_min = g
                    .members
                    .iter()
                    .filter(|m| act(p, gs, m) == Action::Grant)
                    .map(|m| f64::from(s.ties.get(n, m)))
                    .fold(f64::INFINITY, f64::min);
                if granted_min.is_finite() {
                    prop_assert_eq!(t, granted_min);
                } else {
                    prop_assert_eq!(t, f64::from(s.delta()));
                }
            }
        }
    }

    #[test]
    fn trace_is_sound_and_deterministic(seed in any::<u64>()) {
        let s = scenario(seed);
        let m = mediate(&s, ValidationOptions::default()).unwrap();
        prop_assert_eq!(&m, &mediate(&s, ValidationOptions::default()).unwrap());
        for c in &m.outcome.conflicts {
            for d in &c.decisions {
                prop_assert_eq!(d.preferred, preference(&s, &d.negotiator, &c.target));
                prop_assert_eq!(d.changed, d.preferred != c.action);
                if d.changed {
                    prop_assert!(matches!(d.rule, RuleTag::Idm | RuleTag::Iu));
                }
                if d.rule == RuleTag::Nc {
                    prop_assert_eq!(d.preferred, c.action);
                }
                prop_assert_eq!(d.class == WillingnessClass::High, d.rule == RuleTag::Idm);
            }
            if c.branch == Branch::Majority {
                prop_assert!(c.decisions.iter().all(|d| d.class == WillingnessClass::High));
            }
        }
        for (t, a) in &m.outcome.actions.actions {
            if !m.conflicts.contains(t) {
                prop_assert_eq!(*a, preference(&s, &s.negotiators[0], t));
            }
        }
    }

    #[test]
    fn baselines_agree_when_unanimous(seed in any::<u64>()) {
        let s = scenario(seed);
        let m = mediate(&s, ValidationOptions::default()).unwrap();
        prop_assume!(m.conflicts.is_empty());
        let cs = &m.conflicts;
        let ar = &m.outcome.actions;
        prop_assert_eq!(ar, &uploader_overwrites(&s, cs));
        prop_assert_eq!(ar, &majority_voting(&s, cs, TieBreak::Deny));
        prop_assert_eq!(ar, &veto_voting(&s, cs));
    }

    #[test]
    fn modified_majority_matches_oracle(seed in any::<u64>()) {
        let s = scenario(seed);
        let cs = detect_unchecked(&s);
        for t in &s.targets {
            prop_assert_eq!(
                privmed::resolution::modified_majority(&cs, &s.uploader, t),
                oracle_modified_majority(&s, t)
            );
        }
    }

    #[test]
    fn canonical_files_round_trip(seed in any::<u64>()) {
        let s = scenario(seed);
        let text = scenario_to_string(&s);
        let back = parse_scenario(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(scenario_to_string(&back), text);
    }

    #[test]
    fn generator_output_is_valid(
        seed in any::<u64>(),
        negotiators in 2u32..=6,
        targets in 1u32..=8,
        groups in 1u32..=4,
        grant in 0.1f64..0.9,
        exception in 0.0f64..0.5,
    ) {
        let cfg = GeneratorConfig {
            seed,
            negotiator_count: negotiators,
            target_count: targets,
            groups_per_user: groups,
            delta: 5,
            grant_probability: grant,
            exception_probability: exception,
        };
        for s in generate_scenarios(&cfg, 3).unwrap() {
            prop_assert!(validate_scenario(&s).is_valid());
            prop_assert!(!detect_unchecked(&s).is_empty());
        }
    }
}

fn generated(seed: u64, count: usize) -> BTreeMap<String, Scenario> {
    let cfg = GeneratorConfig {
        seed,
        negotiator_count: 4,
        ..GeneratorConfig::default()
    };
    generate_scenarios(&cfg, count)
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(i, s)| (scenario_id(i), s))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn evaluation_ignores_record_order(seed in any::<u64>()) {
        let scenarios = generated(seed, 30);
        let named: Vec<(String, Scenario)> = scenarios.clone().into_iter().collect();
        let mut records = synthesize_records(&named, RecordConfig { seed, multi_focal: true });
        let base = evaluate(&scenarios, &records, EvalOptions::default());
        records.shuffle(&mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(1)));
        let shuffled = evaluate(&scenarios, &records, EvalOptions::default());
        prop_assert_eq!(base.to_csv(), shuffled.to_csv());
        prop_assert_eq!(base.majority_branch, shuffled.majority_branch);
    }

    #[test]
    fn partial_reports_merge_associatively(seed in any::<u64>(), cut1 in 0usize..=40, cut2 in 0usize..=40) {
        let scenarios = generated(seed, 20);
        let named: Vec<(String, Scenario)> = scenarios.clone().into_iter().collect();
        let records = synthesize_records(&named, RecordConfig { seed, multi_focal: true });
        let (i, j) = (cut1.min(cut2).min(records.len()), cut1.max(cut2).min(records.len()));
        let part = |r: &[_]| evaluate(&scenarios, r, EvalOptions::default());
        let (a, b, c) = (part(&records[..i]), part(&records[i..j]), part(&records[j..]));

        let mut left: MatchReport = a.clone();
        left.merge(b.clone());
        left.merge(c.clone());
        let mut bc = b;
        bc.merge(c);
        let mut right = a;
        right.merge(bc);
        let whole = part(&records);
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.to_csv(), whole.to_csv());
    }
}
