mod common;

use aucmdp::agent_mdp::{bids, regret, solve, transition};
use aucmdp::{AgentAction, BidMode, HealthState};
use common::*;
use proptest::prelude::*;

#[test]
fn regret_matches_expectimax() {
    for seed in 0..40 {
        let len = 1 + (seed as usize % 4);
        let model = sampled_models(6, 4, 2, len, 8, seed).remove(0);
        let vt = solve(&model);
        let mut oracle = AgentOracle::new(&model);
        for t in 0..8 {
            for p in all_patients(len) {
                let Patient::Active(_, s) = &p else { continue };
                let Some(f) = frontier_pos(s) else { continue };
                let r = model.condition().pathway[f];
                let state = p.to_state(len);
                let got = regret(&model, &vt, &state, t, r).unwrap();
                assert!((got - oracle.regret(t, &p)).abs() < 1e-9, "seed {seed} t {t} {p:?}");
                let bid = bids(&model, &vt, &state, t, BidMode::Regret).unwrap();
                assert_eq!(bid.len(), 1);
                assert!((bid[0].1 - got).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn no_bids_without_frontier() {
    let model = sampled_models(4, 3, 1, 3, 5, 9).remove(0);
    let vt = solve(&model);
    for p in all_patients(3) {
        let wants = matches!(&p, Patient::Active(_, s) if frontier_pos(s).is_some());
        let got = bids(&model, &vt, &p.to_state(3), 0, BidMode::Value).unwrap();
        assert_eq!(got.is_empty(), !wants, "{p:?}");
    }
}

#[test]
fn sampled_models_are_valid() {
    for seed in 0..10_000u64 {
        let len = 1 + (seed as usize % 4);
        let model = sampled_models(1 + (seed as usize % 10), 5, 3, len, 3, seed).remove(0);
        for s in all_status_vectors(len) {
            let pr = progress_of(&s);
            for h in HealthState::ALL {
                let row = model.health_row(h, pr);
                assert!(row.iter().all(|x| *x >= 0.0));
                assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
                let acq = model.acquisition_probability(h, pr);
                assert!((0.0..=1.0).contains(&acq));
                if frontier_pos(&s).is_none() {
                    assert_eq!(acq, 0.0, "seed {seed} {s:?}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transitions_match_oracle(seed in 0u64..10_000, len in 1usize..=4) {
        let model = sampled_models(5, 4, 2, len, 6, seed).remove(0);
        for p in all_patients(len) {
            let state = p.to_state(len);
            let mut actions = vec![AgentAction::Resign];
            if let Patient::Active(_, s) = &p {
                if let Some(f) = frontier_pos(s) {
                    actions.push(AgentAction::Bid(model.condition().pathway[f]));
                }
            }
            for a in actions {
                let got = transition(&model, &state, a).unwrap();
                let total: f64 = got.iter().map(|(_, pr)| pr).sum();
                prop_assert!((total - 1.0).abs() < 1e-9);
                let mut expected = std::collections::BTreeMap::<Patient, f64>::new();
                let q = match (&p, a) {
                    (Patient::Active(h, s), AgentAction::Bid(_)) => acquire_probability(&model, *h, s),
                    _ => 0.0,
                };
                for (granted, w) in [(true, q), (false, 1.0 - q)] {
                    if w == 0.0 {
                        continue;
                    }
                    for (np, pr, _) in successors(&model, &p, granted) {
                        *expected.entry(np).or_default() += w * pr;
                    }
                }
                for (np, pr) in expected {
                    let s = np.to_state(len);
                    let mass: f64 = got.iter().filter(|(x, _)| *x == s).map(|(_, p)| p).sum();
                    prop_assert!((mass - pr).abs() < 1e-9, "{:?} -> {:?}: {} vs {}", p, np, mass, pr);
                }
            }
        }
    }
}
