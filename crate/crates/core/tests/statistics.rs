mod common;

use aucmdp::mmdp::{step_environment_detailed, JointModel};
use aucmdp::priors::PriorConfig;
use aucmdp::{Allocation, HealthState, ResourceId};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn environment_health_frequencies() {
    let models = sampled_models(2, 3, 2, 3, 10, 4);
    let model = JointModel::new(models, (0..3).map(ResourceId).collect(), 10).unwrap();
    let s = model.initial_state();
    let agent0 = model.agents()[0].clone();
    let grant = Allocation::new([(agent0.condition().pathway[0], 0)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let draws = 100_000;
    let mut freq = [[0usize; 3]; 2];
    for _ in 0..draws {
        let out = step_environment_detailed(&s, &grant, &model, &mut rng).unwrap();
        for (i, a) in out.state.agents.iter().enumerate() {
            freq[i][a.health().severity()] += 1;
        }
        let got = out.state.agents[0].statuses()[0];
        assert_eq!(got, aucmdp::ResourceStatus::Have);
    }
    for (i, f) in freq.iter().enumerate() {
        let row = model.agents()[i].health_row(HealthState::Sick, progress_of(s.agents[i].statuses()));
        for h in 0..3 {
            let emp = f[h] as f64 / draws as f64;
            assert!((emp - row[h]).abs() < 0.01, "agent {i} health {h}: {emp} vs {}", row[h]);
        }
    }
}

#[test]
fn condition_frequencies() {
    let mut cfg = PriorConfig::new(5, 4, 3, 2, 10);
    cfg.condition_weights = vec![0.5, 0.3, 0.2];
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let draws = 100_000;
    let c = counts((0..draws).map(|_| cfg.draw_condition_index(&mut rng).unwrap()));
    for (d, w) in cfg.condition_weights.iter().enumerate() {
        let emp = c.get(&d).copied().unwrap_or(0) as f64 / draws as f64;
        assert!((emp - w).abs() < 0.01, "condition {d}: {emp} vs {w}");
    }
}

#[test]
fn pathways_are_drawn_from_pool() {
    let cfg = PriorConfig::new(5, 6, 4, 3, 10);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        for p in cfg.draw_conditions(&mut rng).unwrap() {
            assert_eq!(p.len(), 3);
            assert!(p.pathway.iter().all(|r| r.0 < 6));
            assert_eq!(counts(p.pathway.iter().copied()).len(), 3);
        }
    }
}
