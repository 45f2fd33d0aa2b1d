use std::time::Duration;

use aucmdp::auction::{fcfs, sickest_first, Candidate};
use aucmdp::domain::{AgentModel, ConditionProfile, RewardTable};
use aucmdp::harness::{run_experiment, write_results_csv, HorizonRule, Method, Scenario, RESULTS_HEADER};
use aucmdp::mmdp::{step_environment, uct_plan, Budget, JointModel, UctConfig};
use aucmdp::{Allocation, HealthState, ResourceId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn certain_healer() -> AgentModel {
    let p = ConditionProfile::new(0, 1.0, vec![ResourceId(0)]).unwrap();
    AgentModel::from_fn(
        p,
        5,
        |h, pr| {
            let mut row = [0.0; 3];
            row[if pr.0 > 0 { 0 } else { h.severity() }] = 1.0;
            row
        },
        |_, _| 1.0,
        RewardTable::standard(),
    )
    .unwrap()
}

#[test]
fn one_patient_trace() {
    let model = JointModel::from_agents(vec![certain_healer()]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut s = model.initial_state();
    let mut rewards = Vec::new();
    while s.time < model.horizon() {
        let a = if s.time == 0 { Allocation::new([(ResourceId(0), 0)]).unwrap() } else { Allocation::empty() };
        let (next, r) = step_environment(&s, &a, &model, &mut rng).unwrap();
        rewards.push(r);
        s = next;
    }
    // sick while the resource arrives, then healed on consumption and discharged
    assert_eq!(rewards, vec![0.0, 15.0, 0.0, 0.0, 0.0]);
    assert!(s.all_discharged());
    assert_eq!(s.agents[0].health(), HealthState::Healthy);
}

#[test]
fn identical_patients_fcfs_equals_sickest() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let health = HealthState::ALL[rng.random_range(0..3)];
        let candidates: Vec<Candidate> = (0..6)
            .map(|agent| Candidate {
                agent,
                health,
                criticality: 1.5,
                frontier: rng.random_bool(0.8).then(|| ResourceId(rng.random_range(0..3))),
            })
            .collect();
        assert_eq!(fcfs(&candidates), sickest_first(&candidates));
    }
}

#[test]
fn single_trial_summary_is_the_trial() {
    let sc = Scenario::new(3, 3, 2, 2, HorizonRule::PerAgent(10)).with_methods(&[Method::RegIter]).with_protocol(1, 1, 5);
    let rep = run_experiment(&sc).unwrap();
    let s = &rep.summaries[0];
    assert_eq!(s.overall.mean, rep.results[0].avg_reward_per_patient);
    assert_eq!(s.overall.std, 0.0);
    let r = &rep.results[0];
    assert_eq!(r.avg_reward_per_patient, r.returns.iter().sum::<f64>() / 3.0);
}

#[test]
fn results_csv_layout() {
    let sc = Scenario::new(2, 2, 1, 1, HorizonRule::Fixed(5)).with_methods(&[Method::Fcfs]).with_protocol(2, 1, 0);
    let rep = run_experiment(&sc).unwrap();
    let mut out = Vec::new();
    write_results_csv(&sc, &rep.results, &mut out, true).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), RESULTS_HEADER.join(","));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..7], ["fcfs", "2", "2", "1", "5", "0", "0"]);
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn uct_starves_on_huge_instance() {
    let p = ConditionProfile::new(0, 1.0, (0..4).map(ResourceId).collect()).unwrap();
    let agents: Vec<AgentModel> = (0..300)
        .map(|_| {
            AgentModel::from_fn(p.clone(), 5000, |_, _| [0.2, 0.5, 0.3], |_, _| 0.5, RewardTable::standard()).unwrap()
        })
        .collect();
    let model = JointModel::from_agents(agents).unwrap();
    let config = UctConfig { budget: Budget::WallClock(Duration::from_millis(1)), ..UctConfig::default() };
    let plan = uct_plan(&model.initial_state(), &model, &config, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    assert!(plan.starved);
    assert_eq!(plan.rollouts, 0);
    assert_eq!(plan.allocation, Allocation::empty());
}

#[test]
fn uct_method_runs_with_iteration_budget() {
    let mut sc = Scenario::new(3, 2, 1, 2, HorizonRule::Fixed(6)).with_methods(&[Method::Uct]).with_protocol(2, 1, 1);
    sc.uct = UctConfig { budget: Budget::Iterations(300), ..UctConfig::default() };
    let rep = run_experiment(&sc).unwrap();
    assert!(rep.results.iter().all(|r| r.starved_steps == 0 && r.audit.is_clean()));
}
