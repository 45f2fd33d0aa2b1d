use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Method, Scenario};
use crate::agent_mdp::{bids, solve, BidMode, ValueTable};
use crate::auction::{
    fcfs, iterative_auction_with, one_round_auction, sickest_first, AuctionRules, Candidate, RegretMatrix,
};
use crate::domain::{frontier, AgentModel, Allocation, ConditionProfile, JointState, ResourceId};
use crate::error::{Error, Result};
use crate::mmdp::{step_environment_detailed, uct_plan, JointModel};
use crate::priors::sample_agent_model;

const ENV_STREAM: u64 = 0;
const PLANNER_STREAM: u64 = 1;
const AGENT_STREAM_BASE: u64 = 2;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial` in repeat `repeat`; independent of the method so all
/// methods face the same patients and the same environment noise.
pub fn trial_seed(base: u64, repeat: usize, trial: usize) -> u64 {
    splitmix(splitmix(splitmix(base) ^ repeat as u64) ^ (trial as u64).wrapping_mul(0x2545_f491_4f6c_dd1d))
}

/// Seed for the condition profiles drawn once per repeat.
pub fn repeat_seed(base: u64, repeat: usize) -> u64 {
    splitmix(splitmix(base ^ 0x5bd1_e995) ^ repeat as u64)
}

fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws the condition profiles used by every trial of `repeat`.
pub fn repeat_conditions(scenario: &Scenario, repeat: usize) -> Result<Vec<ConditionProfile>> {
    scenario.prior.draw_conditions(&mut ChaCha8Rng::seed_from_u64(repeat_seed(scenario.seed, repeat)))
}

/// Samples the trial's patients; agent `i` draws from its own stream.
pub fn trial_models(scenario: &Scenario, conditions: &[ConditionProfile], seed: u64) -> Result<Vec<AgentModel>> {
    (0..scenario.prior.agents)
        .map(|i| sample_agent_model(&scenario.prior, conditions, &mut stream(seed, AGENT_STREAM_BASE + i as u64)))
        .collect()
}

/// Feasibility counters gathered while an episode runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Audit {
    pub steps: u64,
    pub grants: u64,
    /// Resources handed to more than one agent in a step.
    pub double_allocations: u64,
    /// Grants of a resource that is not the recipient's frontier.
    pub pathway_violations: u64,
}

impl Audit {
    pub fn is_clean(&self) -> bool {
        self.double_allocations == 0 && self.pathway_violations == 0
    }

    pub fn merge(&mut self, other: &Audit) {
        self.steps += other.steps;
        self.grants += other.grants;
        self.double_allocations += other.double_allocations;
        self.pathway_violations += other.pathway_violations;
    }

    fn record(&mut self, allocation: &Allocation, state: &JointState, models: &[AgentModel]) -> Result<()> {
        self.steps += 1;
        let mut per_resource = std::collections::BTreeMap::<ResourceId, u64>::new();
        for (r, i) in allocation.iter() {
            self.grants += 1;
            *per_resource.entry(r).or_default() += 1;
            let agent = state.agents.get(i).zip(models.get(i));
            let ok = match agent {
                Some((s, m)) => frontier(s, m.condition())? == Some(r),
                None => false,
            };
            if !ok {
                self.pathway_violations += 1;
            }
        }
        self.double_allocations += per_resource.values().filter(|c| **c > 1).count() as u64;
        Ok(())
    }
}

/// Outcome of one method on one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub method: Method,
    pub repeat: usize,
    pub trial: usize,
    pub seed: u64,
    pub returns: Vec<f64>,
    pub avg_reward_per_patient: f64,
    pub joint_reward: f64,
    /// Whole episode including planning and solving.
    pub wall_clock_ms: f64,
    /// Time spent deciding allocations, solves included.
    pub allocation_ms: f64,
    pub audit: Audit,
    /// Steps where UCT finished no rollout before its deadline.
    pub starved_steps: u64,
}

fn heuristic_candidates(state: &JointState, models: &[AgentModel]) -> Result<Vec<Candidate>> {
    state
        .agents
        .iter()
        .zip(models)
        .enumerate()
        .map(|(i, (s, m))| {
            Ok(Candidate {
                agent: i,
                health: s.health(),
                criticality: m.condition().criticality,
                frontier: frontier(s, m.condition())?,
            })
        })
        .collect()
}

fn auction_allocation(
    method: Method,
    state: &JointState,
    models: &[AgentModel],
    tables: &[ValueTable],
) -> Result<Allocation> {
    let mode = if method == Method::Iter { BidMode::Value } else { BidMode::Regret };
    let mut matrix = RegretMatrix::new(mode);
    for (i, ((s, m), vt)) in state.agents.iter().zip(models).zip(tables).enumerate() {
        for (r, b) in bids(m, vt, s, state.time, mode)? {
            matrix.insert(i, r, b)?;
        }
    }
    Ok(match method {
        Method::Reg => one_round_auction(&matrix),
        // Values may be negative; only regret bids resign below zero.
        Method::Iter => {
            iterative_auction_with(&matrix, AuctionRules { resign_non_positive: false, ..AuctionRules::default() })
                .allocation
        }
        _ => iterative_auction_with(&matrix, AuctionRules::default()).allocation,
    })
}

/// What one episode produced before timing and bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeOutcome {
    pub returns: Vec<f64>,
    /// Sum of the environment's joint rewards over the episode.
    pub joint_reward: f64,
    pub allocation_ms: f64,
    pub audit: Audit,
    pub starved_steps: u64,
}

/// Runs `method` for one episode on patients sampled from `seed`.
pub fn run_episode(
    scenario: &Scenario,
    method: Method,
    conditions: &[ConditionProfile],
    seed: u64,
) -> Result<EpisodeOutcome> {
    let models = trial_models(scenario, conditions, seed)?;
    let pool = (0..scenario.prior.resources as u32).map(ResourceId).collect();
    let joint = JointModel::new(models, pool, scenario.horizon())?;
    let models = joint.agents();
    let mut env = stream(seed, ENV_STREAM);
    let mut planner = stream(seed, PLANNER_STREAM);

    let mut alloc_time = 0.0;
    let clock = Instant::now();
    let tables: Vec<ValueTable> =
        if method.uses_value_tables() { models.par_iter().map(solve).collect() } else { Vec::new() };
    alloc_time += clock.elapsed().as_secs_f64() * 1e3;

    let mut state = joint.initial_state();
    let mut returns = vec![0.0; models.len()];
    let mut audit = Audit::default();
    let mut starved = 0;
    let mut joint_reward = 0.0;
    while state.time < joint.horizon() && !state.all_discharged() {
        let clock = Instant::now();
        let allocation = match method {
            Method::Fcfs => fcfs(&heuristic_candidates(&state, models)?),
            Method::Sickest => sickest_first(&heuristic_candidates(&state, models)?),
            Method::Uct => {
                let plan = uct_plan(&state, &joint, &scenario.uct, &mut planner)?;
                starved += u64::from(plan.starved);
                plan.allocation
            }
            _ => auction_allocation(method, &state, models, &tables)?,
        };
        alloc_time += clock.elapsed().as_secs_f64() * 1e3;
        audit.record(&allocation, &state, models)?;
        let step = step_environment_detailed(&state, &allocation, &joint, &mut env)?;
        joint_reward += step.total();
        for (acc, r) in returns.iter_mut().zip(&step.rewards) {
            *acc += r;
        }
        state = step.state;
    }
    Ok(EpisodeOutcome { returns, joint_reward, allocation_ms: alloc_time, audit, starved_steps: starved })
}

/// One trial of one method, with timing.
pub fn run_trial(
    scenario: &Scenario,
    method: Method,
    conditions: &[ConditionProfile],
    repeat: usize,
    trial: usize,
) -> Result<TrialResult> {
    let seed = trial_seed(scenario.seed, repeat, trial);
    let clock = Instant::now();
    let ep = run_episode(scenario, method, conditions, seed)?;
    let wall_clock_ms = clock.elapsed().as_secs_f64() * 1e3;
    if ep.returns.is_empty() {
        return Err(Error::Config("episode without agents".into()));
    }
    Ok(TrialResult {
        method,
        repeat,
        trial,
        seed,
        avg_reward_per_patient: ep.returns.iter().sum::<f64>() / ep.returns.len() as f64,
        joint_reward: ep.joint_reward,
        returns: ep.returns,
        wall_clock_ms,
        allocation_ms: ep.allocation_ms,
        audit: ep.audit,
        starved_steps: ep.starved_steps,
    })
}
