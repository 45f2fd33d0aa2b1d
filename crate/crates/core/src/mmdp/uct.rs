use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::Rng;

use super::actions::JointActionSpace;
use super::env::step_compact;
use super::JointModel;
use crate::domain::{Allocation, JointState, ResourceId};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// How long UCT may plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// Fixed number of rollouts; reproducible given the RNG seed.
    Iterations(u64),
    /// Wall-clock limit checked between rollouts.
    WallClock(Duration),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UctConfig {
    pub budget: Budget,
    /// UCB1 exploration constant `C` in `mean + C sqrt(2 ln n / n_j)`.
    pub exploration: f64,
    /// Simulation depth cap; `None` uses the remaining episode.
    pub rollout_horizon: Option<usize>,
}

impl Default for UctConfig {
    fn default() -> Self {
        UctConfig { budget: Budget::Iterations(10_000), exploration: 15.0, rollout_horizon: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UctPlan {
    pub allocation: Allocation,
    /// Rollouts that finished within the budget.
    pub rollouts: u64,
    /// Set when no rollout finished in time; the allocation is then empty.
    pub starved: bool,
    /// `(action, visits, mean return)` for each root action tried.
    pub root: Vec<(Allocation, u64, f64)>,
}

#[derive(Debug, Clone, Copy, Default)]
struct ArmStats {
    visits: u64,
    mean: f64,
}

struct Node {
    actions: JointActionSpace,
    visits: u64,
    arms: Vec<ArmStats>,
}

impl Node {
    fn select(&self, c: f64) -> u128 {
        if (self.arms.len() as u128) < self.actions.count() {
            return self.arms.len() as u128;
        }
        let ln_n = (self.visits.max(1) as f64).ln();
        let mut best = (f64::NEG_INFINITY, 0usize);
        for (j, arm) in self.arms.iter().enumerate() {
            let score = arm.mean + c * (2.0 * ln_n / arm.visits as f64).sqrt();
            if score > best.0 {
                best = (score, j);
            }
        }
        best.1 as u128
    }

    fn update(&mut self, action: u128, ret: f64) {
        let j = action as usize;
        if j == self.arms.len() {
            self.arms.push(ArmStats::default());
        }
        let arm = &mut self.arms[j];
        arm.visits += 1;
        arm.mean += (ret - arm.mean) / arm.visits as f64;
        self.visits += 1;
    }
}

struct Search<'m, R> {
    model: &'m JointModel<R>,
    depth_limit: usize,
    exploration: f64,
    tree: HashMap<(usize, Vec<u8>), Node>,
    grants: Vec<Option<ResourceId>>,
    rewards: Vec<R>,
}

impl<R: Real> Search<'_, R> {
    fn node(&self, compact: &[u8]) -> Node {
        Node { actions: JointActionSpace::from_compact(self.model, compact), visits: 0, arms: Vec::new() }
    }

    fn step<G: Rng + ?Sized>(&mut self, compact: &[u8], rng: &mut G) -> (Vec<u8>, f64) {
        let mut next = Vec::with_capacity(compact.len());
        step_compact(self.model, compact, &self.grants, rng, &mut next, &mut self.rewards);
        let r = self.rewards.iter().map(|x| x.as_f64()).sum();
        (next, r)
    }

    fn simulate<G: Rng + ?Sized>(&mut self, compact: Vec<u8>, depth: usize, rng: &mut G) -> f64 {
        if depth >= self.depth_limit || self.model.all_discharged(&compact) {
            return 0.0;
        }
        let key = (depth, compact);
        let action = match self.tree.get(&key) {
            Some(node) => {
                let a = node.select(self.exploration);
                node.actions.decode_into(a, &mut self.grants);
                a
            }
            None => {
                let node = self.node(&key.1);
                self.tree.insert(key.clone(), node);
                return self.rollout(key.1, depth, rng);
            }
        };
        let (next, r) = self.step(&key.1, rng);
        let ret = r + self.simulate(next, depth + 1, rng);
        self.tree.get_mut(&key).expect("node present").update(action, ret);
        ret
    }

    fn rollout<G: Rng + ?Sized>(&mut self, mut compact: Vec<u8>, depth: usize, rng: &mut G) -> f64 {
        let mut ret = 0.0;
        for _ in depth..self.depth_limit {
            if self.model.all_discharged(&compact) {
                break;
            }
            let space = JointActionSpace::from_compact(self.model, &compact);
            space.sample_into(rng, &mut self.grants);
            let (next, r) = self.step(&compact, rng);
            ret += r;
            compact = next;
        }
        ret
    }
}

/// Plans one joint action with UCT: UCB1 selection inside the tree (untried
/// actions first, in enumeration order), uniform random rollouts beyond it,
/// undiscounted returns. Returns the root action with the best mean return.
pub fn uct_plan<R: Real, G: Rng + ?Sized>(
    state: &JointState,
    model: &JointModel<R>,
    config: &UctConfig,
    rng: &mut G,
) -> Result<UctPlan> {
    if let Budget::WallClock(d) = config.budget {
        if d.is_zero() {
            return Err(Error::Parameter("UCT timeout must be positive".into()));
        }
    }
    let start = Instant::now();
    let compact = model.compact(state)?;
    let remaining = model.horizon().saturating_sub(state.time);
    let depth_limit = config.rollout_horizon.map_or(remaining, |h| h.min(remaining));
    let mut search = Search {
        model,
        depth_limit,
        exploration: config.exploration,
        tree: HashMap::new(),
        grants: vec![None; model.len()],
        rewards: vec![R::zero(); model.len()],
    };
    let root = search.node(&compact);
    if root.actions.count() == 1 || depth_limit == 0 {
        return Ok(UctPlan { allocation: root.actions.decode(0), rollouts: 0, starved: false, root: Vec::new() });
    }
    let key = (0usize, compact);
    search.tree.insert(key.clone(), root);

    let mut rollouts = 0u64;
    loop {
        match config.budget {
            Budget::Iterations(n) if rollouts >= n => break,
            Budget::WallClock(d) if start.elapsed() >= d => break,
            _ => {}
        }
        search.simulate(key.1.clone(), 0, rng);
        if let Budget::WallClock(d) = config.budget {
            if start.elapsed() > d {
                // finished after the deadline
                break;
            }
        }
        rollouts += 1;
    }

    let node = &search.tree[&key];
    let root_stats: Vec<_> = node
        .arms
        .iter()
        .enumerate()
        .map(|(j, a)| (node.actions.decode(j as u128), a.visits, a.mean))
        .collect();
    if rollouts == 0 {
        return Ok(UctPlan { allocation: Allocation::empty(), rollouts, starved: true, root: root_stats });
    }
    let best = node
        .arms
        .iter()
        .enumerate()
        .filter(|(_, a)| a.visits > 0)
        .fold((f64::NEG_INFINITY, 0usize), |b, (j, a)| if a.mean > b.0 { (a.mean, j) } else { b });
    Ok(UctPlan { allocation: node.actions.decode(best.1 as u128), rollouts, starved: false, root: root_stats })
}
