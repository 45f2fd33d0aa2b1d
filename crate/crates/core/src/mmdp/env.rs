use rand::Rng;

use super::JointModel;
use crate::domain::{Allocation, HealthState, JointState, ResourceId};
use crate::error::{Error, Result};
use crate::scalar::{total, Real};

/// Result of one environment step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome<R = f64> {
    pub state: JointState,
    /// Reward collected by each agent; zero for discharged agents.
    pub rewards: Vec<R>,
}

impl<R: Real> StepOutcome<R> {
    pub fn total(&self) -> R {
        total(self.rewards.iter().copied())
    }
}

pub(crate) fn sample_health<G: Rng + ?Sized, R: Real>(row: &[R; 3], rng: &mut G) -> HealthState {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = HealthState::Critical;
    for h in HealthState::ALL {
        let p = row[h.severity()].as_f64();
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last = h;
        if u < acc {
            return h;
        }
    }
    last
}

/// Advances every agent one step. `grants[i]` must be agent `i`'s frontier
/// resource when set.
pub(crate) fn step_compact<R: Real, G: Rng + ?Sized>(
    model: &JointModel<R>,
    compact: &[u8],
    grants: &[Option<ResourceId>],
    rng: &mut G,
    next: &mut Vec<u8>,
    rewards: &mut [R],
) {
    next.clear();
    for (i, (&idx, space)) in compact.iter().zip(model.spaces()).enumerate() {
        let Some((health, progress)) = space.decode(idx as usize) else {
            next.push(idx);
            rewards[i] = R::zero();
            continue;
        };
        let agent = &model.agents()[i];
        let new_p = if progress.in_progress() || grants[i].is_some() { progress.next() } else { progress };
        let h2 = sample_health(agent.health_row(health, progress), rng);
        rewards[i] = agent.reward().get(health, h2);
        let n = if h2 == HealthState::Healthy && new_p.is_complete(space.pathway_len()) {
            space.discharged()
        } else {
            space.index(h2, new_p)
        };
        next.push(n as u8);
    }
}

/// Applies `allocation`, samples every agent's next health and returns the
/// next state with per-agent rewards.
pub fn step_environment_detailed<R: Real, G: Rng + ?Sized>(
    state: &JointState,
    allocation: &Allocation,
    model: &JointModel<R>,
    rng: &mut G,
) -> Result<StepOutcome<R>> {
    if state.time >= model.horizon() {
        return Err(Error::Contract(format!("step at t={} past horizon {}", state.time, model.horizon())));
    }
    let compact = model.compact(state)?;
    allocation.check_frontiers(state, model.agents().iter().map(|a| a.condition()))?;
    let grants = allocation.by_agent(model.len());
    let mut next = Vec::with_capacity(compact.len());
    let mut rewards = vec![R::zero(); compact.len()];
    step_compact(model, &compact, &grants, rng, &mut next, &mut rewards);
    Ok(StepOutcome { state: model.expand(&next, state.time + 1), rewards })
}

/// [`step_environment_detailed`] returning only the next state and joint reward.
pub fn step_environment<R: Real, G: Rng + ?Sized>(
    state: &JointState,
    allocation: &Allocation,
    model: &JointModel<R>,
    rng: &mut G,
) -> Result<(JointState, R)> {
    let out = step_environment_detailed(state, allocation, model, rng)?;
    let reward = out.total();
    Ok((out.state, reward))
}
