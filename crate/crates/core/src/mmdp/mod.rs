//! The full multiagent MDP: exact composition of the agent models, the
//! simulated environment, UCT planning and an exhaustive joint DP oracle.

mod actions;
mod env;
mod joint_dp;
mod uct;

use std::collections::BTreeSet;

use crate::agent_mdp::StateSpace;
use crate::domain::{AgentModel, AgentState, JointState, ResourceId};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub use actions::{feasible_joint_actions, JointActionSpace};
pub use env::{step_environment, step_environment_detailed, StepOutcome};
pub use joint_dp::{joint_value_iteration, JointValueTable, DEFAULT_STATE_CAP};
pub use uct::{uct_plan, Budget, UctConfig, UctPlan};

/// Agents sharing a resource pool. Joint reward is the sum of agent rewards
/// and the joint transition is the product of agent transitions.
#[derive(Debug, Clone, PartialEq)]
pub struct JointModel<R = f64> {
    agents: Vec<AgentModel<R>>,
    resources: BTreeSet<ResourceId>,
    horizon: usize,
    spaces: Vec<StateSpace>,
}

impl<R: Real> JointModel<R> {
    pub fn new(agents: Vec<AgentModel<R>>, resources: BTreeSet<ResourceId>, horizon: usize) -> Result<Self> {
        for (i, a) in agents.iter().enumerate() {
            if let Some(r) = a.condition().pathway.iter().find(|r| !resources.contains(r)) {
                return Err(Error::Parameter(format!("agent {i} needs resource {r} outside the pool")));
            }
        }
        let spaces = agents.iter().map(|a| StateSpace::new(a.pathway_len())).collect();
        Ok(JointModel { agents, resources, horizon, spaces })
    }

    /// Pool is the union of the agents' pathways; horizon from the first agent.
    pub fn from_agents(agents: Vec<AgentModel<R>>) -> Result<Self> {
        let resources = agents.iter().flat_map(|a| a.condition().pathway.iter().copied()).collect();
        let horizon = agents.first().map(|a| a.horizon()).unwrap_or(0);
        Self::new(agents, resources, horizon)
    }

    pub fn agents(&self) -> &[AgentModel<R>] {
        &self.agents
    }

    pub fn resources(&self) -> &BTreeSet<ResourceId> {
        &self.resources
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub(crate) fn spaces(&self) -> &[StateSpace] {
        &self.spaces
    }

    /// Everyone admitted sick with nothing obtained, at `t = 0`.
    pub fn initial_state(&self) -> JointState {
        JointState {
            agents: self.agents.iter().map(|a| AgentState::admitted(a.pathway_len())).collect(),
            time: 0,
        }
    }

    pub(crate) fn compact(&self, state: &JointState) -> Result<Vec<u8>> {
        if state.len() != self.len() {
            return Err(Error::Contract(format!(
                "joint state has {} agents, model has {}",
                state.len(),
                self.len()
            )));
        }
        state
            .agents
            .iter()
            .zip(&self.spaces)
            .map(|(s, sp)| {
                let i = sp.index_of(s)?;
                u8::try_from(i).map_err(|_| Error::Parameter("pathway too long for compact states".into()))
            })
            .collect()
    }

    pub(crate) fn expand(&self, compact: &[u8], time: usize) -> JointState {
        JointState {
            agents: compact.iter().zip(&self.spaces).map(|(i, sp)| sp.state(*i as usize)).collect(),
            time,
        }
    }

    pub(crate) fn all_discharged(&self, compact: &[u8]) -> bool {
        compact.iter().zip(&self.spaces).all(|(i, sp)| *i as usize == sp.discharged())
    }
}
