use rand::Rng;

use super::JointModel;
use crate::domain::{Allocation, JointState, ResourceId};
use crate::error::Result;
use crate::scalar::Real;

/// Feasible joint actions of a state as a mixed-radix product: each resource
/// independently goes to nobody or to one of the agents whose frontier it is.
///
/// Index 0 is the empty allocation; indices are decoded lazily so very large
/// action sets never need to be materialised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointActionSpace {
    /// `(resource, agents whose frontier it is)` in resource order.
    slots: Vec<(ResourceId, Vec<usize>)>,
    count: u128,
}

impl JointActionSpace {
    pub(crate) fn from_compact<R: Real>(model: &JointModel<R>, compact: &[u8]) -> Self {
        let mut slots: Vec<(ResourceId, Vec<usize>)> = Vec::new();
        for (agent, (&idx, space)) in compact.iter().zip(model.spaces()).enumerate() {
            let Some((_, progress)) = space.decode(idx as usize) else { continue };
            let Some(pos) = progress.frontier_position(space.pathway_len()) else { continue };
            let r = model.agents()[agent].condition().pathway[pos];
            match slots.binary_search_by_key(&r, |(res, _)| *res) {
                Ok(i) => slots[i].1.push(agent),
                Err(i) => slots.insert(i, (r, vec![agent])),
            }
        }
        let count = slots
            .iter()
            .fold(1u128, |acc, (_, c)| acc.saturating_mul(c.len() as u128 + 1));
        JointActionSpace { slots, count }
    }

    pub fn new<R: Real>(model: &JointModel<R>, state: &JointState) -> Result<Self> {
        Ok(Self::from_compact(model, &model.compact(state)?))
    }

    /// Number of feasible joint actions (saturating).
    pub fn count(&self) -> u128 {
        self.count
    }

    /// Writes the granted resource of each agent into `grants` (length N).
    pub(crate) fn decode_into(&self, mut index: u128, grants: &mut [Option<ResourceId>]) {
        grants.iter_mut().for_each(|g| *g = None);
        for (r, agents) in &self.slots {
            let radix = agents.len() as u128 + 1;
            let choice = (index % radix) as usize;
            index /= radix;
            if choice > 0 {
                grants[agents[choice - 1]] = Some(*r);
            }
        }
    }

    pub fn decode(&self, index: u128) -> Allocation {
        let mut pairs = Vec::new();
        let mut rest = index;
        for (r, agents) in &self.slots {
            let radix = agents.len() as u128 + 1;
            let choice = (rest % radix) as usize;
            rest /= radix;
            if choice > 0 {
                pairs.push((*r, agents[choice - 1]));
            }
        }
        Allocation::new(pairs).expect("one agent per resource, one frontier per agent")
    }

    /// Uniformly random feasible action.
    pub(crate) fn sample_into<G: Rng + ?Sized>(&self, rng: &mut G, grants: &mut [Option<ResourceId>]) {
        grants.iter_mut().for_each(|g| *g = None);
        for (r, agents) in &self.slots {
            let choice = rng.random_range(0..=agents.len());
            if choice > 0 {
                grants[agents[choice - 1]] = Some(*r);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Allocation> + '_ {
        (0..self.count).map(|i| self.decode(i))
    }
}

/// Every feasible joint action of `state`, the empty allocation first.
pub fn feasible_joint_actions<R: Real>(state: &JointState, model: &JointModel<R>) -> Result<Vec<Allocation>> {
    Ok(JointActionSpace::new(model, state)?.iter().collect())
}
