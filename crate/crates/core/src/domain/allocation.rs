use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{frontier, ConditionProfile, JointState, ResourceId};
use crate::error::{Error, Result};

/// A joint action: each resource goes to at most one agent and each agent
/// receives at most one resource.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<ResourceId, usize>", into = "BTreeMap<ResourceId, usize>")]
pub struct Allocation {
    assignment: BTreeMap<ResourceId, usize>,
}

impl TryFrom<BTreeMap<ResourceId, usize>> for Allocation {
    type Error = Error;

    fn try_from(map: BTreeMap<ResourceId, usize>) -> Result<Self> {
        Allocation::new(map)
    }
}

impl From<Allocation> for BTreeMap<ResourceId, usize> {
    fn from(a: Allocation) -> Self {
        a.assignment
    }
}

impl Allocation {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds an allocation from `(resource, agent)` pairs, rejecting any
    /// resource or agent that appears twice.
    pub fn new(pairs: impl IntoIterator<Item = (ResourceId, usize)>) -> Result<Self> {
        let mut assignment = BTreeMap::new();
        let mut agents = BTreeSet::new();
        for (r, a) in pairs {
            if assignment.insert(r, a).is_some() {
                return Err(Error::Contract(format!("resource {r} allocated twice")));
            }
            if !agents.insert(a) {
                return Err(Error::Contract(format!("agent {a} allocated two resources")));
            }
        }
        Ok(Allocation { assignment })
    }

    pub fn agent_for(&self, resource: ResourceId) -> Option<usize> {
        self.assignment.get(&resource).copied()
    }

    pub fn resource_for(&self, agent: usize) -> Option<ResourceId> {
        self.assignment.iter().find(|(_, a)| **a == agent).map(|(r, _)| *r)
    }

    /// `(resource, agent)` pairs in resource order.
    pub fn iter(&self) -> impl Iterator<Item = (ResourceId, usize)> + '_ {
        self.assignment.iter().map(|(r, a)| (*r, *a))
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Per-agent view: `out[i]` is the resource granted to agent `i`.
    pub fn by_agent(&self, agents: usize) -> Vec<Option<ResourceId>> {
        let mut out = vec![None; agents];
        for (r, a) in self.iter() {
            if a < agents {
                out[a] = Some(r);
            }
        }
        out
    }

    /// Every grant must be the receiving agent's current frontier resource.
    pub fn check_frontiers<'a>(
        &self,
        state: &JointState,
        profiles: impl IntoIterator<Item = &'a ConditionProfile>,
    ) -> Result<()> {
        let profiles: Vec<_> = profiles.into_iter().collect();
        for (r, a) in self.iter() {
            let (Some(s), Some(p)) = (state.agents.get(a), profiles.get(a)) else {
                return Err(Error::Contract(format!("allocation names unknown agent {a}")));
            };
            if frontier(s, p)? != Some(r) {
                return Err(Error::NotFrontier { agent: a, resource: r });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::AgentState;

    #[test]
    fn injective_both_ways() {
        let r = |i| ResourceId(i);
        assert!(Allocation::new([(r(1), 0), (r(2), 1)]).is_ok());
        assert!(Allocation::new([(r(1), 0), (r(1), 1)]).is_err());
        assert!(Allocation::new([(r(1), 0), (r(2), 0)]).is_err());
    }

    #[test]
    fn serde_rejects_infeasible() {
        let bad = r#"{"1":0,"2":0}"#;
        assert!(serde_json::from_str::<Allocation>(bad).is_err());
        let ok: Allocation = serde_json::from_str(r#"{"1":0,"2":1}"#).unwrap();
        assert_eq!(ok.agent_for(ResourceId(2)), Some(1));
        assert_eq!(ok.resource_for(0), Some(ResourceId(1)));
    }

    #[test]
    fn frontier_check() {
        let p0 = ConditionProfile::new(0, 1.0, vec![ResourceId(1), ResourceId(2)]).unwrap();
        let p1 = ConditionProfile::new(1, 1.0, vec![ResourceId(2)]).unwrap();
        let state = JointState::new(vec![AgentState::admitted(2), AgentState::admitted(1)], 0, 5).unwrap();
        let ok = Allocation::new([(ResourceId(1), 0), (ResourceId(2), 1)]).unwrap();
        ok.check_frontiers(&state, [&p0, &p1]).unwrap();
        let bad = Allocation::new([(ResourceId(2), 0)]).unwrap();
        assert!(matches!(
            bad.check_frontiers(&state, [&p0, &p1]),
            Err(Error::NotFrontier { agent: 0, .. })
        ));
    }
}
