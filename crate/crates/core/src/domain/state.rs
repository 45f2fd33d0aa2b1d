use serde::{Deserialize, Serialize};

use super::{ConditionProfile, HealthState, ResourceId, ResourceStatus};
use crate::error::{Error, Result};

/// Compact index of a monotone status vector over a pathway of length `m`.
///
/// `2k` is `k` leading `had` followed by `need`s; `2k + 1` is `k` leading
/// `had`, one `have`, then `need`s. Valid values are `0..=2m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StatusProgress(pub usize);

impl StatusProgress {
    /// Number of monotone status vectors for a pathway of length `m`.
    pub fn count(m: usize) -> usize {
        2 * m + 1
    }

    pub fn all(m: usize) -> impl Iterator<Item = StatusProgress> {
        (0..Self::count(m)).map(StatusProgress)
    }

    pub fn from_statuses(statuses: &[ResourceStatus]) -> Result<Self> {
        let had = statuses.iter().take_while(|s| **s == ResourceStatus::Had).count();
        let rest = &statuses[had..];
        let (have, tail) = match rest.first() {
            Some(ResourceStatus::Have) => (1, &rest[1..]),
            _ => (0, rest),
        };
        if tail.iter().any(|s| *s != ResourceStatus::Need) {
            return Err(Error::Structural(format!(
                "expected had-prefix, at most one have, then needs; got {}",
                join_statuses(statuses)
            )));
        }
        Ok(StatusProgress(2 * had + have))
    }

    pub fn statuses(self, m: usize) -> Vec<ResourceStatus> {
        let had = self.0 / 2;
        (0..m)
            .map(|i| {
                if i < had {
                    ResourceStatus::Had
                } else if i == had && self.in_progress() {
                    ResourceStatus::Have
                } else {
                    ResourceStatus::Need
                }
            })
            .collect()
    }

    /// A resource is currently `have` (being consumed).
    pub fn in_progress(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn is_complete(self, m: usize) -> bool {
        self.0 == 2 * m
    }

    pub fn is_untouched(self) -> bool {
        self.0 == 0
    }

    /// Pathway position of the next resource to acquire, if one can be bid on.
    pub fn frontier_position(self, m: usize) -> Option<usize> {
        (!self.in_progress() && self.0 < 2 * m).then_some(self.0 / 2)
    }

    pub fn next(self) -> StatusProgress {
        StatusProgress(self.0 + 1)
    }
}

pub(crate) fn join_statuses(statuses: &[ResourceStatus]) -> String {
    statuses.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(";")
}

/// One consumer's state: health plus the status of each pathway resource.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAgentState")]
pub struct AgentState {
    health: HealthState,
    statuses: Vec<ResourceStatus>,
    discharged: bool,
}

#[derive(Deserialize)]
struct RawAgentState {
    health: HealthState,
    statuses: Vec<ResourceStatus>,
    discharged: bool,
}

impl TryFrom<RawAgentState> for AgentState {
    type Error = Error;

    fn try_from(raw: RawAgentState) -> Result<Self> {
        if raw.discharged {
            let s = AgentState::discharged(raw.statuses.len());
            if raw.health != s.health || raw.statuses != s.statuses {
                return Err(Error::Structural(
                    "discharged agents must be healthy with every resource had".into(),
                ));
            }
            Ok(s)
        } else {
            AgentState::new(raw.health, raw.statuses)
        }
    }
}

impl AgentState {
    /// A non-discharged state; rejects non-monotone or empty status vectors.
    pub fn new(health: HealthState, statuses: Vec<ResourceStatus>) -> Result<Self> {
        if statuses.is_empty() {
            return Err(Error::Structural("pathway must be nonempty".into()));
        }
        StatusProgress::from_statuses(&statuses)?;
        Ok(AgentState { health, statuses, discharged: false })
    }

    pub fn from_progress(health: HealthState, m: usize, progress: StatusProgress) -> Self {
        assert!(m > 0 && progress.0 <= 2 * m, "progress {} out of range for m={m}", progress.0);
        AgentState { health, statuses: progress.statuses(m), discharged: false }
    }

    /// Arrival state: sick, every pathway resource needed.
    pub fn admitted(m: usize) -> Self {
        Self::from_progress(HealthState::Sick, m, StatusProgress(0))
    }

    pub fn discharged(m: usize) -> Self {
        AgentState {
            health: HealthState::Healthy,
            statuses: vec![ResourceStatus::Had; m],
            discharged: true,
        }
    }

    pub fn health(&self) -> HealthState {
        self.health
    }

    pub fn statuses(&self) -> &[ResourceStatus] {
        &self.statuses
    }

    pub fn is_discharged(&self) -> bool {
        self.discharged
    }

    pub fn pathway_len(&self) -> usize {
        self.statuses.len()
    }

    pub fn progress(&self) -> StatusProgress {
        StatusProgress::from_statuses(&self.statuses).expect("validated on construction")
    }
}

/// The next pathway resource this agent can bid on, if any.
pub fn frontier(state: &AgentState, profile: &ConditionProfile) -> Result<Option<ResourceId>> {
    if state.pathway_len() != profile.pathway.len() {
        return Err(Error::Structural(format!(
            "{} statuses for a pathway of length {}",
            state.pathway_len(),
            profile.pathway.len()
        )));
    }
    if state.is_discharged() {
        return Ok(None);
    }
    let progress = StatusProgress::from_statuses(state.statuses())?;
    Ok(progress
        .frontier_position(state.pathway_len())
        .map(|pos| profile.pathway[pos]))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JointState {
    pub agents: Vec<AgentState>,
    pub time: usize,
}

impl JointState {
    pub fn new(agents: Vec<AgentState>, time: usize, horizon: usize) -> Result<Self> {
        if time > horizon {
            return Err(Error::Contract(format!("time {time} beyond horizon {horizon}")));
        }
        Ok(JointState { agents, time })
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn all_discharged(&self) -> bool {
        self.agents.iter().all(AgentState::is_discharged)
    }
}
