//! Core value types shared by the solvers, allocators and simulators.

mod allocation;
mod counting;
mod model;
pub(crate) mod state;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use allocation::Allocation;
pub use counting::{count_joint_actions, count_joint_states};
pub use model::{AgentModel, ConditionProfile, RewardTable};
pub use state::{frontier, AgentState, JointState, StatusProgress};

/// Global resource identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResourceId(pub u32);

impl fmt::Display for ResourceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for ResourceId {
    fn from(v: u32) -> Self {
        ResourceId(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HealthState {
    Healthy,
    Sick,
    Critical,
}

impl HealthState {
    pub const ALL: [HealthState; 3] = [HealthState::Healthy, HealthState::Sick, HealthState::Critical];

    /// Severity code: healthy 0, sick 1, critical 2. Also the table index.
    pub fn severity(self) -> usize {
        match self {
            HealthState::Healthy => 0,
            HealthState::Sick => 1,
            HealthState::Critical => 2,
        }
    }

    /// Urgency weight used by the resource obtention prior: 1, 5, 10.
    pub fn urgency(self) -> f64 {
        match self {
            HealthState::Healthy => 1.0,
            HealthState::Sick => 5.0,
            HealthState::Critical => 10.0,
        }
    }

    pub fn from_severity(v: usize) -> Option<Self> {
        Self::ALL.get(v).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            HealthState::Healthy => "healthy",
            HealthState::Sick => "sick",
            HealthState::Critical => "critical",
        }
    }
}

impl fmt::Display for HealthState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HealthState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "healthy" => Ok(HealthState::Healthy),
            "sick" => Ok(HealthState::Sick),
            "critical" => Ok(HealthState::Critical),
            other => Err(Error::Parameter(format!("unknown health state `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResourceStatus {
    Need,
    Have,
    Had,
}

impl ResourceStatus {
    /// Whether the environment permits `self -> next` in one step.
    pub fn can_progress_to(self, next: ResourceStatus) -> bool {
        use ResourceStatus::*;
        matches!((self, next), (Need, Need) | (Need, Have) | (Have, Had) | (Had, Had))
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ResourceStatus::Need => "need",
            ResourceStatus::Have => "have",
            ResourceStatus::Had => "had",
        }
    }
}

impl fmt::Display for ResourceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ResourceStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "need" => Ok(ResourceStatus::Need),
            "have" => Ok(ResourceStatus::Have),
            "had" => Ok(ResourceStatus::Had),
            other => Err(Error::Parameter(format!("unknown resource status `{other}`"))),
        }
    }
}
