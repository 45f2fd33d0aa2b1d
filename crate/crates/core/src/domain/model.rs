use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{HealthState, ResourceId, StatusProgress};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A condition's criticality and its linear resource pathway.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct ConditionProfile {
    pub id: usize,
    /// In `[1, 2]`; 2 is the most critical.
    pub criticality: f64,
    pub pathway: Vec<ResourceId>,
}

#[derive(Deserialize)]
struct RawProfile {
    id: usize,
    criticality: f64,
    pathway: Vec<ResourceId>,
}

impl TryFrom<RawProfile> for ConditionProfile {
    type Error = Error;

    fn try_from(raw: RawProfile) -> Result<Self> {
        ConditionProfile::new(raw.id, raw.criticality, raw.pathway)
    }
}

impl ConditionProfile {
    pub fn new(id: usize, criticality: f64, pathway: Vec<ResourceId>) -> Result<Self> {
        if !(1.0..=2.0).contains(&criticality) {
            return Err(Error::Parameter(format!("criticality {criticality} outside [1, 2]")));
        }
        if pathway.is_empty() {
            return Err(Error::Structural("pathway must be nonempty".into()));
        }
        let mut sorted = pathway.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != pathway.len() {
            return Err(Error::Structural("pathway resources must be distinct".into()));
        }
        Ok(ConditionProfile { id, criticality, pathway })
    }

    pub fn len(&self) -> usize {
        self.pathway.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pathway.is_empty()
    }
}

/// Reward for a one-step health transition, indexed by severity `(h, h')`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RewardTable<R = f64> {
    pub table: [[R; 3]; 3],
}

impl<R: Real> RewardTable<R> {
    /// Rewards recovery and penalises staying sick or deteriorating.
    ///
    /// Rows are the current health, columns the next health, both in
    /// `(healthy, sick, critical)` order.
    pub fn standard() -> Self {
        let rows = [[10.0, -5.0, -10.0], [15.0, 0.0, -5.0], [5.0, 0.0, -5.0]];
        RewardTable { table: rows.map(|r| r.map(R::lit)) }
    }

    pub fn get(&self, from: HealthState, to: HealthState) -> R {
        self.table[from.severity()][to.severity()]
    }

    pub fn min(&self) -> R {
        self.table.iter().flatten().copied().fold(R::infinity(), R::min)
    }

    pub fn max(&self) -> R {
        self.table.iter().flatten().copied().fold(R::neg_infinity(), R::max)
    }
}

impl<R: Real> Default for RewardTable<R> {
    fn default() -> Self {
        Self::standard()
    }
}

/// One consumer's factored MDP.
///
/// Both conditional tables are indexed by `[progress][current health]`:
/// `health` gives the distribution of next health over
/// `(healthy, sick, critical)`; `obtention` gives the distribution of the
/// frontier resource's next status over `(have, had, need)` when bidding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "RawAgentModel<R>",
    bound(serialize = "R: Real + Serialize", deserialize = "R: Real + DeserializeOwned")
)]
pub struct AgentModel<R = f64> {
    condition: ConditionProfile,
    horizon: usize,
    health: Vec<[[R; 3]; 3]>,
    obtention: Vec<[[R; 3]; 3]>,
    reward: RewardTable<R>,
}

#[derive(Deserialize)]
#[serde(bound = "R: Real + DeserializeOwned")]
struct RawAgentModel<R> {
    condition: ConditionProfile,
    horizon: usize,
    health: Vec<[[R; 3]; 3]>,
    obtention: Vec<[[R; 3]; 3]>,
    reward: RewardTable<R>,
}

impl<R: Real> TryFrom<RawAgentModel<R>> for AgentModel<R> {
    type Error = Error;

    fn try_from(raw: RawAgentModel<R>) -> Result<Self> {
        AgentModel::new(raw.condition, raw.horizon, raw.health, raw.obtention, raw.reward)
    }
}

fn check_triple<R: Real>(t: &[R; 3], what: &str) -> Result<()> {
    let tol = R::lit(1e-12).max(R::epsilon() * R::lit(16.0));
    let sum: R = t.iter().copied().sum();
    if t.iter().any(|p| !p.is_finite() || *p < R::zero()) || (sum - R::one()).abs() > tol {
        return Err(Error::Parameter(format!("{what} triple {t:?} is not a distribution")));
    }
    Ok(())
}

impl<R: Real> AgentModel<R> {
    pub fn new(
        condition: ConditionProfile,
        horizon: usize,
        health: Vec<[[R; 3]; 3]>,
        obtention: Vec<[[R; 3]; 3]>,
        reward: RewardTable<R>,
    ) -> Result<Self> {
        let contexts = StatusProgress::count(condition.len());
        if health.len() != contexts || obtention.len() != contexts {
            return Err(Error::Parameter(format!(
                "expected {contexts} status contexts, got {} health and {} obtention",
                health.len(),
                obtention.len()
            )));
        }
        for rows in &health {
            rows.iter().try_for_each(|t| check_triple(t, "health"))?;
        }
        for rows in &obtention {
            for t in rows {
                check_triple(t, "obtention")?;
                if t[1] != R::zero() {
                    return Err(Error::Parameter(
                        "obtention cannot move a needed resource straight to had".into(),
                    ));
                }
            }
        }
        Ok(AgentModel { condition, horizon, health, obtention, reward })
    }

    /// Builds a model from closures over `(health, progress)`.
    ///
    /// `acquire` gives the probability that a bid for the frontier resource
    /// succeeds; it is ignored for contexts without a frontier.
    pub fn from_fn(
        condition: ConditionProfile,
        horizon: usize,
        mut health: impl FnMut(HealthState, StatusProgress) -> [R; 3],
        mut acquire: impl FnMut(HealthState, StatusProgress) -> R,
        reward: RewardTable<R>,
    ) -> Result<Self> {
        let m = condition.len();
        let mut h_rows = Vec::with_capacity(StatusProgress::count(m));
        let mut o_rows = Vec::with_capacity(StatusProgress::count(m));
        for p in StatusProgress::all(m) {
            h_rows.push(HealthState::ALL.map(|h| health(h, p)));
            o_rows.push(HealthState::ALL.map(|h| {
                if p.frontier_position(m).is_some() {
                    let a = acquire(h, p);
                    [a, R::zero(), R::one() - a]
                } else {
                    [R::zero(), R::zero(), R::one()]
                }
            }));
        }
        Self::new(condition, horizon, h_rows, o_rows, reward)
    }

    pub fn condition(&self) -> &ConditionProfile {
        &self.condition
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn pathway_len(&self) -> usize {
        self.condition.len()
    }

    pub fn reward(&self) -> &RewardTable<R> {
        &self.reward
    }

    pub fn with_horizon(mut self, horizon: usize) -> Self {
        self.horizon = horizon;
        self
    }

    /// `P(h' | h, r)` over `(healthy, sick, critical)`.
    pub fn health_row(&self, health: HealthState, progress: StatusProgress) -> &[R; 3] {
        &self.health[progress.0][health.severity()]
    }

    /// Distribution of the frontier resource's next status over `(have, had, need)`.
    pub fn obtention_row(&self, health: HealthState, progress: StatusProgress) -> &[R; 3] {
        &self.obtention[progress.0][health.severity()]
    }

    pub fn acquisition_probability(&self, health: HealthState, progress: StatusProgress) -> R {
        self.obtention_row(health, progress)[0]
    }

    pub fn cast<S: Real>(&self) -> AgentModel<S> {
        let c = |x: R| S::lit(x.as_f64());
        let tables = |v: &Vec<[[R; 3]; 3]>| v.iter().map(|rows| rows.map(|t| t.map(c))).collect();
        AgentModel {
            condition: self.condition.clone(),
            horizon: self.horizon,
            health: tables(&self.health),
            obtention: tables(&self.obtention),
            reward: RewardTable { table: self.reward.table.map(|r| r.map(c)) },
        }
    }
}
