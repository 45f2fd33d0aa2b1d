//! Multiagent resource allocation with coordinated per-consumer MDPs.
//!
//! Each consumer solves its own finite-horizon MDP over health and pathway
//! progress and bids its expected regret for the next resource; an iterative
//! auction turns the bids into a feasible joint allocation each step. The
//! crate also provides UCT on the full joint MDP, an exact joint DP oracle for
//! tiny instances, healthcare heuristics, sampled patient priors and an
//! experiment harness.

pub mod agent_mdp;
pub mod auction;
pub mod domain;
pub mod error;
pub mod harness;
pub mod mmdp;
pub mod priors;
pub mod scalar;

pub use agent_mdp::{AgentAction, BidMode};
pub use domain::{AgentState, Allocation, ConditionProfile, HealthState, JointState, ResourceId, ResourceStatus};
pub use error::{Error, Result};
pub use scalar::{Bid, Real};

/// Exact rational bids for matrix-level auction work.
pub type Rational = num_rational::Rational64;

pub type AgentModel = domain::AgentModel<f64>;
pub type AgentModelF32 = domain::AgentModel<f32>;
pub type RewardTable = domain::RewardTable<f64>;
pub type ValueTable = agent_mdp::ValueTable<f64>;
pub type ValueTableF32 = agent_mdp::ValueTable<f32>;
pub type RegretMatrix = auction::RegretMatrix<f64>;
pub type RegretMatrixExact = auction::RegretMatrix<Rational>;
