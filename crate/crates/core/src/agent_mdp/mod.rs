//! Per-consumer MDP: state enumeration, transitions, finite-horizon
//! backward induction and regret bids.

mod regret;
mod solve;
pub(crate) mod space;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::domain::ResourceId;

pub use regret::{bids, q_pair, regret};
pub use solve::{solve, solve_discounted, ValueTable};
pub use space::{enumerate_states, transition, StateSpace};

/// An agent's per-step request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AgentAction {
    Bid(ResourceId),
    Resign,
}

impl fmt::Display for AgentAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgentAction::Bid(r) => write!(f, "bid:{r}"),
            AgentAction::Resign => f.write_str("resign"),
        }
    }
}

/// What an agent reports to the auctioneer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BidMode {
    /// Value gained by receiving the resource versus not receiving it.
    #[default]
    Regret,
    /// Expected value of receiving the resource.
    Value,
}
