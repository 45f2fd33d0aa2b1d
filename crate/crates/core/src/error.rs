use num_bigint::BigUint;
use thiserror::Error;

use crate::domain::ResourceId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A status vector that is not a had-prefix, at most one have, then needs.
    #[error("malformed resource statuses: {0}")]
    Structural(String),

    #[error("bid on resource {resource} which is not the frontier of agent {agent}")]
    NotFrontier { agent: usize, resource: ResourceId },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("joint state space has {count} states, above the cap of {cap}")]
    SizeCap { count: BigUint, cap: u64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
