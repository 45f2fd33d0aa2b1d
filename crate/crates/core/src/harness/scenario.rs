use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mmdp::{Budget, UctConfig};
use crate::priors::PriorConfig;

/// Coordination method evaluated by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    /// Iterative auction on regret bids.
    RegIter,
    /// Single auction round on regret bids.
    Reg,
    /// Iterative auction on value bids.
    Iter,
    Fcfs,
    Sickest,
    Uct,
}

impl Method {
    pub const ALL: [Method; 6] = [Method::RegIter, Method::Reg, Method::Iter, Method::Fcfs, Method::Sickest, Method::Uct];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::RegIter => "aucmdp-regiter",
            Method::Reg => "aucmdp-reg",
            Method::Iter => "aucmdp-iter",
            Method::Fcfs => "fcfs",
            Method::Sickest => "sickest",
            Method::Uct => "uct",
        }
    }

    pub fn uses_value_tables(self) -> bool {
        matches!(self, Method::RegIter | Method::Reg | Method::Iter)
    }

    /// Comma separated list; `all` expands to every method.
    pub fn parse_list(s: &str) -> Result<Vec<Method>> {
        if s.trim() == "all" {
            return Ok(Method::ALL.to_vec());
        }
        s.split(',').map(|m| m.trim().parse()).collect()
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HorizonRule {
    Fixed(usize),
    /// `tau = k * N`.
    PerAgent(usize),
}

impl HorizonRule {
    pub fn resolve(self, agents: usize) -> usize {
        match self {
            HorizonRule::Fixed(t) => t,
            HorizonRule::PerAgent(k) => k * agents,
        }
    }
}

impl FromStr for HorizonRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("tau must be an integer or `<k>N`, got `{s}`"));
        match s.strip_suffix('N') {
            Some(k) => Ok(HorizonRule::PerAgent(k.trim().parse().map_err(|_| bad())?)),
            None => Ok(HorizonRule::Fixed(s.parse().map_err(|_| bad())?)),
        }
    }
}

/// An experiment: population prior, methods to compare and the trial protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub prior: PriorConfig,
    pub horizon_rule: HorizonRule,
    pub methods: Vec<Method>,
    pub trials: usize,
    pub repeats: usize,
    pub seed: u64,
    pub uct: UctConfig,
}

impl Scenario {
    pub fn new(agents: usize, resources: usize, conditions: usize, pathway_length: usize, horizon_rule: HorizonRule) -> Self {
        let prior = PriorConfig::new(agents, resources, conditions, pathway_length, horizon_rule.resolve(agents));
        Scenario {
            prior,
            horizon_rule,
            methods: Method::ALL[..5].to_vec(),
            trials: 100,
            repeats: 10,
            seed: 0,
            uct: UctConfig {
                budget: Budget::WallClock(Duration::from_millis(1000)),
                exploration: 15.0,
                rollout_horizon: None,
            },
        }
    }

    pub fn horizon(&self) -> usize {
        self.prior.horizon
    }

    pub fn with_agents(mut self, agents: usize) -> Self {
        self.prior.agents = agents;
        self.prior.horizon = self.horizon_rule.resolve(agents);
        self
    }

    pub fn with_methods(mut self, methods: &[Method]) -> Self {
        self.methods = methods.to_vec();
        self
    }

    pub fn with_protocol(mut self, trials: usize, repeats: usize, seed: u64) -> Self {
        self.trials = trials;
        self.repeats = repeats;
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.repeats == 0 {
            return Err(Error::Config("trials and repeats must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("no methods selected".into()));
        }
        self.prior.validate()
    }
}
