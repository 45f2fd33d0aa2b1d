use crate::agent_mdp::AgentAction;
use crate::domain::{AgentModel, AgentState, HealthState, StatusProgress};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense indexing of one agent's states: `3 * progress + severity`, with the
/// discharged state last.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSpace {
    pathway_len: usize,
}

impl StateSpace {
    pub fn new(pathway_len: usize) -> Self {
        assert!(pathway_len > 0, "pathway must be nonempty");
        StateSpace { pathway_len }
    }

    pub fn pathway_len(&self) -> usize {
        self.pathway_len
    }

    /// `3 (2m + 1) + 1`.
    pub fn len(&self) -> usize {
        3 * StatusProgress::count(self.pathway_len) + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn discharged(&self) -> usize {
        self.len() - 1
    }

    pub fn index(&self, health: HealthState, progress: StatusProgress) -> usize {
        3 * progress.0 + health.severity()
    }

    pub fn index_of(&self, state: &AgentState) -> Result<usize> {
        if state.pathway_len() != self.pathway_len {
            return Err(Error::Structural(format!(
                "{} statuses for a pathway of length {}",
                state.pathway_len(),
                self.pathway_len
            )));
        }
        Ok(if state.is_discharged() {
            self.discharged()
        } else {
            self.index(state.health(), state.progress())
        })
    }

    /// `None` for the discharged state.
    pub fn decode(&self, index: usize) -> Option<(HealthState, StatusProgress)> {
        (index < self.discharged()).then(|| {
            (HealthState::from_severity(index % 3).expect("mod 3"), StatusProgress(index / 3))
        })
    }

    pub fn state(&self, index: usize) -> AgentState {
        match self.decode(index) {
            Some((h, p)) => AgentState::from_progress(h, self.pathway_len, p),
            None => AgentState::discharged(self.pathway_len),
        }
    }
}

/// Every pathway-monotone state of the model, in [`StateSpace`] index order.
pub fn enumerate_states<R: Real>(model: &AgentModel<R>) -> Vec<AgentState> {
    let space = StateSpace::new(model.pathway_len());
    (0..space.len()).map(|i| space.state(i)).collect()
}

/// One successor: next state index, probability and the reward collected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Outcome<R> {
    pub next: usize,
    pub prob: R,
    pub reward: R,
}

/// Successors of a non-discharged `(health, progress)` when the frontier
/// resource is obtained with probability `acquire` (0 when resigning).
/// A transition into healthy with every resource had lands in the
/// discharged state.
pub(crate) fn outcomes<R: Real>(
    model: &AgentModel<R>,
    space: &StateSpace,
    health: HealthState,
    progress: StatusProgress,
    acquire: R,
    out: &mut Vec<Outcome<R>>,
) {
    out.clear();
    let m = space.pathway_len();
    let mut resource = [(progress, R::one()), (progress, R::zero())];
    if progress.in_progress() {
        resource[0].0 = progress.next();
    } else if progress.frontier_position(m).is_some() {
        resource = [(progress.next(), acquire), (progress, R::one() - acquire)];
    }
    let row = model.health_row(health, progress);
    for (next_p, p_res) in resource {
        if p_res == R::zero() {
            continue;
        }
        for h2 in HealthState::ALL {
            let p_h = row[h2.severity()];
            if p_h == R::zero() {
                continue;
            }
            let next = if h2 == HealthState::Healthy && next_p.is_complete(m) {
                space.discharged()
            } else {
                space.index(h2, next_p)
            };
            out.push(Outcome { next, prob: p_res * p_h, reward: model.reward().get(health, h2) });
        }
    }
}

/// Distribution over successor states of `state` under `action`.
pub fn transition<R: Real>(
    model: &AgentModel<R>,
    state: &AgentState,
    action: AgentAction,
) -> Result<Vec<(AgentState, R)>> {
    let space = StateSpace::new(model.pathway_len());
    let idx = space.index_of(state)?;
    let Some((health, progress)) = space.decode(idx) else {
        return match action {
            AgentAction::Resign => Ok(vec![(state.clone(), R::one())]),
            AgentAction::Bid(r) => Err(Error::Contract(format!("discharged agent bid on {r}"))),
        };
    };
    let acquire = match action {
        AgentAction::Resign => R::zero(),
        AgentAction::Bid(r) => {
            let pos = progress.frontier_position(space.pathway_len());
            if pos.map(|p| model.condition().pathway[p]) != Some(r) {
                return Err(Error::Contract(format!("bid on non-frontier resource {r}")));
            }
            model.acquisition_probability(health, progress)
        }
    };
    let mut buf = Vec::new();
    outcomes(model, &space, health, progress, acquire, &mut buf);
    Ok(buf.into_iter().map(|o| (space.state(o.next), o.prob)).collect())
}
