use std::io::Write;

use super::space::{outcomes, Outcome, StateSpace};
use super::AgentAction;
use crate::domain::{AgentModel, AgentState, ResourceId};
use crate::error::Result;
use crate::scalar::Real;

/// Time-indexed optimal values `V_t(s)` for `t = 0..=horizon` and the
/// maximising action for every `t < horizon`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueTable<R = f64> {
    space: StateSpace,
    pathway: Vec<ResourceId>,
    discount: R,
    values: Vec<Vec<R>>,
    policy: Vec<Vec<AgentAction>>,
}

impl<R: Real> ValueTable<R> {
    pub fn horizon(&self) -> usize {
        self.policy.len()
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn discount(&self) -> R {
        self.discount
    }

    pub fn value(&self, t: usize, state: &AgentState) -> Result<R> {
        Ok(self.values[t][self.space.index_of(state)?])
    }

    pub fn value_at(&self, t: usize, index: usize) -> R {
        self.values[t][index]
    }

    pub fn action(&self, t: usize, state: &AgentState) -> Result<AgentAction> {
        Ok(self.policy[t][self.space.index_of(state)?])
    }

    /// Largest `|V_t(s) - max_a backup|` over all `t < horizon` and states.
    pub fn bellman_residual(&self, model: &AgentModel<R>) -> R {
        let mut buf = Vec::new();
        let mut worst = R::zero();
        for t in 0..self.horizon() {
            for s in 0..self.space.len() {
                let (best, _) = backup(model, &self.space, &self.pathway, &self.values[t + 1], self.discount, s, &mut buf);
                worst = worst.max((best - self.values[t][s]).abs());
            }
        }
        worst
    }

    /// Debug dump with columns `t,health,statuses,value,argmax_action`.
    ///
    /// The discharged state is written with `discharged` in the statuses column.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "health", "statuses", "value", "argmax_action"])?;
        for (t, row) in self.values.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                let state = self.space.state(i);
                let statuses = if state.is_discharged() {
                    "discharged".to_string()
                } else {
                    crate::domain::state::join_statuses(state.statuses())
                };
                let action = self.policy.get(t).map(|p| p[i].to_string()).unwrap_or_default();
                w.write_record([
                    t.to_string(),
                    state.health().to_string(),
                    statuses,
                    v.to_string(),
                    action,
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Best one-step backup of state `s` against `next` values. Ties favour bidding.
fn backup<R: Real>(
    model: &AgentModel<R>,
    space: &StateSpace,
    pathway: &[ResourceId],
    next: &[R],
    discount: R,
    s: usize,
    buf: &mut Vec<Outcome<R>>,
) -> (R, AgentAction) {
    let Some((health, progress)) = space.decode(s) else {
        return (R::zero(), AgentAction::Resign);
    };
    let mut best: Option<(R, AgentAction)> = None;
    let frontier = progress.frontier_position(space.pathway_len()).map(|p| pathway[p]);
    let candidates = frontier.map(AgentAction::Bid).into_iter().chain([AgentAction::Resign]);
    for action in candidates {
        let acquire = match action {
            AgentAction::Bid(_) => model.acquisition_probability(health, progress),
            AgentAction::Resign => R::zero(),
        };
        outcomes(model, space, health, progress, acquire, buf);
        let q: R = buf.iter().map(|o| o.prob * (o.reward + discount * next[o.next])).sum();
        if best.is_none_or(|(b, _)| q > b) {
            best = Some((q, action));
        }
    }
    best.expect("resign is always available")
}

/// Undiscounted finite-horizon backward induction.
pub fn solve<R: Real>(model: &AgentModel<R>) -> ValueTable<R> {
    solve_discounted(model, R::one())
}

/// Backward induction with `V_t(s) = max_a sum_s' P(s'|s,a) [Phi + discount V_{t+1}(s')]`
/// and `V_horizon = 0`.
pub fn solve_discounted<R: Real>(model: &AgentModel<R>, discount: R) -> ValueTable<R> {
    assert!(discount > R::zero() && discount <= R::one(), "discount must be in (0, 1]");
    let space = StateSpace::new(model.pathway_len());
    let pathway = model.condition().pathway.clone();
    let horizon = model.horizon();
    let mut values = vec![vec![R::zero(); space.len()]; horizon + 1];
    let mut policy = vec![vec![AgentAction::Resign; space.len()]; horizon];
    let mut buf = Vec::with_capacity(6);
    for t in (0..horizon).rev() {
        let (head, tail) = values.split_at_mut(t + 1);
        let next = &tail[0];
        for s in 0..space.len() {
            let (v, a) = backup(model, &space, &pathway, next, discount, s, &mut buf);
            head[t][s] = v;
            policy[t][s] = a;
        }
    }
    ValueTable { space, pathway, discount, values, policy }
}
