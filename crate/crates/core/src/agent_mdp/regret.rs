use super::{BidMode, StateSpace, ValueTable};
use crate::domain::{AgentModel, AgentState, HealthState, ResourceId, StatusProgress};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `(Q, Q_bar)`: expected continuation value at `t + 1` when the frontier
/// resource is received versus not received, with every other resource
/// status held fixed and health drawn from the current health row.
pub fn q_pair<R: Real>(
    model: &AgentModel<R>,
    vt: &ValueTable<R>,
    state: &AgentState,
    t: usize,
    resource: ResourceId,
) -> Result<(R, R)> {
    if t >= vt.horizon() {
        return Err(Error::Contract(format!("regret at t={t} needs t < horizon {}", vt.horizon())));
    }
    let space = StateSpace::new(model.pathway_len());
    let idx = space.index_of(state)?;
    let (health, progress) = space
        .decode(idx)
        .ok_or_else(|| Error::Contract("discharged agents do not bid".into()))?;
    let m = space.pathway_len();
    let frontier = progress.frontier_position(m).map(|p| model.condition().pathway[p]);
    if frontier != Some(resource) {
        return Err(Error::Contract(format!("resource {resource} is not the frontier")));
    }
    let row = model.health_row(health, progress);
    let expect = |p: StatusProgress| -> R {
        HealthState::ALL
            .iter()
            .map(|h2| row[h2.severity()] * vt.value_at(t + 1, space.index(*h2, p)))
            .sum()
    };
    Ok((expect(progress.next()), expect(progress)))
}

/// Expected regret for not receiving `resource` at step `t`: `Q - Q_bar`.
pub fn regret<R: Real>(
    model: &AgentModel<R>,
    vt: &ValueTable<R>,
    state: &AgentState,
    t: usize,
    resource: ResourceId,
) -> Result<R> {
    let (q, q_bar) = q_pair(model, vt, state, t, resource)?;
    Ok(q - q_bar)
}

/// The agent's bid list for step `t`: its frontier resource with either the
/// regret or the received-resource value. Empty when nothing can be bid on.
pub fn bids<R: Real>(
    model: &AgentModel<R>,
    vt: &ValueTable<R>,
    state: &AgentState,
    t: usize,
    mode: BidMode,
) -> Result<Vec<(ResourceId, R)>> {
    let Some(resource) = crate::domain::frontier(state, model.condition())? else {
        return Ok(Vec::new());
    };
    let (q, q_bar) = q_pair(model, vt, state, t, resource)?;
    let bid = match mode {
        BidMode::Regret => q - q_bar,
        BidMode::Value => q,
    };
    Ok(vec![(resource, bid)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agent_mdp::solve;
    use crate::domain::{ConditionProfile, ResourceStatus, RewardTable};

    fn profile(m: u32) -> ConditionProfile {
        ConditionProfile::new(0, 1.0, (0..m).map(ResourceId).collect()).unwrap()
    }

    /// Sick agent heals for certain once its single resource has been consumed
    /// and otherwise stays sick.
    fn healing_model(horizon: usize) -> AgentModel<f64> {
        AgentModel::from_fn(
            profile(1),
            horizon,
            |_, p| if p.0 >= 1 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] },
            |_, _| 1.0,
            RewardTable::standard(),
        )
        .unwrap()
    }

    #[test]
    fn regret_of_certain_healing() {
        // Two steps left: with the resource the agent holds it at t+1 and heals
        // on the last step (+15); without it it stays sick (0).
        let model = healing_model(2);
        let vt = solve(&model);
        let s = AgentState::admitted(1);
        assert_eq!(regret(&model, &vt, &s, 0, ResourceId(0)).unwrap(), 15.0);
        // one step left: V_{t+1} is terminal, so receiving changes nothing
        assert_eq!(regret(&model, &vt, &s, 1, ResourceId(0)).unwrap(), 0.0);
    }

    #[test]
    fn identical_continuations_give_zero() {
        let model = AgentModel::<f64>::from_fn(
            profile(2),
            6,
            |_, _| [0.0, 1.0, 0.0],
            |_, _| 0.5,
            RewardTable::standard(),
        )
        .unwrap();
        let vt = solve(&model);
        let s = AgentState::admitted(2);
        assert_eq!(regret(&model, &vt, &s, 0, ResourceId(0)).unwrap(), 0.0);
    }

    #[test]
    fn contract_errors() {
        let model = healing_model(3);
        let vt = solve(&model);
        let s = AgentState::admitted(1);
        assert!(regret(&model, &vt, &s, 0, ResourceId(5)).is_err());
        assert!(regret(&model, &vt, &s, 3, ResourceId(0)).is_err());
        let busy = AgentState::new(HealthState::Sick, vec![ResourceStatus::Have]).unwrap();
        assert!(regret(&model, &vt, &busy, 0, ResourceId(0)).is_err());
    }

    #[test]
    fn bid_lists() {
        let model = healing_model(3);
        let vt = solve(&model);
        assert!(bids(&model, &vt, &AgentState::discharged(1), 0, BidMode::Regret).unwrap().is_empty());
        let busy = AgentState::new(HealthState::Sick, vec![ResourceStatus::Have]).unwrap();
        assert!(bids(&model, &vt, &busy, 0, BidMode::Regret).unwrap().is_empty());
        let s = AgentState::admitted(1);
        let b = bids(&model, &vt, &s, 0, BidMode::Regret).unwrap();
        assert_eq!(b, vec![(ResourceId(0), regret(&model, &vt, &s, 0, ResourceId(0)).unwrap())]);
        let (q, _) = q_pair(&model, &vt, &s, 0, ResourceId(0)).unwrap();
        assert_eq!(bids(&model, &vt, &s, 0, BidMode::Value).unwrap(), vec![(ResourceId(0), q)]);
    }
}
