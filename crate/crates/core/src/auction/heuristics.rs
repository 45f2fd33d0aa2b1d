use std::collections::BTreeSet;

use crate::domain::{Allocation, HealthState, ResourceId};

/// What the priority heuristics see of an agent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub agent: usize,
    pub health: HealthState,
    pub criticality: f64,
    /// `None` for discharged agents and agents mid-consumption.
    pub frontier: Option<ResourceId>,
}

fn grant_in_order<'a>(order: impl IntoIterator<Item = &'a Candidate>) -> Allocation {
    let mut taken = BTreeSet::new();
    let pairs: Vec<_> = order
        .into_iter()
        .filter_map(|c| c.frontier.filter(|r| taken.insert(*r)).map(|r| (r, c.agent)))
        .collect();
    Allocation::new(pairs).expect("each resource granted once")
}

/// Sickest first: by health severity, then criticality, then lower index.
pub fn sickest_first(candidates: &[Candidate]) -> Allocation {
    let mut order: Vec<&Candidate> = candidates.iter().collect();
    order.sort_by(|a, b| {
        b.health
            .severity()
            .cmp(&a.health.severity())
            .then(b.criticality.total_cmp(&a.criticality))
            .then(a.agent.cmp(&b.agent))
    });
    grant_in_order(order)
}

/// First come, first served. Everyone arrives together, so arrival order is
/// agent index order.
pub fn fcfs(candidates: &[Candidate]) -> Allocation {
    let mut order: Vec<&Candidate> = candidates.iter().collect();
    order.sort_by_key(|c| c.agent);
    grant_in_order(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use HealthState::*;

    fn cand(agent: usize, health: HealthState, crit: f64, r: Option<u32>) -> Candidate {
        Candidate { agent, health, criticality: crit, frontier: r.map(ResourceId) }
    }

    #[test]
    fn critical_beats_sick() {
        let c = [cand(0, Sick, 2.0, Some(1)), cand(1, Critical, 1.0, Some(1))];
        assert_eq!(sickest_first(&c).agent_for(ResourceId(1)), Some(1));
    }

    #[test]
    fn criticality_then_index() {
        let c = [cand(0, Sick, 1.0, Some(1)), cand(1, Sick, 1.5, Some(1))];
        assert_eq!(sickest_first(&c).agent_for(ResourceId(1)), Some(1));
        let c = [cand(2, Sick, 1.5, Some(1)), cand(1, Sick, 1.5, Some(1))];
        assert_eq!(sickest_first(&c).agent_for(ResourceId(1)), Some(1));
    }

    #[test]
    fn disjoint_frontiers_all_served() {
        let c = [cand(0, Sick, 1.0, Some(1)), cand(1, Critical, 1.0, Some(2))];
        assert_eq!(sickest_first(&c).len(), 2);
        assert_eq!(fcfs(&c).len(), 2);
    }

    #[test]
    fn fcfs_index_order_and_skips() {
        let c = [cand(1, Critical, 2.0, Some(4)), cand(0, Sick, 1.0, Some(4))];
        assert_eq!(fcfs(&c).agent_for(ResourceId(4)), Some(0));
        let c = [cand(0, Healthy, 1.0, None), cand(1, Sick, 1.0, Some(4))];
        assert_eq!(fcfs(&c).agent_for(ResourceId(4)), Some(1));
    }
}
