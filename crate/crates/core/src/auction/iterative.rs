use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use super::RegretMatrix;
use crate::domain::{Allocation, ResourceId};
use crate::scalar::Bid;

/// Which agent wins equal top bids on a resource, and which resource an agent
/// tries first among equal bids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowerIndex,
    HigherIndex,
}

impl TieBreak {
    /// `Less` when `a` should be preferred over `b`.
    fn order<T: Ord>(self, a: &T, b: &T) -> Ordering {
        match self {
            TieBreak::LowerIndex => a.cmp(b),
            TieBreak::HigherIndex => b.cmp(a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuctionRules {
    pub tie_break: TieBreak,
    /// Agents whose best remaining bid is `<= 0` resign instead of bidding.
    pub resign_non_positive: bool,
}

impl Default for AuctionRules {
    fn default() -> Self {
        AuctionRules { tie_break: TieBreak::LowerIndex, resign_non_positive: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuctionOutcome {
    pub allocation: Allocation,
    /// Bidding rounds that produced at least one bid.
    pub rounds: usize,
    /// Agents that left without a resource.
    pub resigned: BTreeSet<usize>,
}

/// Bidding state between rounds.
struct BidRound<B> {
    active: BTreeSet<usize>,
    remaining: BTreeSet<ResourceId>,
    /// Each agent's bids, best first.
    preferences: BTreeMap<usize, Vec<(ResourceId, B)>>,
    cursor: BTreeMap<usize, usize>,
}

impl<B: Bid> BidRound<B> {
    fn new(bids: &RegretMatrix<B>, tie: TieBreak) -> Self {
        let mut preferences = BTreeMap::new();
        for agent in bids.agents() {
            let mut row = bids.row(agent);
            row.sort_by(|(ra, a), (rb, b)| {
                b.partial_cmp(a).unwrap_or(Ordering::Equal).then_with(|| tie.order(ra, rb))
            });
            preferences.insert(agent, row);
        }
        BidRound {
            active: preferences.keys().copied().collect(),
            remaining: bids.resources(),
            cursor: preferences.keys().map(|a| (*a, 0)).collect(),
            preferences,
        }
    }

    /// The agent's best bid among unallocated resources, skipping taken ones.
    fn current(&mut self, agent: usize) -> Option<(ResourceId, B)> {
        let prefs = &self.preferences[&agent];
        let cursor = self.cursor.get_mut(&agent).expect("cursor per agent");
        while *cursor < prefs.len() && !self.remaining.contains(&prefs[*cursor].0) {
            *cursor += 1;
        }
        prefs.get(*cursor).copied()
    }
}

/// Iterative auction: every unassigned agent bids its highest remaining
/// resource, the top bidder on each resource wins it, and losers move on to
/// their next choice until no agent has anything left to bid.
pub fn iterative_auction_with<B: Bid>(bids: &RegretMatrix<B>, rules: AuctionRules) -> AuctionOutcome {
    let mut round = BidRound::new(bids, rules.tie_break);
    let mut assignment = Vec::new();
    let mut resigned = BTreeSet::new();
    let mut rounds = 0;
    loop {
        let mut offers: BTreeMap<ResourceId, (usize, B)> = BTreeMap::new();
        for agent in round.active.clone() {
            let offer = round.current(agent);
            let Some((resource, bid)) =
                offer.filter(|(_, b)| !rules.resign_non_positive || *b > B::zero())
            else {
                round.active.remove(&agent);
                resigned.insert(agent);
                continue;
            };
            let better = match offers.get(&resource) {
                None => true,
                Some((holder, best)) => match bid.partial_cmp(best) {
                    Some(Ordering::Greater) => true,
                    Some(Ordering::Equal) => rules.tie_break.order(&agent, holder) == Ordering::Less,
                    _ => false,
                },
            };
            if better {
                offers.insert(resource, (agent, bid));
            }
        }
        if offers.is_empty() {
            break;
        }
        rounds += 1;
        for (resource, (agent, _)) in offers {
            round.remaining.remove(&resource);
            round.active.remove(&agent);
            assignment.push((resource, agent));
        }
    }
    AuctionOutcome {
        allocation: Allocation::new(assignment).expect("each resource and agent assigned once"),
        rounds,
        resigned,
    }
}

/// [`iterative_auction_with`] under the default rules.
pub fn iterative_auction<B: Bid>(bids: &RegretMatrix<B>) -> Allocation {
    iterative_auction_with(bids, AuctionRules::default()).allocation
}

/// Grants only the single largest positive bid in the matrix.
pub fn one_round_auction<B: Bid>(bids: &RegretMatrix<B>) -> Allocation {
    let mut best: Option<(usize, ResourceId, B)> = None;
    for (agent, resource, bid) in bids.iter() {
        if bid > B::zero() && best.is_none_or(|(_, _, b)| bid > b) {
            best = Some((agent, resource, bid));
        }
    }
    Allocation::new(best.map(|(a, r, _)| (r, a))).expect("single pair")
}
