//! Coordination mechanisms that turn bids or priorities into a feasible
//! [`Allocation`](crate::domain::Allocation) each step.

mod heuristics;
mod iterative;
mod matching;
mod matrix;

pub use heuristics::{fcfs, sickest_first, Candidate};
pub use iterative::{iterative_auction, iterative_auction_with, one_round_auction, AuctionOutcome, AuctionRules, TieBreak};
pub use matching::optimal_matching;
pub use matrix::RegretMatrix;
