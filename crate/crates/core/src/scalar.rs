//! Scalar abstractions.
//!
//! Model probabilities, values and regrets are generic over [`Real`]
//! (`f32` or `f64`). Auction bids only need ordered ring arithmetic, so the
//! allocators accept any [`Bid`], including integers and exact rationals.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Floating point scalar used by the MDP solvers and simulators.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal, panicking only for values the type cannot hold.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// A bid value that auctions and matchings can compare and add.
pub trait Bid: Copy + PartialOrd + Num + Debug + Send + Sync {}

impl<T> Bid for T where T: Copy + PartialOrd + Num + Debug + Send + Sync {}

/// Sums bids without requiring `Sum`.
pub fn total<B: Bid>(values: impl IntoIterator<Item = B>) -> B {
    values.into_iter().fold(B::zero(), |acc, x| acc + x)
}
