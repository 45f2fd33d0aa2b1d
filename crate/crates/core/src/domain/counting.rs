use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// `|H|^n * |R|^(m n)`: size of the joint state space for `n` consumers and
/// `m` resources.
pub fn count_joint_states(n: u32, m: u32, health_levels: u32, status_levels: u32) -> BigUint {
    BigUint::from(health_levels).pow(n) * BigUint::from(status_levels).pow(m * n)
}

/// `n! / (n - m)!`: ordered assignments of `m` resources to `n` consumers.
pub fn count_joint_actions(n: u32, m: u32) -> Result<BigUint> {
    if m > n {
        return Err(Error::Parameter(format!("{m} resources exceed {n} consumers")));
    }
    Ok(((n - m + 1)..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k)))
}
