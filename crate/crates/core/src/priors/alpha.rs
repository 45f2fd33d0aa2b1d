use crate::domain::{HealthState, ResourceStatus, StatusProgress};
use crate::error::{Error, Result};

/// Dirichlet concentration over next health `(healthy, sick, critical)`.
///
/// Every resource had: `(12, 4c, 2c)`. Every resource had or have (one in
/// consumption): `(12, 4c, 4c)`. Nothing obtained yet: `(4, 4c, 10c)`.
/// Anything in between: `(4, 10c, 10c)`.
pub fn alpha_health(criticality: f64, statuses: &[ResourceStatus]) -> Result<[f64; 3]> {
    let m = statuses.len();
    if m == 0 {
        return Err(Error::Structural("pathway must be nonempty".into()));
    }
    let p = StatusProgress::from_statuses(statuses)?;
    let c = criticality;
    Ok(if p.is_complete(m) {
        [12.0, 4.0 * c, 2.0 * c]
    } else if p.0 == 2 * m - 1 {
        [12.0, 4.0 * c, 4.0 * c]
    } else if p.is_untouched() {
        [4.0, 4.0 * c, 10.0 * c]
    } else {
        [4.0, 10.0 * c, 10.0 * c]
    })
}

/// Dirichlet concentration over the next status `(have, had, need)` of the
/// pathway resource at position `target`, for a system with `agents` agents.
///
/// With `u` the urgency weight of `health` (1, 5, 10): every resource had or
/// have gives `(10u, u, N)`; an unmet predecessor of `target` gives
/// `(u, 5u, 10N)`; every other context, including the fresh all-need chain,
/// gives `(u, u, N)`.
pub fn alpha_resource(
    agents: usize,
    health: HealthState,
    statuses: &[ResourceStatus],
    target: usize,
) -> Result<[f64; 3]> {
    StatusProgress::from_statuses(statuses)?;
    if target >= statuses.len() {
        return Err(Error::Parameter(format!("target {target} outside a pathway of {}", statuses.len())));
    }
    let u = health.urgency();
    let n = agents as f64;
    let settled = statuses.iter().all(|s| *s != ResourceStatus::Need);
    let blocked = target > 0 && statuses[target - 1] == ResourceStatus::Need;
    Ok(if settled {
        [10.0 * u, u, n]
    } else if blocked {
        [u, 5.0 * u, 10.0 * n]
    } else {
        [u, u, n]
    })
}
