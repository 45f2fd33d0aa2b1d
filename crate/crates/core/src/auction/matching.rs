use super::RegretMatrix;
use crate::domain::{Allocation, ResourceId};
use crate::scalar::Bid;

/// Maximum-total-bid assignment. Pairs with non-positive bids are never used,
/// so agents may stay unassigned.
///
/// Runs the potential-based Hungarian method on the square padding of the
/// matrix with costs `-max(bid, 0)`.
pub fn optimal_matching<B: Bid>(bids: &RegretMatrix<B>) -> Allocation {
    let agents: Vec<usize> = bids.agents().into_iter().collect();
    let resources: Vec<ResourceId> = bids.resources().into_iter().collect();
    let k = agents.len().max(resources.len());
    if k == 0 {
        return Allocation::empty();
    }
    let zero = B::zero();
    let mut cost = vec![vec![zero; k + 1]; k + 1];
    for (i, a) in agents.iter().enumerate() {
        for (j, r) in resources.iter().enumerate() {
            if let Some(b) = bids.get(*a, *r).filter(|b| *b > zero) {
                cost[i + 1][j + 1] = zero - b;
            }
        }
    }
    let row_of_col = hungarian_min(&cost, k);
    let pairs = (1..=k).filter_map(|j| {
        let i = row_of_col[j];
        let (a, r) = (*agents.get(i - 1)?, *resources.get(j - 1)?);
        bids.get(a, r).filter(|b| *b > zero).map(|_| (r, a))
    });
    Allocation::new(pairs).expect("matching is injective")
}

/// Min-cost perfect assignment on a 1-indexed `k x k` matrix. Returns
/// `row_of_col[j]` for `j in 1..=k`.
fn hungarian_min<B: Bid>(cost: &[Vec<B>], k: usize) -> Vec<usize> {
    let zero = B::zero();
    let mut u = vec![zero; k + 1];
    let mut v = vec![zero; k + 1];
    let mut row_of_col = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    for i in 1..=k {
        row_of_col[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<B>> = vec![None; k + 1];
        let mut used = vec![false; k + 1];
        loop {
            used[j0] = true;
            let i0 = row_of_col[j0];
            let mut delta: Option<B> = None;
            let mut j1 = 0;
            for j in 1..=k {
                if used[j] {
                    continue;
                }
                let cur = cost[i0][j] - u[i0] - v[j];
                if minv[j].is_none_or(|m| cur < m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].expect("set above");
                if delta.is_none_or(|d| mj < d) {
                    delta = Some(mj);
                    j1 = j;
                }
            }
            let delta = delta.expect("an unused column remains");
            for j in 0..=k {
                if used[j] {
                    u[row_of_col[j]] = u[row_of_col[j]] + delta;
                    v[j] = v[j] - delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m = *m - delta;
                }
            }
            j0 = j1;
            if row_of_col[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    row_of_col
}
