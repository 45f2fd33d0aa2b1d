use super::actions::JointActionSpace;
use super::JointModel;
use crate::agent_mdp::space::{outcomes, Outcome};
use crate::domain::{count_joint_states, Allocation, JointState, ResourceId};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default refusal threshold on `|H|^N |R|^(MN)`.
pub const DEFAULT_STATE_CAP: u64 = 1_000_000;

/// Exact joint values `V_t(S)` over the product of the agents' state spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct JointValueTable<R = f64> {
    radices: Vec<usize>,
    values: Vec<Vec<R>>,
    policy: Vec<Vec<u128>>,
}

impl<R: Real> JointValueTable<R> {
    pub fn horizon(&self) -> usize {
        self.policy.len()
    }

    pub fn states(&self) -> usize {
        self.radices.iter().product()
    }

    fn index(&self, compact: &[u8]) -> usize {
        compact.iter().zip(&self.radices).fold(0, |acc, (i, r)| acc * r + *i as usize)
    }

    pub fn value(&self, model: &JointModel<R>, state: &JointState) -> Result<R> {
        let t = self.check_time(state.time, true)?;
        Ok(self.values[t][self.index(&model.compact(state)?)])
    }

    pub fn optimal_action(&self, model: &JointModel<R>, state: &JointState) -> Result<Allocation> {
        let t = self.check_time(state.time, false)?;
        let compact = model.compact(state)?;
        let space = JointActionSpace::from_compact(model, &compact);
        Ok(space.decode(self.policy[t][self.index(&compact)]))
    }

    /// Action values at `state`, in feasible-action enumeration order.
    pub fn q_values(&self, model: &JointModel<R>, state: &JointState) -> Result<Vec<(Allocation, R)>> {
        let t = self.check_time(state.time, false)?;
        let compact = model.compact(state)?;
        let space = JointActionSpace::from_compact(model, &compact);
        let mut ctx = Backup::new(model);
        Ok((0..space.count())
            .map(|a| {
                let q = ctx.q(model, &compact, &space, a, &self.radices, &self.values[t + 1]);
                (space.decode(a), q)
            })
            .collect())
    }

    fn check_time(&self, t: usize, inclusive: bool) -> Result<usize> {
        let limit = if inclusive { self.horizon() } else { self.horizon().saturating_sub(1) };
        if t > limit || (!inclusive && self.horizon() == 0) {
            return Err(Error::Contract(format!("time {t} outside the solved horizon {}", self.horizon())));
        }
        Ok(t)
    }
}

struct Backup<R> {
    grants: Vec<Option<ResourceId>>,
    per_agent: Vec<Vec<Outcome<R>>>,
}

impl<R: Real> Backup<R> {
    fn new(model: &JointModel<R>) -> Self {
        Backup { grants: vec![None; model.len()], per_agent: vec![Vec::new(); model.len()] }
    }

    fn q(
        &mut self,
        model: &JointModel<R>,
        compact: &[u8],
        space: &JointActionSpace,
        action: u128,
        radices: &[usize],
        next: &[R],
    ) -> R {
        space.decode_into(action, &mut self.grants);
        for (i, (&idx, sp)) in compact.iter().zip(model.spaces()).enumerate() {
            let out = &mut self.per_agent[i];
            match sp.decode(idx as usize) {
                None => {
                    out.clear();
                    out.push(Outcome { next: idx as usize, prob: R::one(), reward: R::zero() });
                }
                Some((h, p)) => {
                    let acquire = if self.grants[i].is_some() { R::one() } else { R::zero() };
                    outcomes(&model.agents()[i], sp, h, p, acquire, out);
                }
            }
        }
        expand(&self.per_agent, radices, next, 0, 0, R::one(), R::zero())
    }
}

/// Sum over the product of per-agent outcomes of `prob * (reward + V(next))`.
fn expand<R: Real>(
    per_agent: &[Vec<Outcome<R>>],
    radices: &[usize],
    next: &[R],
    agent: usize,
    index: usize,
    prob: R,
    reward: R,
) -> R {
    if agent == per_agent.len() {
        return prob * (reward + next[index]);
    }
    per_agent[agent]
        .iter()
        .map(|o| {
            expand(
                per_agent,
                radices,
                next,
                agent + 1,
                index * radices[agent] + o.next,
                prob * o.prob,
                reward + o.reward,
            )
        })
        .sum()
}

/// Exact finite-horizon backward induction on the joint MDP, refusing models
/// whose nominal state count `3^N 3^(MN)` exceeds `cap`.
pub fn joint_value_iteration<R: Real>(model: &JointModel<R>, cap: u64) -> Result<JointValueTable<R>> {
    let n = model.len() as u32;
    let m = model.resources().len() as u32;
    let count = count_joint_states(n, m, 3, 3);
    if count > cap.into() {
        return Err(Error::SizeCap { count, cap });
    }
    let radices: Vec<usize> = model.spaces().iter().map(|s| s.len()).collect();
    let total: usize = radices.iter().product();
    let horizon = model.horizon();
    let mut values = vec![vec![R::zero(); total]; horizon + 1];
    let mut policy = vec![vec![0u128; total]; horizon];
    let mut ctx = Backup::new(model);
    let mut compact = vec![0u8; radices.len()];
    for t in (0..horizon).rev() {
        let (head, tail) = values.split_at_mut(t + 1);
        let next = &tail[0];
        for s in 0..total {
            let mut rest = s;
            for (c, r) in compact.iter_mut().zip(&radices).rev() {
                *c = (rest % r) as u8;
                rest /= r;
            }
            if model.all_discharged(&compact) {
                continue;
            }
            let space = JointActionSpace::from_compact(model, &compact);
            let mut best = (R::neg_infinity(), 0u128);
            for a in 0..space.count() {
                let q = ctx.q(model, &compact, &space, a, &radices, next);
                if q > best.0 {
                    best = (q, a);
                }
            }
            head[t][s] = best.0;
            policy[t][s] = best.1;
        }
    }
    Ok(JointValueTable { radices, values, policy })
}
