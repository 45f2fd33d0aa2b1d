//! Independent oracles shared by the integration tests. They work on plain
//! status vectors and never call the crate's transition code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use aucmdp::domain::StatusProgress;
use aucmdp::mmdp::JointModel;
use aucmdp::priors::{sample_agent_model, PriorConfig};
use aucmdp::{AgentModel, AgentState, Allocation, HealthState, ResourceId, ResourceStatus};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use HealthState::*;
use ResourceStatus::*;

pub const HEALTHS: [HealthState; 3] = [Healthy, Sick, Critical];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Patient {
    Active(HealthState, Vec<ResourceStatus>),
    Gone,
}

impl Patient {
    pub fn admitted(m: usize) -> Self {
        Patient::Active(Sick, vec![Need; m])
    }

    pub fn to_state(&self, m: usize) -> AgentState {
        match self {
            Patient::Active(h, s) => AgentState::new(*h, s.clone()).unwrap(),
            Patient::Gone => AgentState::discharged(m),
        }
    }
}

/// Progress code of a monotone status vector: twice the had count, plus one
/// while a resource is being consumed.
pub fn progress_of(statuses: &[ResourceStatus]) -> StatusProgress {
    let had = statuses.iter().filter(|s| **s == Had).count();
    let have = statuses.iter().filter(|s| **s == Have).count();
    StatusProgress(2 * had + have)
}

/// Position of the next needed resource, when it may be requested now.
pub fn frontier_pos(statuses: &[ResourceStatus]) -> Option<usize> {
    if statuses.contains(&Have) {
        return None;
    }
    statuses.iter().position(|s| *s == Need)
}

/// Every monotone status vector of length `m`.
pub fn all_status_vectors(m: usize) -> Vec<Vec<ResourceStatus>> {
    let mut out = Vec::new();
    for had in 0..=m {
        out.push([vec![Had; had], vec![Need; m - had]].concat());
        if had < m {
            out.push([vec![Had; had], vec![Have], vec![Need; m - had - 1]].concat());
        }
    }
    out
}

pub fn all_patients(m: usize) -> Vec<Patient> {
    let mut out: Vec<Patient> = all_status_vectors(m)
        .into_iter()
        .flat_map(|s| HEALTHS.map(|h| Patient::Active(h, s.clone())))
        .filter(|p| !matches!(p, Patient::Active(Healthy, s) if s.iter().all(|x| *x == Had)))
        .collect();
    out.push(Patient::Gone);
    out
}

/// `(next patient, probability, reward)` for one step, `granted` saying
/// whether the frontier resource arrives.
pub fn successors(model: &AgentModel, p: &Patient, granted: bool) -> Vec<(Patient, f64, f64)> {
    let Patient::Active(h, s) = p else {
        return vec![(Patient::Gone, 1.0, 0.0)];
    };
    let mut next: Vec<ResourceStatus> = s.iter().map(|x| if *x == Have { Had } else { *x }).collect();
    if granted {
        let f = frontier_pos(s).expect("grant needs a frontier");
        next[f] = Have;
    }
    let row = model.health_row(*h, progress_of(s));
    HEALTHS
        .iter()
        .filter(|h2| row[h2.severity()] > 0.0)
        .map(|&h2| {
            let np = if h2 == Healthy && next.iter().all(|x| *x == Had) {
                Patient::Gone
            } else {
                Patient::Active(h2, next.clone())
            };
            (np, row[h2.severity()], model.reward().get(*h, h2))
        })
        .collect()
}

pub fn acquire_probability(model: &AgentModel, h: HealthState, s: &[ResourceStatus]) -> f64 {
    let row = model.obtention_row(h, progress_of(s));
    row[0] / (row[0] + row[2])
}

/// Exhaustive single-agent expectimax with memoisation on `(t, patient)`.
pub struct AgentOracle<'a> {
    pub model: &'a AgentModel,
    memo: HashMap<(usize, Patient), f64>,
}

impl<'a> AgentOracle<'a> {
    pub fn new(model: &'a AgentModel) -> Self {
        AgentOracle { model, memo: HashMap::new() }
    }

    fn expect(&mut self, t: usize, p: &Patient, granted: bool) -> f64 {
        successors(self.model, p, granted)
            .into_iter()
            .map(|(np, pr, r)| pr * (r + self.value(t + 1, &np)))
            .sum()
    }

    pub fn value(&mut self, t: usize, p: &Patient) -> f64 {
        if t >= self.model.horizon() || *p == Patient::Gone {
            return 0.0;
        }
        if let Some(v) = self.memo.get(&(t, p.clone())) {
            return *v;
        }
        let resign = self.expect(t, p, false);
        let mut best = resign;
        if let Patient::Active(h, s) = p {
            if frontier_pos(s).is_some() {
                let q = acquire_probability(self.model, *h, s);
                let bid = q * self.expect(t, p, true) + (1.0 - q) * resign;
                best = best.max(bid);
            }
        }
        self.memo.insert((t, p.clone()), best);
        best
    }

    /// Value of receiving the frontier resource next step minus not receiving it.
    pub fn regret(&mut self, t: usize, p: &Patient) -> f64 {
        self.expect(t, p, true) - self.expect(t, p, false)
    }
}

/// Exhaustive joint expectimax: resources arrive exactly as allocated.
pub struct JointOracle<'a> {
    pub model: &'a JointModel,
    pub pool: Vec<ResourceId>,
    memo: HashMap<(usize, Vec<Patient>), f64>,
}

impl<'a> JointOracle<'a> {
    pub fn new(model: &'a JointModel) -> Self {
        JointOracle { model, pool: model.resources().iter().copied().collect(), memo: HashMap::new() }
    }

    /// Every allocation: each resource to nobody or to one agent whose frontier it is.
    pub fn allocations(&self, ps: &[Patient]) -> Vec<Vec<bool>> {
        let agents = self.model.agents();
        let wants: Vec<Option<ResourceId>> = ps
            .iter()
            .zip(agents)
            .map(|(p, a)| match p {
                Patient::Active(_, s) => frontier_pos(s).map(|f| a.condition().pathway[f]),
                Patient::Gone => None,
            })
            .collect();
        let mut out = vec![vec![false; ps.len()]];
        for r in &self.pool {
            let mut next = Vec::new();
            for g in &out {
                next.push(g.clone());
                for i in 0..ps.len() {
                    if wants[i] == Some(*r) {
                        let mut g2 = g.clone();
                        g2[i] = true;
                        next.push(g2);
                    }
                }
            }
            out = next;
        }
        out
    }

    pub fn q(&mut self, t: usize, ps: &[Patient], grants: &[bool]) -> f64 {
        let per_agent: Vec<Vec<(Patient, f64, f64)>> = ps
            .iter()
            .zip(self.model.agents())
            .zip(grants)
            .map(|((p, a), g)| successors(a, p, *g))
            .collect();
        let mut total = 0.0;
        let mut idx = vec![0usize; ps.len()];
        loop {
            let mut prob = 1.0;
            let mut reward = 0.0;
            let mut next = Vec::with_capacity(ps.len());
            for (i, &k) in idx.iter().enumerate() {
                let (np, pr, r) = &per_agent[i][k];
                prob *= pr;
                reward += r;
                next.push(np.clone());
            }
            total += prob * (reward + self.value(t + 1, &next));
            let mut i = 0;
            while i < idx.len() {
                idx[i] += 1;
                if idx[i] < per_agent[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                return total;
            }
        }
    }

    pub fn value(&mut self, t: usize, ps: &[Patient]) -> f64 {
        if t >= self.model.horizon() || ps.iter().all(|p| *p == Patient::Gone) {
            return 0.0;
        }
        if let Some(v) = self.memo.get(&(t, ps.to_vec())) {
            return *v;
        }
        let best = self
            .allocations(ps)
            .iter()
            .map(|g| self.q(t, ps, g))
            .fold(f64::NEG_INFINITY, f64::max);
        self.memo.insert((t, ps.to_vec()), best);
        best
    }

    pub fn to_allocation(&self, ps: &[Patient], grants: &[bool]) -> Allocation {
        let pairs = grants.iter().enumerate().filter(|(_, g)| **g).map(|(i, _)| {
            let Patient::Active(_, s) = &ps[i] else { unreachable!() };
            (self.model.agents()[i].condition().pathway[frontier_pos(s).unwrap()], i)
        });
        Allocation::new(pairs).unwrap()
    }
}

/// Agents sampled from the standard prior with a fixed seed.
pub fn sampled_models(agents: usize, resources: usize, conditions: usize, len: usize, horizon: usize, seed: u64) -> Vec<AgentModel> {
    let cfg = PriorConfig::new(agents, resources, conditions, len, horizon);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let profiles = cfg.draw_conditions(&mut rng).unwrap();
    (0..agents).map(|_| sample_agent_model(&cfg, &profiles, &mut rng).unwrap()).collect()
}

/// Optimal assignment by enumerating every injective agent-to-resource map.
pub fn brute_force_welfare(rows: &[Vec<f64>]) -> f64 {
    fn go(rows: &[Vec<f64>], i: usize, used: &mut Vec<bool>) -> f64 {
        if i == rows.len() {
            return 0.0;
        }
        let mut best = go(rows, i + 1, used);
        for r in 0..used.len() {
            if !used[r] && rows[i][r] > 0.0 {
                used[r] = true;
                best = best.max(rows[i][r] + go(rows, i + 1, used));
                used[r] = false;
            }
        }
        best
    }
    let cols = rows.first().map_or(0, |r| r.len());
    go(rows, 0, &mut vec![false; cols])
}

pub fn counts<T: Ord + Clone>(xs: impl IntoIterator<Item = T>) -> BTreeMap<T, usize> {
    let mut m = BTreeMap::new();
    for x in xs {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}
