//! Generative prior over patient models: conditions with criticalities and
//! linear pathways, Dirichlet-distributed health progression and resource
//! obtention tables, and the fixed reward table.

mod alpha;
mod dirichlet;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{AgentModel, ConditionProfile, HealthState, ResourceId, RewardTable, StatusProgress};
use crate::error::{Error, Result};

pub use alpha::{alpha_health, alpha_resource};
pub use dirichlet::sample_dirichlet;

/// Parameters of the patient population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriorConfig {
    /// Number of agents `N`; it also weights the obtention prior.
    pub agents: usize,
    /// Size `M` of the global resource pool.
    pub resources: usize,
    /// Resources required by every condition's pathway.
    pub pathway_length: usize,
    pub horizon: usize,
    /// Condition weights; one entry per condition.
    pub condition_weights: Vec<f64>,
    /// Criticality of each condition, in `[1, 2]`.
    pub criticalities: Vec<f64>,
    pub reward: RewardTable<f64>,
}

impl PriorConfig {
    /// `conditions` evenly weighted with criticalities evenly spaced on `[1, 2]`.
    pub fn new(agents: usize, resources: usize, conditions: usize, pathway_length: usize, horizon: usize) -> Self {
        let criticalities = (0..conditions)
            .map(|d| if conditions == 1 { 1.5 } else { 1.0 + d as f64 / (conditions - 1) as f64 })
            .collect();
        PriorConfig {
            agents,
            resources,
            pathway_length,
            horizon,
            condition_weights: vec![1.0 / conditions.max(1) as f64; conditions],
            criticalities,
            reward: RewardTable::standard(),
        }
    }

    pub fn conditions(&self) -> usize {
        self.condition_weights.len()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.condition_weights.len();
        if d == 0 || self.criticalities.len() != d {
            return Err(Error::Config(format!(
                "{d} condition weights but {} criticalities",
                self.criticalities.len()
            )));
        }
        let sum: f64 = self.condition_weights.iter().sum();
        if self.condition_weights.iter().any(|w| *w < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config("condition weights must be a distribution".into()));
        }
        if self.pathway_length == 0 || self.pathway_length > self.resources {
            return Err(Error::Config(format!(
                "pathway length {} must be in 1..={}",
                self.pathway_length, self.resources
            )));
        }
        if self.agents == 0 {
            return Err(Error::Config("need at least one agent".into()));
        }
        if self.horizon == 0 {
            return Err(Error::Config("horizon must be at least 1".into()));
        }
        if self.criticalities.iter().any(|c| !(1.0..=2.0).contains(c)) {
            return Err(Error::Config("criticalities must lie in [1, 2]".into()));
        }
        Ok(())
    }

    /// One profile per condition, each with a uniformly random ordered subset
    /// of the resource pool as its pathway.
    pub fn draw_conditions<G: Rng + ?Sized>(&self, rng: &mut G) -> Result<Vec<ConditionProfile>> {
        self.validate()?;
        let mut pool: Vec<ResourceId> = (0..self.resources as u32).map(ResourceId).collect();
        self.criticalities
            .iter()
            .enumerate()
            .map(|(d, &c)| {
                pool.shuffle(rng);
                ConditionProfile::new(d, c, pool[..self.pathway_length].to_vec())
            })
            .collect()
    }

    pub fn draw_condition_index<G: Rng + ?Sized>(&self, rng: &mut G) -> Result<usize> {
        let dist = WeightedIndex::new(&self.condition_weights)
            .map_err(|e| Error::Config(format!("condition weights: {e}")))?;
        Ok(dist.sample(rng))
    }
}

/// Draws a condition and then a full patient model for it.
///
/// Health progression: one `omega ~ Dir(alpha_health)` per status vector,
/// laid out as `(w1, w2, w3)` for sick, `(w1, w3, w2)` for healthy and
/// `(w2, w1, w3)` for critical. Obtention: one `Dir(alpha_resource)` draw per
/// `(status vector, health)` with a frontier, renormalised over `have`/`need`.
pub fn sample_agent_model<G: Rng + ?Sized>(
    config: &PriorConfig,
    conditions: &[ConditionProfile],
    rng: &mut G,
) -> Result<AgentModel<f64>> {
    let d = config.draw_condition_index(rng)?;
    let condition = conditions
        .get(d)
        .ok_or_else(|| Error::Config(format!("condition {d} has no profile")))?
        .clone();
    sample_model_for(config, condition, rng)
}

/// Samples transition tables for a fixed condition.
pub fn sample_model_for<G: Rng + ?Sized>(
    config: &PriorConfig,
    condition: ConditionProfile,
    rng: &mut G,
) -> Result<AgentModel<f64>> {
    let m = condition.len();
    let mut health = Vec::with_capacity(StatusProgress::count(m));
    let mut obtention = Vec::with_capacity(StatusProgress::count(m));
    for p in StatusProgress::all(m) {
        let statuses = p.statuses(m);
        let [w1, w2, w3] = sample_dirichlet(alpha_health(condition.criticality, &statuses)?, rng)?;
        // rows in severity order: healthy, sick, critical
        health.push([[w1, w3, w2], [w1, w2, w3], [w2, w1, w3]]);

        let mut rows = [[0.0, 0.0, 1.0]; 3];
        if let Some(target) = p.frontier_position(m) {
            for h in HealthState::ALL {
                let alpha = alpha_resource(config.agents, h, &statuses, target)?;
                let [have, _, need] = sample_dirichlet(alpha, rng)?;
                let acquire = have / (have + need);
                rows[h.severity()] = [acquire, 0.0, 1.0 - acquire];
            }
        }
        obtention.push(rows);
    }
    AgentModel::new(condition, config.horizon, health, obtention, config.reward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn default_criticalities_span_range() {
        let c = PriorConfig::new(10, 4, 4, 4, 100);
        assert_eq!(c.criticalities, vec![1.0, 1.0 + 1.0 / 3.0, 1.0 + 2.0 / 3.0, 2.0]);
        assert_eq!(c.condition_weights, vec![0.25; 4]);
        assert_eq!(PriorConfig::new(1, 1, 1, 1, 1).criticalities, vec![1.5]);
    }

    #[test]
    fn conditions_have_distinct_pathways_from_pool() {
        let c = PriorConfig::new(10, 6, 5, 3, 20);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let conds = c.draw_conditions(&mut rng).unwrap();
        assert_eq!(conds.len(), 5);
        for p in &conds {
            assert_eq!(p.len(), 3);
            assert!(p.pathway.iter().all(|r| (r.0 as usize) < 6));
        }
    }

    #[test]
    fn invalid_configs_rejected() {
        let mut c = PriorConfig::new(10, 4, 4, 5, 100);
        assert!(c.validate().is_err());
        c.pathway_length = 4;
        assert!(c.validate().is_ok());
        c.condition_weights = vec![0.5, 0.5, 0.5, 0.5];
        assert!(c.validate().is_err());
    }

    #[test]
    fn health_rows_are_permutations() {
        let c = PriorConfig::new(6, 4, 2, 3, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let conds = c.draw_conditions(&mut rng).unwrap();
        let model = sample_agent_model(&c, &conds, &mut rng).unwrap();
        for p in StatusProgress::all(3) {
            let sick = *model.health_row(HealthState::Sick, p);
            let healthy = *model.health_row(HealthState::Healthy, p);
            let critical = *model.health_row(HealthState::Critical, p);
            assert_eq!(healthy, [sick[0], sick[2], sick[1]]);
            assert_eq!(critical, [sick[1], sick[0], sick[2]]);
            let acq = model.acquisition_probability(HealthState::Sick, p);
            if p.frontier_position(3).is_some() {
                assert!(acq > 0.0 && acq < 1.0);
            } else {
                assert_eq!(acq, 0.0);
            }
        }
        assert_eq!(model.reward().get(HealthState::Sick, HealthState::Healthy), 15.0);
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let c = PriorConfig::new(6, 4, 2, 3, 10);
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let conds = c.draw_conditions(&mut rng).unwrap();
            sample_agent_model(&c, &conds, &mut rng).unwrap()
        };
        assert_eq!(draw(5), draw(5));
        assert_ne!(draw(5), draw(6));
    }
}
