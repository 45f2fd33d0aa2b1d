//! Experiment harness: scenarios, seeded trials, method comparisons, sweeps
//! and CSV output.

mod config_file;
mod episode;
mod report;
mod scenario;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use config_file::{load_scenario, parse_scenario};
pub use episode::{
    repeat_conditions, repeat_seed, run_episode, run_trial, trial_models, trial_seed, Audit, EpisodeOutcome, TrialResult,
};
pub use report::{write_results_csv, write_sweep_csv, Stats, SweepRow, RESULTS_HEADER, SWEEP_HEADER};
pub use scenario::{HorizonRule, Method, Scenario};

/// Per-method aggregate over all repeats and trials.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSummary {
    pub method: Method,
    /// Average reward per patient, one entry per repeat.
    pub per_repeat: Vec<Stats>,
    pub overall: Stats,
    pub mean_wall_clock_ms: f64,
    pub audit: Audit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    /// Ordered by method, then repeat, then trial.
    pub results: Vec<TrialResult>,
    pub summaries: Vec<MethodSummary>,
}

impl ExperimentReport {
    pub fn summary(&self, method: Method) -> Option<&MethodSummary> {
        self.summaries.iter().find(|s| s.method == method)
    }
}

/// Runs every method on `trials x repeats` sampled episodes. Trials run in
/// parallel; results do not depend on the thread count.
pub fn run_experiment(scenario: &Scenario) -> Result<ExperimentReport> {
    scenario.validate()?;
    let conditions: Vec<_> = (0..scenario.repeats).map(|r| repeat_conditions(scenario, r)).collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize, usize)> = (0..scenario.methods.len())
        .flat_map(|m| (0..scenario.repeats).flat_map(move |r| (0..scenario.trials).map(move |t| (m, r, t))))
        .collect();
    let results: Vec<TrialResult> = jobs
        .par_iter()
        .map(|&(m, r, t)| run_trial(scenario, scenario.methods[m], &conditions[r], r, t))
        .collect::<Result<_>>()?;
    let summaries = scenario
        .methods
        .iter()
        .map(|&method| {
            let mine: Vec<&TrialResult> = results.iter().filter(|x| x.method == method).collect();
            let per_repeat = (0..scenario.repeats)
                .map(|r| Stats::of(mine.iter().filter(|x| x.repeat == r).map(|x| x.avg_reward_per_patient)))
                .collect();
            let mut audit = Audit::default();
            mine.iter().for_each(|x| audit.merge(&x.audit));
            MethodSummary {
                method,
                per_repeat,
                overall: Stats::of(mine.iter().map(|x| x.avg_reward_per_patient)),
                mean_wall_clock_ms: mine.iter().map(|x| x.wall_clock_ms).sum::<f64>() / mine.len() as f64,
                audit,
            }
        })
        .collect();
    Ok(ExperimentReport { results, summaries })
}

/// Parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Number of agents `N`; a per-agent horizon rule rescales `tau`.
    Agents,
    /// Resources each pathway requires.
    Resources,
    /// Size `M` of the resource pool.
    ResourceTypes,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::Agents => "agents",
            SweepAxis::Resources => "resources",
            SweepAxis::ResourceTypes => "resource-types",
        }
    }

    pub fn apply(self, scenario: &Scenario, value: usize) -> Scenario {
        let mut sc = scenario.clone();
        match self {
            SweepAxis::Agents => sc = sc.with_agents(value),
            SweepAxis::Resources => sc.prior.pathway_length = value,
            SweepAxis::ResourceTypes => sc.prior.resources = value,
        }
        sc
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [SweepAxis::Agents, SweepAxis::Resources, SweepAxis::ResourceTypes]
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown sweep axis `{s}`")))
    }
}

/// Runs the scenario once per axis value.
pub fn sweep(scenario: &Scenario, axis: SweepAxis, values: &[usize]) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &v in values {
        let sc = axis.apply(scenario, v);
        let report = run_experiment(&sc)?;
        for s in &report.summaries {
            rows.push(SweepRow {
                axis: axis.as_str(),
                value: v,
                method: s.method,
                agents: sc.prior.agents,
                resources: sc.prior.resources,
                conditions: sc.prior.conditions(),
                horizon: sc.horizon(),
                trials: sc.trials * sc.repeats,
                mean: s.overall.mean,
                std: s.overall.std,
                mean_wall_clock_ms: s.mean_wall_clock_ms,
            });
        }
    }
    Ok(rows)
}
