use std::io::Write;

use super::{Method, Scenario, TrialResult};
use crate::error::Result;

pub const RESULTS_HEADER: [&str; 10] =
    ["method", "N", "M", "D", "tau", "repeat", "trial", "seed", "avg_reward_per_patient", "wall_clock_ms"];

pub const SWEEP_HEADER: [&str; 11] =
    ["axis", "value", "method", "N", "M", "D", "tau", "trials", "mean", "std", "mean_wall_clock_ms"];

/// Sample mean and standard deviation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Stats {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
}

impl Stats {
    pub fn of(xs: impl IntoIterator<Item = f64>) -> Stats {
        let xs: Vec<f64> = xs.into_iter().collect();
        let n = xs.len();
        if n == 0 {
            return Stats::default();
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = if n > 1 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64 } else { 0.0 };
        Stats { n, mean, std: var.sqrt() }
    }

    pub fn standard_error(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.std / (self.n as f64).sqrt()
        }
    }
}

/// One CSV row per trial. With `timing` off the wall-clock column is zero so
/// identical seeds give byte-identical files.
pub fn write_results_csv<W: Write>(scenario: &Scenario, results: &[TrialResult], out: W, timing: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_HEADER)?;
    let p = &scenario.prior;
    for r in results {
        w.write_record([
            r.method.as_str().to_string(),
            p.agents.to_string(),
            p.resources.to_string(),
            p.conditions().to_string(),
            scenario.horizon().to_string(),
            r.repeat.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            r.avg_reward_per_patient.to_string(),
            if timing { format!("{:.3}", r.wall_clock_ms) } else { "0".to_string() },
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis: &'static str,
    pub value: usize,
    pub method: Method,
    pub agents: usize,
    pub resources: usize,
    pub conditions: usize,
    pub horizon: usize,
    pub trials: usize,
    pub mean: f64,
    pub std: f64,
    pub mean_wall_clock_ms: f64,
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record([
            r.axis.to_string(),
            r.value.to_string(),
            r.method.as_str().to_string(),
            r.agents.to_string(),
            r.resources.to_string(),
            r.conditions.to_string(),
            r.horizon.to_string(),
            r.trials.to_string(),
            r.mean.to_string(),
            r.std.to_string(),
            format!("{:.3}", r.mean_wall_clock_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}
