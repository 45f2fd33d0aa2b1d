use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use aucmdp::agent_mdp::solve;
use aucmdp::auction::{iterative_auction, one_round_auction, optimal_matching};
use aucmdp::harness::{
    load_scenario, repeat_conditions, run_experiment, sweep, trial_models, trial_seed, write_results_csv,
    write_sweep_csv, Method, Scenario, SweepAxis,
};
use aucmdp::mmdp::{joint_value_iteration, Budget, JointModel, DEFAULT_STATE_CAP};
use aucmdp::{Error, RegretMatrix, ResourceId};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Coordinated patient MDPs with regret auctions.
#[derive(Parser)]
#[command(name = "aucmdp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct UctFlags {
    /// Wall-clock planning budget per step.
    #[arg(long)]
    uct_timeout_ms: Option<u64>,
    /// UCB1 exploration constant.
    #[arg(long)]
    uct_c: Option<f64>,
    /// Fixed rollout budget per step; overrides the timeout.
    #[arg(long)]
    uct_iterations: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every trial of a scenario and write per-trial results.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Comma separated methods, or `all`; overrides the config file.
        #[arg(long)]
        method: Option<String>,
        /// Results CSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write zero in the wall-clock column so reruns compare byte for byte.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        uct: UctFlags,
    },
    /// Repeat the scenario along one axis.
    Sweep {
        #[arg(long, value_parser = parse_axis)]
        axis: SweepAxis,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<usize>,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        uct: UctFlags,
    },
    /// Allocate a bid matrix read from `agent,resource,bid` CSV.
    Auction {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = AuctionMethod::Iter)]
        method: AuctionMethod,
    },
    /// Solve the joint problem exactly for the scenario's first trial.
    JointDp {
        #[arg(long)]
        config: PathBuf,
        /// Largest joint state count accepted.
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap: u64,
    },
    /// Dump one agent's value table for the scenario's first trial.
    AgentDp {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        agent: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AuctionMethod {
    Iter,
    OneRound,
    Optimal,
}

fn parse_axis(s: &str) -> Result<SweepAxis, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn scenario(config: &Path, method: Option<&str>, uct: Option<&UctFlags>) -> aucmdp::Result<Scenario> {
    let mut sc = load_scenario(config)?;
    if let Some(m) = method {
        sc.methods = Method::parse_list(m)?;
    }
    if let Some(f) = uct {
        if let Some(ms) = f.uct_timeout_ms {
            if ms == 0 {
                return Err(Error::Config("--uct-timeout-ms must be positive".into()));
            }
            sc.uct.budget = Budget::WallClock(Duration::from_millis(ms));
        }
        if let Some(n) = f.uct_iterations {
            sc.uct.budget = Budget::Iterations(n);
        }
        if let Some(c) = f.uct_c {
            sc.uct.exploration = c;
        }
    }
    Ok(sc)
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn first_trial(sc: &Scenario) -> aucmdp::Result<JointModel> {
    let conditions = repeat_conditions(sc, 0)?;
    let models = trial_models(sc, &conditions, trial_seed(sc.seed, 0, 0))?;
    JointModel::new(models, (0..sc.prior.resources as u32).map(ResourceId).collect(), sc.horizon())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Simulate { config, method, out, no_timing, uct } => {
            let sc = scenario(&config, method.as_deref(), Some(&uct))?;
            let report = run_experiment(&sc)?;
            write_results_csv(&sc, &report.results, output(out.as_deref())?, !no_timing)?;
            for s in &report.summaries {
                eprintln!(
                    "{:<15} {:>9.3} ± {:<8.3} ({} trials, {:.1} ms/trial)",
                    s.method.as_str(),
                    s.overall.mean,
                    s.overall.std,
                    s.overall.n,
                    s.mean_wall_clock_ms
                );
                if !s.audit.is_clean() {
                    eprintln!("  feasibility audit failed: {:?}", s.audit);
                }
            }
            let starved: u64 = report.results.iter().map(|r| r.starved_steps).sum();
            if starved > 0 {
                eprintln!("warning: UCT finished no rollout in {starved} steps");
            }
        }
        Command::Sweep { axis, values, config, method, out, uct } => {
            let sc = scenario(&config, method.as_deref(), Some(&uct))?;
            let rows = sweep(&sc, axis, &values)?;
            write_sweep_csv(&rows, output(out.as_deref())?)?;
        }
        Command::Auction { matrix, method } => {
            let file = File::open(&matrix).map_err(|e| Error::Config(format!("{}: {e}", matrix.display())))?;
            let bids = RegretMatrix::read_csv(file)?;
            let alloc = match method {
                AuctionMethod::Iter => iterative_auction(&bids),
                AuctionMethod::OneRound => one_round_auction(&bids),
                AuctionMethod::Optimal => optimal_matching(&bids),
            };
            let mut by_agent: Vec<_> = alloc.iter().map(|(r, a)| (a, r)).collect();
            by_agent.sort();
            println!("agent,resource");
            for (a, r) in by_agent {
                println!("{a},{}", r.0);
            }
            println!("welfare {}", bids.welfare(&alloc));
        }
        Command::JointDp { config, cap } => {
            let sc = scenario(&config, None, None)?;
            let model = first_trial(&sc)?;
            let table = joint_value_iteration(&model, cap)?;
            let s0 = model.initial_state();
            println!("states {}", table.states());
            println!("value {}", table.value(&model, &s0)?);
            let best = table.optimal_action(&model, &s0)?;
            let grants: Vec<String> = best.iter().map(|(r, a)| format!("{a}:{}", r.0)).collect();
            println!("first allocation {{{}}}", grants.join(", "));
        }
        Command::AgentDp { config, agent, out } => {
            let sc = scenario(&config, None, None)?;
            let model = first_trial(&sc)?;
            let m = model
                .agents()
                .get(agent)
                .ok_or_else(|| Error::Config(format!("agent {agent} out of range")))?;
            solve(m).write_csv(output(out.as_deref())?)?;
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::SizeCap { .. }) => 3,
        Some(Error::Config(_) | Error::Csv(_) | Error::Parameter(_) | Error::Structural(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
