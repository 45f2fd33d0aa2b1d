//! Plain-text scenario files: one `key = value` per line, `#` comments.
//!
//! Keys: `N`, `M`, `D`, `pathway_length`, `tau` (an integer or `10N`),
//! `method` (comma list or `all`), `seed`, `trials`, `repeats`,
//! `uct_timeout_ms`, `uct_iterations`, `uct_c`. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use super::{HorizonRule, Method, Scenario};
use crate::error::{Error, Result};
use crate::mmdp::Budget;

const KEYS: [&str; 12] = [
    "N",
    "M",
    "D",
    "pathway_length",
    "tau",
    "method",
    "seed",
    "trials",
    "repeats",
    "uct_timeout_ms",
    "uct_iterations",
    "uct_c",
];

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("bad value `{v}` for `{key}`")))
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", n + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(Error::Config(format!("line {}: unknown key `{k}`", n + 1)));
        }
        if kv.insert(k, v).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key `{k}`", n + 1)));
        }
    }
    let required = |k: &str| -> Result<usize> {
        let v = kv.get(k).ok_or_else(|| Error::Config(format!("missing key `{k}`")))?;
        parse_value(k, v)
    };
    let agents = required("N")?;
    let resources = required("M")?;
    let conditions = required("D")?;
    let pathway = match kv.get("pathway_length") {
        Some(v) => parse_value("pathway_length", v)?,
        None => resources,
    };
    let rule = kv.get("tau").map(|v| v.parse()).transpose()?.unwrap_or(HorizonRule::PerAgent(10));
    let mut sc = Scenario::new(agents, resources, conditions, pathway, rule);
    if let Some(v) = kv.get("method") {
        sc.methods = Method::parse_list(v)?;
    }
    if let Some(v) = kv.get("seed") {
        sc.seed = parse_value("seed", v)?;
    }
    if let Some(v) = kv.get("trials") {
        sc.trials = parse_value("trials", v)?;
    }
    if let Some(v) = kv.get("repeats") {
        sc.repeats = parse_value("repeats", v)?;
    }
    if let Some(v) = kv.get("uct_timeout_ms") {
        let ms: u64 = parse_value("uct_timeout_ms", v)?;
        if ms == 0 {
            return Err(Error::Config("uct_timeout_ms must be positive".into()));
        }
        sc.uct.budget = Budget::WallClock(Duration::from_millis(ms));
    }
    if let Some(v) = kv.get("uct_iterations") {
        sc.uct.budget = Budget::Iterations(parse_value("uct_iterations", v)?);
    }
    if let Some(v) = kv.get("uct_c") {
        sc.uct.exploration = parse_value("uct_c", v)?;
    }
    sc.validate()?;
    Ok(sc)
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text)
}
