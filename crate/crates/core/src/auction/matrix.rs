use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::agent_mdp::BidMode;
use crate::domain::{Allocation, ResourceId};
use crate::error::{Error, Result};
use crate::scalar::{total, Bid};

/// Bids keyed by `(agent, resource)`. Only biddable pairs have entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretMatrix<B = f64> {
    entries: BTreeMap<(usize, ResourceId), B>,
    mode: BidMode,
}

impl<B: Bid> Default for RegretMatrix<B> {
    fn default() -> Self {
        Self::new(BidMode::Regret)
    }
}

impl<B: Bid> RegretMatrix<B> {
    pub fn new(mode: BidMode) -> Self {
        RegretMatrix { entries: BTreeMap::new(), mode }
    }

    /// Dense rows: `rows[i][j]` is agent `i`'s bid for resource `j`.
    pub fn from_dense(rows: &[Vec<B>]) -> Self {
        let mut m = Self::default();
        for (i, row) in rows.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                m.entries.insert((i, ResourceId(j as u32)), *b);
            }
        }
        m
    }

    pub fn mode(&self) -> BidMode {
        self.mode
    }

    /// Rejects NaN-like bids that do not compare with themselves.
    pub fn insert(&mut self, agent: usize, resource: ResourceId, bid: B) -> Result<()> {
        if bid.partial_cmp(&bid).is_none() {
            return Err(Error::Parameter(format!("bid for ({agent}, {resource}) is not comparable")));
        }
        self.entries.insert((agent, resource), bid);
        Ok(())
    }

    pub fn get(&self, agent: usize, resource: ResourceId) -> Option<B> {
        self.entries.get(&(agent, resource)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, ResourceId, B)> + '_ {
        self.entries.iter().map(|(&(a, r), &b)| (a, r, b))
    }

    pub fn agents(&self) -> BTreeSet<usize> {
        self.entries.keys().map(|(a, _)| *a).collect()
    }

    pub fn resources(&self) -> BTreeSet<ResourceId> {
        self.entries.keys().map(|(_, r)| *r).collect()
    }

    pub fn row(&self, agent: usize) -> Vec<(ResourceId, B)> {
        self.entries
            .range((agent, ResourceId(0))..=(agent, ResourceId(u32::MAX)))
            .map(|(&(_, r), &b)| (r, b))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of the bids of the assigned pairs. Pairs without a bid count as zero.
    pub fn welfare(&self, allocation: &Allocation) -> B {
        total(allocation.iter().map(|(r, a)| self.get(a, r).unwrap_or_else(B::zero)))
    }
}

#[derive(Serialize, Deserialize)]
struct Row {
    agent: usize,
    resource: u32,
    bid: f64,
}

impl RegretMatrix<f64> {
    /// Reads the `agent,resource,bid` CSV format.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let headers = reader.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["agent", "resource", "bid"] {
            return Err(Error::Config(format!("expected header agent,resource,bid; got {headers:?}")));
        }
        let mut m = Self::default();
        for row in reader.deserialize() {
            let row: Row = row?;
            if !row.bid.is_finite() {
                return Err(Error::Parameter(format!("non-finite bid for agent {}", row.agent)));
            }
            if m.get(row.agent, ResourceId(row.resource)).is_some() {
                return Err(Error::Config(format!(
                    "duplicate entry for agent {} resource {}",
                    row.agent, row.resource
                )));
            }
            m.insert(row.agent, ResourceId(row.resource), row.bid)?;
        }
        Ok(m)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for (agent, r, bid) in self.iter() {
            w.serialize(Row { agent, resource: r.0, bid })?;
        }
        w.flush()?;
        Ok(())
    }
}
