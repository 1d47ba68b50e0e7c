//! Container families for cycle collections.
//!
//! A collection `S` of cycle copies is read as a hypergraph on the host's
//! edges. A container family covers every `S`-independent edge set (every
//! edge set containing no copy of `S`) while each container misses at least
//! `⌈εL⌉` host edges.

mod iterate;
mod schedule;
mod step;
mod verify;

pub use iterate::*;
pub use schedule::*;
pub use step::*;
pub use verify::*;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::hypergraph::EdgeId;

pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_CONTAINER_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContainerParams {
    /// `None` for iterated families, where B changes from step to step.
    pub b: Option<f64>,
    pub l: Option<f64>,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verification {
    NotRun,
    Exhaustive { independent_sets: u64, failures: u64 },
    Sampled { samples: u64, failures: u64 },
    Skipped { reason: String },
}

/// One container step inside an iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub iteration: usize,
    pub edges: usize,
    pub copies: usize,
    pub b: f64,
    pub l: f64,
    pub implied_c: f64,
    pub containers: usize,
    pub min_omitted: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainerFamily {
    /// Number of ground elements (host edges).
    pub ground: usize,
    /// Ascending edge-id lists, the family sorted lexicographically.
    pub containers: Vec<Vec<EdgeId>>,
    pub params: ContainerParams,
    pub depth: usize,
    /// Fewest ground elements any container leaves out.
    pub min_omitted: usize,
    /// `min_omitted / L` for a single step; the largest ε the family meets.
    pub achieved_epsilon: Option<f64>,
    /// `ln` of the abstract count bound `exp(ln(v/B)·B/ε)`.
    pub log_size_bound: Option<f64>,
    /// False when a budget stopped the construction early.
    pub complete: bool,
    /// Containers the supersaturation run could not shrink (no copies).
    pub stalled: usize,
    pub steps: Vec<StepRecord>,
    pub verification: Verification,
}

impl ContainerFamily {
    pub fn len(&self) -> usize {
        self.containers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.containers.is_empty()
    }

    pub fn bitsets(&self) -> Vec<FixedBitSet> {
        self.containers.iter().map(|c| to_bitset(self.ground, c)).collect()
    }

    /// Containers as bitmaps, available when the ground fits in 64 bits.
    pub fn bitmaps(&self) -> Option<Vec<u64>> {
        (self.ground <= 64).then(|| {
            self.containers
                .iter()
                .map(|c| c.iter().fold(0u64, |m, &e| m | 1 << e))
                .collect()
        })
    }

    pub fn to_json(&self) -> crate::Result<String> {
        let mut v = serde_json::to_value(self)?;
        if let Some(maps) = self.bitmaps() {
            v["bitmaps"] = serde_json::to_value(maps)?;
        }
        Ok(serde_json::to_string_pretty(&v)?)
    }
}

pub(crate) fn to_bitset(ground: usize, ids: &[EdgeId]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(ground);
    for &e in ids {
        b.insert(e);
    }
    b
}

/// Sorts, dedups and drops containers lying inside another one.
pub(crate) fn absorb(ground: usize, mut family: Vec<Vec<EdgeId>>) -> Vec<Vec<EdgeId>> {
    family.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    family.dedup();
    let mut kept: Vec<(Vec<EdgeId>, FixedBitSet)> = Vec::new();
    for c in family {
        let bits = to_bitset(ground, &c);
        if !kept.iter().any(|(_, k)| bits.is_subset(k)) {
            kept.push((c, bits));
        }
    }
    let mut out: Vec<Vec<EdgeId>> = kept.into_iter().map(|(c, _)| c).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absorb_drops_subsets() {
        let f = absorb(5, vec![vec![0, 1], vec![0, 1, 2], vec![3], vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(f, vec![vec![0, 1, 2], vec![3, 4]]);
    }
}
