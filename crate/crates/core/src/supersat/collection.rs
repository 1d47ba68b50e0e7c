use std::io::Write;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::combinatorics::for_each_subset;
use crate::cycles::{is_cycle_copy, CycleCopy, CycleKind};
use crate::hypergraph::{EdgeId, Hypergraph};
use crate::Result;

/// A collection `S` of cycle copies in a host, viewed as a hypergraph on
/// the host's edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCollection {
    pub kind: CycleKind,
    pub r: usize,
    pub length: usize,
    pub host_edge_count: usize,
    pub copies: Vec<CycleCopy>,
    pub truncated: bool,
}

impl CycleCollection {
    pub fn empty(kind: CycleKind, r: usize, length: usize, host_edge_count: usize) -> Self {
        CycleCollection {
            kind,
            r,
            length,
            host_edge_count,
            copies: Vec::new(),
            truncated: false,
        }
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    /// `Δ_1..Δ_length`.
    pub fn delta_profile(&self) -> Vec<u64> {
        delta_profile(self, self.length)
    }

    /// True when every copy is a valid copy in `h`.
    pub fn all_valid(&self, h: &Hypergraph) -> Result<bool> {
        for c in &self.copies {
            if !is_cycle_copy(h, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One JSON record per copy, then a summary line with `|S|` and the
    /// `Δ` profile.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for c in &self.copies {
            serde_json::to_writer(&mut out, c)?;
            writeln!(out)?;
        }
        let summary = serde_json::json!({
            "summary": {
                "size": self.len(),
                "delta_profile": self.delta_profile(),
                "truncated": self.truncated,
                "host_edge_count": self.host_edge_count,
            }
        });
        serde_json::to_writer(&mut out, &summary)?;
        writeln!(out)?;
        Ok(())
    }
}

/// `Δ_j(S)` for `j = 1..=j_max`: the largest number of copies sharing a
/// common j-set of host edges. Aggregates over the j-subsets of each copy.
pub fn delta_profile(s: &CycleCollection, j_max: usize) -> Vec<u64> {
    let sets: Vec<Vec<EdgeId>> = s.copies.iter().map(CycleCopy::sorted_edge_ids).collect();
    (1..=j_max).map(|j| max_load(&sets, j)).collect()
}

/// Largest multiplicity of a j-subset across the given sorted edge sets.
pub(crate) fn max_load(sets: &[Vec<EdgeId>], j: usize) -> u64 {
    let max_id = sets.iter().flatten().copied().max().unwrap_or(0);
    let bits = (usize::BITS - max_id.leading_zeros()).max(1) as usize;
    if j * bits <= 128 {
        let mut loads: FxHashMap<u128, u64> = FxHashMap::default();
        for set in sets {
            for_each_subset(set, j, |sub| {
                let key = sub.iter().fold(0u128, |acc, &e| (acc << bits) | e as u128);
                *loads.entry(key).or_default() += 1;
            });
        }
        loads.values().copied().max().unwrap_or(0)
    } else {
        let mut loads: FxHashMap<Vec<EdgeId>, u64> = FxHashMap::default();
        for set in sets {
            for_each_subset(set, j, |sub| *loads.entry(sub.to_vec()).or_default() += 1);
        }
        loads.values().copied().max().unwrap_or(0)
    }
}
