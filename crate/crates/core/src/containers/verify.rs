use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use serde::Serialize;

use super::{to_bitset, ContainerFamily};
use crate::cycles::{find_copy_through, CycleFamily};
use crate::hypergraph::{EdgeId, Hypergraph};
use crate::rng;
use crate::supersat::CycleCollection;
use crate::{Error, Result};

pub const EXHAUSTIVE_GROUND_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringReport {
    /// Independent sets (or samples) examined.
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<Vec<EdgeId>>,
}

/// Enumerates every `S`-independent subset of the ground and checks that a
/// container holds it. Grounds above 24 elements are refused.
pub fn verify_covering_exhaustive(family: &ContainerFamily, s: &CycleCollection) -> Result<CoveringReport> {
    let g = family.ground;
    if g > EXHAUSTIVE_GROUND_LIMIT {
        return Err(Error::GroundTooLargeForVerification {
            ground: g,
            limit: EXHAUSTIVE_GROUND_LIMIT,
        });
    }
    let mask = |ids: &[EdgeId]| ids.iter().fold(0u32, |m, &e| m | 1 << e);
    let copies: Vec<u32> = s.copies.iter().map(|c| mask(&c.edge_ids)).collect();
    let containers: Vec<u32> = family.containers.iter().map(|c| mask(c)).collect();
    let mut report = CoveringReport {
        checked: 0,
        failures: 0,
        first_failure: None,
    };
    for set in 0u32..(1u32 << g) {
        if copies.iter().any(|&c| c & set == c) {
            continue;
        }
        report.checked += 1;
        if !containers.iter().any(|&c| set & c == set) {
            report.failures += 1;
            report.first_failure.get_or_insert_with(|| (0..g).filter(|&e| set >> e & 1 == 1).collect());
        }
    }
    Ok(report)
}

/// A maximal `fam`-free edge set of `h`: edges are tried in a seeded random
/// order and kept unless they close a copy.
pub fn random_maximal_free(h: &Hypergraph, fam: &CycleFamily, seed: u64) -> Result<FixedBitSet> {
    let mut order: Vec<EdgeId> = (0..h.edge_count()).collect();
    order.shuffle(&mut rng::from_seed(seed));
    let mut kept = FixedBitSet::with_capacity(h.edge_count());
    for e in order {
        if find_copy_through(h, fam, Some(&kept), e)?.is_none() {
            kept.insert(e);
        }
    }
    Ok(kept)
}

/// Samples maximal `fam`-free subgraphs of `h` (whose edge ids are the
/// family's ground) and checks each lies in a container.
pub fn verify_covering_sampled(
    family: &ContainerFamily,
    h: &Hypergraph,
    fam: &CycleFamily,
    samples: usize,
    seed: u64,
) -> Result<CoveringReport> {
    if h.edge_count() != family.ground {
        return Err(Error::InvalidParameter(format!(
            "host has {} edges, family ground is {}",
            h.edge_count(),
            family.ground
        )));
    }
    let containers: Vec<FixedBitSet> = family.containers.iter().map(|c| to_bitset(family.ground, c)).collect();
    let mut report = CoveringReport {
        checked: 0,
        failures: 0,
        first_failure: None,
    };
    for i in 0..samples {
        let free = random_maximal_free(h, fam, rng::derive(seed, i as u64))?;
        report.checked += 1;
        if !containers.iter().any(|c| free.is_subset(c)) {
            report.failures += 1;
            report.first_failure.get_or_insert_with(|| free.ones().collect());
        }
    }
    Ok(report)
}
