use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::combinatorics::for_each_subset;
use crate::hypergraph::{pack, unpack, EdgeId, Hypergraph, Partition, Vertex};
use crate::{Error, Result};

/// One step of the removal loop: `N(σ)` taken out while `d(σ) = codegree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Removal {
    pub sigma: Vec<Vertex>,
    pub tau: Vec<usize>,
    pub codegree: usize,
    pub a: u32,
    pub edges: Vec<EdgeId>,
}

/// The removed edges sharing a part pattern `τ` and a codegree scale `2^a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bucket {
    pub tau: Vec<usize>,
    pub a: u32,
    /// Ids in the partitioned host, ascending.
    pub edge_ids: Vec<EdgeId>,
    pub graph: Hypergraph,
}

/// `H′` split into the high-codegree core `F` and the buckets `F_{τ,a}`.
#[derive(Debug, Clone)]
pub struct PartitionOutcome {
    pub f: Hypergraph,
    /// Ids of F's edges in the partitioned host, ascending.
    pub f_ids: Vec<EdgeId>,
    pub buckets: Vec<Bucket>,
    pub threshold: f64,
    pub partition: Partition,
    pub removals: Vec<Removal>,
}

impl PartitionOutcome {
    pub fn bucket(&self, tau: &[usize], a: u32) -> Option<&Bucket> {
        self.buckets.iter().find(|b| b.tau == tau && b.a == a)
    }

    pub fn bucketed_edge_count(&self) -> usize {
        self.buckets.iter().map(|b| b.edge_ids.len()).sum()
    }
}

/// Sorted part indices met by σ.
pub fn parts_of(p: &Partition, sigma: &[Vertex]) -> Vec<usize> {
    let mut tau: Vec<usize> = sigma.iter().map(|&v| p.part_of(v)).collect();
    tau.sort_unstable();
    tau
}

/// Repeatedly takes the lexicographically smallest (r-1)-shadow σ of the
/// remaining host with `d(σ) < A`, removes `N(σ)` and files it under
/// `(τ(σ), ⌊log₂ d(σ)⌋)`. What survives is `F`.
pub fn codegree_dichotomy_partition(h: &Hypergraph, p: &Partition, threshold: f64) -> Result<PartitionOutcome> {
    let r = h.r();
    if p.part_count() != r || p.assignment.len() != h.n() {
        return Err(Error::NotPartite);
    }
    if !h.edges().all(|e| p.is_transversal(e)) {
        return Err(Error::NotPartite);
    }
    let k = r - 1;
    let mut alive = vec![true; h.edge_count()];
    let mut counts: FxHashMap<u128, usize> = FxHashMap::default();
    for e in h.edges() {
        for_each_subset(e, k, |s| *counts.entry(pack(s)).or_default() += 1);
    }
    let low = |d: usize| (d as f64) < threshold;
    let mut pending: BTreeSet<u128> = counts.iter().filter(|&(_, &d)| low(d)).map(|(&s, _)| s).collect();
    let shadow = h.shadow(k)?;
    let mut removals = Vec::new();
    let mut grouped: BTreeMap<(Vec<usize>, u32), Vec<EdgeId>> = BTreeMap::new();
    while let Some(key) = pending.pop_first() {
        let nb: Vec<EdgeId> = shadow.get_key(key).iter().copied().filter(|&e| alive[e]).collect();
        let d = nb.len();
        debug_assert!(d > 0 && d == counts[&key]);
        let sigma = unpack(key, k);
        let tau = parts_of(p, &sigma);
        let a = usize::BITS - 1 - d.leading_zeros();
        for &e in &nb {
            alive[e] = false;
            for_each_subset(h.edge(e), k, |s| {
                let sk = pack(s);
                let c = counts.get_mut(&sk).expect("shadow counted");
                *c -= 1;
                if *c == 0 {
                    pending.remove(&sk);
                } else if low(*c) {
                    pending.insert(sk);
                }
            });
        }
        grouped.entry((tau.clone(), a)).or_default().extend(&nb);
        removals.push(Removal {
            sigma,
            tau,
            codegree: d,
            a,
            edges: nb,
        });
    }
    let f_ids: Vec<EdgeId> = (0..h.edge_count()).filter(|&e| alive[e]).collect();
    let buckets = grouped
        .into_iter()
        .map(|((tau, a), mut ids)| {
            ids.sort_unstable();
            Bucket {
                graph: h.edge_subgraph(&ids),
                tau,
                a,
                edge_ids: ids,
            }
        })
        .collect();
    Ok(PartitionOutcome {
        f: h.edge_subgraph(&f_ids),
        f_ids,
        buckets,
        threshold,
        partition: p.clone(),
        removals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete, induced_partite_subgraph};

    fn balanced(n: usize, r: usize) -> Partition {
        Partition::from_assignment(r, (0..n).map(|v| v % r).collect()).unwrap()
    }

    #[test]
    fn low_threshold_keeps_everything() {
        let p = balanced(9, 3);
        let h = induced_partite_subgraph(&complete(9, 3).unwrap(), &p);
        for a in [0.0, 1.0] {
            let out = codegree_dichotomy_partition(&h, &p, a).unwrap();
            assert_eq!(out.f, h);
            assert!(out.buckets.is_empty() && out.removals.is_empty());
        }
    }

    #[test]
    fn high_threshold_empties_the_core() {
        let p = balanced(9, 3);
        let h = induced_partite_subgraph(&complete(9, 3).unwrap(), &p);
        let out = codegree_dichotomy_partition(&h, &p, 100.0).unwrap();
        assert!(out.f.is_empty());
        assert_eq!(out.bucketed_edge_count(), 27);
        // the first pair (0,1) has codegree 3, so its bucket has a = 1
        assert_eq!(out.removals[0].sigma, vec![0, 1]);
        assert_eq!(out.removals[0].a, 1);
    }

    #[test]
    fn core_codegrees_after_rescan() {
        let p = balanced(9, 3);
        let full = induced_partite_subgraph(&complete(9, 3).unwrap(), &p);
        let ids: Vec<EdgeId> = (0..full.edge_count()).filter(|e| e % 4 != 0).collect();
        let h = full.edge_subgraph(&ids);
        let out = codegree_dichotomy_partition(&h, &p, 2.0).unwrap();
        for (_, nb) in out.f.shadow(2).unwrap().iter() {
            assert!(nb.len() >= 2);
        }
        assert_eq!(out.f_ids.len() + out.bucketed_edge_count(), h.edge_count());
        for rm in &out.removals {
            assert!(1 << rm.a <= rm.codegree && rm.codegree < 2 << rm.a);
        }
    }

    #[test]
    fn rejects_non_partite_hosts() {
        let h = complete(6, 3).unwrap();
        assert!(matches!(codegree_dichotomy_partition(&h, &balanced(6, 3), 2.0), Err(Error::NotPartite)));
    }
}
