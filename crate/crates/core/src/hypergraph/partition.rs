use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Hypergraph, Vertex};
use crate::combinatorics::factorial;
use crate::{rng, Error, Result};

pub const DEFAULT_PARTITION_ATTEMPTS: usize = 64;

/// r disjoint vertex classes covering `{0, .., n-1}`. Classes may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<Vec<Vertex>>,
    pub assignment: Vec<usize>,
}

impl Partition {
    pub fn from_assignment(r: usize, assignment: Vec<usize>) -> Result<Partition> {
        let mut parts = vec![Vec::new(); r];
        for (v, &p) in assignment.iter().enumerate() {
            if p >= r {
                return Err(Error::InvalidParameter(format!("part index {p} >= r = {r}")));
            }
            parts[p].push(v as Vertex);
        }
        Ok(Partition { parts, assignment })
    }

    pub fn from_parts(n: usize, parts: Vec<Vec<Vertex>>) -> Result<Partition> {
        let mut assignment = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                let slot = assignment
                    .get_mut(v as usize)
                    .ok_or(Error::VertexOutOfRange { vertex: v, n })?;
                if *slot != usize::MAX {
                    return Err(Error::InvalidParameter(format!("vertex {v} is in two parts")));
                }
                *slot = i;
            }
        }
        if assignment.contains(&usize::MAX) {
            return Err(Error::InvalidParameter("parts do not cover every vertex".into()));
        }
        let mut parts = parts;
        parts.iter_mut().for_each(|p| p.sort_unstable());
        Ok(Partition { parts, assignment })
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, v: Vertex) -> usize {
        self.assignment[v as usize]
    }

    /// True when the edge meets every part exactly once.
    pub fn is_transversal(&self, edge: &[Vertex]) -> bool {
        let mut seen = 0u64;
        for &v in edge {
            let bit = 1u64 << self.part_of(v);
            if seen & bit != 0 {
                return false;
            }
            seen |= bit;
        }
        edge.len() == self.part_count()
    }
}

/// Assigns each vertex independently and uniformly to one of r parts.
pub fn random_r_partition(h: &Hypergraph, seed: u64) -> Partition {
    let mut rng = rng::from_seed(seed);
    let r = h.r();
    let assignment = (0..h.n()).map(|_| rng.random_range(0..r)).collect();
    Partition::from_assignment(r, assignment).expect("indices below r")
}

/// The edges meeting every part exactly once, in their original order.
pub fn induced_partite_subgraph(h: &Hypergraph, p: &Partition) -> Hypergraph {
    Hypergraph::from_sorted_unchecked(
        h.n(),
        h.r(),
        h.edges().filter(|e| p.is_transversal(e)).map(<[Vertex]>::to_vec),
    )
}

/// Draws random partitions until the partite subgraph keeps at least
/// `r!/r^r · e(H)` edges, the expected retained fraction.
pub fn sample_partite_subgraph(
    h: &Hypergraph,
    seed: u64,
    attempts: usize,
) -> Result<(Partition, Hypergraph)> {
    let r = h.r();
    let target = factorial(r) as f64 / (r as f64).powi(r as i32) * h.edge_count() as f64;
    for attempt in 0..attempts {
        let p = random_r_partition(h, rng::derive(seed, attempt as u64));
        let sub = induced_partite_subgraph(h, &p);
        if sub.edge_count() as f64 >= target {
            return Ok((p, sub));
        }
    }
    Err(Error::PartitionRetryExhausted { attempts, target })
}

/// Draws `draws` random partitions and keeps the one whose partite
/// subgraph is largest (first on ties). Fails like
/// [`sample_partite_subgraph`] when even the best misses the target.
pub fn best_partite_subgraph(h: &Hypergraph, seed: u64, draws: usize) -> Result<(Partition, Hypergraph)> {
    let r = h.r();
    let target = factorial(r) as f64 / (r as f64).powi(r as i32) * h.edge_count() as f64;
    let mut best: Option<(Partition, Hypergraph)> = None;
    for draw in 0..draws {
        let p = random_r_partition(h, rng::derive(seed, draw as u64));
        let sub = induced_partite_subgraph(h, &p);
        if best.as_ref().is_none_or(|(_, b)| sub.edge_count() > b.edge_count()) {
            best = Some((p, sub));
        }
    }
    match best {
        Some(b) if b.1.edge_count() as f64 >= target => Ok(b),
        _ => Err(Error::PartitionRetryExhausted { attempts: draws, target }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete;

    #[test]
    fn transversal_filter() {
        let h = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let p = Partition::from_parts(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(induced_partite_subgraph(&h, &p).edge_count(), 1);
        let q = Partition::from_parts(3, vec![vec![0, 1], vec![2], vec![]]).unwrap();
        assert_eq!(induced_partite_subgraph(&h, &q).edge_count(), 0);
    }

    #[test]
    fn balanced_k39() {
        let h = complete(9, 3).unwrap();
        let p = Partition::from_parts(9, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        let sub = induced_partite_subgraph(&h, &p);
        assert_eq!(sub.edge_count(), 27);
        assert!(sub.edges().all(|e| p.is_transversal(e)));
    }

    #[test]
    fn deterministic_and_both_outcomes() {
        let h = Hypergraph::empty(2, 2).unwrap();
        assert_eq!(random_r_partition(&h, 5), random_r_partition(&h, 5));
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..40 {
            seen.insert(random_r_partition(&h, seed).assignment);
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn retry_reaches_target() {
        let h = complete(10, 3).unwrap();
        let (p, sub) = sample_partite_subgraph(&h, 3, DEFAULT_PARTITION_ATTEMPTS).unwrap();
        assert!(sub.edge_count() as f64 >= 6.0 / 27.0 * 120.0);
        assert_eq!(sub, induced_partite_subgraph(&h, &p));
        assert!(matches!(
            sample_partite_subgraph(&h, 3, 0),
            Err(Error::PartitionRetryExhausted { .. })
        ));
    }

    #[test]
    fn from_parts_validation() {
        assert!(Partition::from_parts(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_parts(3, vec![vec![0], vec![1]]).is_err());
    }

    #[test]
    fn best_of_draws_dominates_first_hit() {
        let h = complete(12, 3).unwrap();
        let (_, first) = sample_partite_subgraph(&h, 5, 64).unwrap();
        let (p, best) = best_partite_subgraph(&h, 5, 64).unwrap();
        assert!(best.edge_count() >= first.edge_count());
        assert!(best.edges().all(|e| p.is_transversal(e)));
    }
}
