use rand::Rng;

use super::{Hypergraph, Vertex};
use crate::combinatorics::{binomial, unrank_subset, KSubsets};
use crate::{rng, Error, Result};

/// Upper limit on C(n, r) for generators that walk every potential edge.
const MAX_POTENTIAL_EDGES: u128 = 1 << 32;

fn potential_edges(n: usize, r: usize) -> Result<u128> {
    Hypergraph::empty(n, r)?;
    let total = binomial(n as u64, r as u64);
    if total > MAX_POTENTIAL_EDGES {
        return Err(Error::TooLarge {
            size: total,
            cap: MAX_POTENTIAL_EDGES,
        });
    }
    Ok(total)
}

/// The complete r-graph `K^r_n`, edges in lexicographic order.
pub fn complete(n: usize, r: usize) -> Result<Hypergraph> {
    potential_edges(n, r)?;
    Ok(Hypergraph::from_sorted_unchecked(
        n,
        r,
        KSubsets::new(n, r).map(|s| s.into_iter().map(|v| v as Vertex).collect()),
    ))
}

/// `G^r_{n,p}`: every r-set is an edge independently with probability `p`.
///
/// One uniform draw is consumed per r-set in lexicographic order, so for a
/// fixed seed the outputs are nested in `p`.
pub fn gen_gnrp(n: usize, r: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("probability {p} is outside [0, 1]")));
    }
    potential_edges(n, r)?;
    let mut rng = rng::from_seed(seed);
    let edges = KSubsets::new(n, r)
        .filter(|_| rng.random::<f64>() < p)
        .map(|s| s.into_iter().map(|v| v as Vertex).collect())
        .collect::<Vec<Vec<Vertex>>>();
    Ok(Hypergraph::from_sorted_unchecked(n, r, edges))
}

/// Exactly `m` distinct r-sets drawn uniformly without replacement,
/// returned in lexicographic order.
pub fn gen_with_edge_count(n: usize, r: usize, m: usize, seed: u64) -> Result<Hypergraph> {
    let total = potential_edges(n, r)?;
    if m as u128 > total {
        return Err(Error::TooManyEdges {
            requested: m as u128,
            available: total,
        });
    }
    let mut rng = rng::from_seed(seed);
    let mut ranks = rand::seq::index::sample(&mut rng, total as usize, m).into_vec();
    ranks.sort_unstable();
    Ok(Hypergraph::from_sorted_unchecked(
        n,
        r,
        ranks.into_iter().map(|rank| {
            unrank_subset(n, r, rank as u128)
                .into_iter()
                .map(|v| v as Vertex)
                .collect()
        }),
    ))
}
