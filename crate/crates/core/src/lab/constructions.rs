use rand::Rng;

use super::exact::greedy_hitting_set;
use crate::cycles::{enumerate_cycles, CycleFamily};
use crate::hypergraph::{EdgeId, Hypergraph, Vertex};
use crate::rng;
use crate::{Error, Result};

/// `H` minus one edge from every copy, the edges chosen greedily by how many
/// copies they hit.
pub fn construction_deletion(h: &Hypergraph, fam: &CycleFamily, cap: usize) -> Result<Hypergraph> {
    let found = enumerate_cycles(h, fam, cap)?;
    if found.truncated {
        return Err(Error::TooManyCopies { cap });
    }
    let copies: Vec<Vec<EdgeId>> = found.copies.iter().map(|c| c.sorted_edge_ids()).collect();
    let hit = greedy_hitting_set(h.edge_count(), &copies);
    let keep: Vec<EdgeId> = (0..h.edge_count()).filter(|e| hit.binary_search(e).is_err()).collect();
    Ok(h.edge_subgraph(&keep))
}

/// Keeps every edge independently with probability `p′`.
pub fn construction_subsample(h: &Hypergraph, p_prime: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p_prime) {
        return Err(Error::InvalidParameter(format!("probability {p_prime} is outside [0, 1]")));
    }
    let mut rng = rng::from_seed(seed);
    let keep: Vec<EdgeId> = (0..h.edge_count()).filter(|_| rng.random::<f64>() < p_prime).collect();
    Ok(h.edge_subgraph(&keep))
}

/// All edges through `v`.
pub fn construction_star(h: &Hypergraph, v: Vertex) -> Result<Hypergraph> {
    if v as usize >= h.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
    }
    Ok(h.edge_subgraph(h.incident(v)))
}

/// Vertex of largest degree, lowest on ties.
pub fn best_star_vertex(h: &Hypergraph) -> Vertex {
    (0..h.n() as Vertex).max_by(|&a, &b| h.degree(a).cmp(&h.degree(b)).then(b.cmp(&a))).unwrap_or(0)
}

/// The thinning probability of the middle-range construction:
/// `n^{-r+1+1/(2ℓ-1)}/p`, capped at 1.
pub fn middle_range_p(n: usize, r: usize, ell: usize, p: f64) -> f64 {
    let target = (n as f64).powf(-(r as f64) + 1.0 + 1.0 / (2 * ell - 1) as f64);
    if p <= 0.0 {
        1.0
    } else {
        (target / p).min(1.0)
    }
}

/// Subsample at [`middle_range_p`], then delete an edge from each copy.
pub fn construction_middle(h: &Hypergraph, fam: &CycleFamily, p: f64, seed: u64, cap: usize) -> Result<Hypergraph> {
    let ell = (fam.length / 2).max(2);
    let thin = construction_subsample(h, middle_range_p(h.n(), h.r(), ell, p), seed)?;
    construction_deletion(&thin, fam, cap)
}
