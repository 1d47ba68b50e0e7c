use serde::{Deserialize, Serialize};

use crate::hypergraph::EdgeId;
use crate::{Error, Result};

/// A graph on the edges of a shadow neighbourhood in which every vertex has
/// degree `t` or `t - 1`.
///
/// Vertices are kept in ascending edge-id order and adjacency is the
/// circulant rule on their positions: offsets `±1..±⌊t/2⌋`, plus for odd `t`
/// the antipodal matching (even size) or the matching `i ↔ i + (d-1)/2`
/// leaving the last vertex at degree `t - 1` (odd size). A neighbourhood of
/// exactly `t` edges becomes the complete graph, all degrees `t - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodegreeGraph {
    pub vertices: Vec<EdgeId>,
    pub t: usize,
}

pub fn build_codegree_graph(neighborhood: &[EdgeId], t: usize) -> Result<CodegreeGraph> {
    let d = neighborhood.len();
    if t == 0 || d < t {
        return Err(Error::TooFewVertices { vertices: d, t });
    }
    let mut vertices = neighborhood.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.len() != d {
        return Err(Error::InvalidParameter("neighbourhood lists an edge twice".into()));
    }
    Ok(CodegreeGraph { vertices, t })
}

/// Circulant adjacency between positions `a` and `b` in a graph of size `d`.
#[inline]
pub fn circulant_adjacent(d: usize, t: usize, a: usize, b: usize) -> bool {
    if a == b {
        return false;
    }
    if d == t {
        return true;
    }
    let diff = a.abs_diff(b);
    let dist = diff.min(d - diff);
    if dist <= t / 2 {
        return true;
    }
    if t % 2 == 1 {
        if d % 2 == 0 {
            return dist == d / 2;
        }
        let half = (d - 1) / 2;
        let (lo, hi) = (a.min(b), a.max(b));
        return lo < half && hi == lo + half;
    }
    false
}

impl CodegreeGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, e: EdgeId) -> Option<usize> {
        self.vertices.binary_search(&e).ok()
    }

    pub fn adjacent_positions(&self, a: usize, b: usize) -> bool {
        circulant_adjacent(self.len(), self.t, a, b)
    }

    pub fn adjacent(&self, a: EdgeId, b: EdgeId) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(x), Some(y)) => self.adjacent_positions(x, y),
            _ => false,
        }
    }

    pub fn neighbor_positions(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.adjacent_positions(a, b)).collect()
    }

    pub fn neighbors(&self, e: EdgeId) -> Vec<EdgeId> {
        match self.position(e) {
            Some(a) => self.neighbor_positions(a).into_iter().map(|b| self.vertices[b]).collect(),
            None => Vec::new(),
        }
    }

    pub fn degree(&self, e: EdgeId) -> usize {
        self.neighbors(e).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &CodegreeGraph) -> Vec<usize> {
        (0..g.len()).map(|a| g.neighbor_positions(a).len()).collect()
    }

    #[test]
    fn documented_cases() {
        let c5 = build_codegree_graph(&[0, 1, 2, 3, 4], 2).unwrap();
        assert_eq!(degrees(&c5), vec![2; 5]);
        assert!(c5.adjacent(0, 4) && !c5.adjacent(0, 2));

        let k4 = build_codegree_graph(&[10, 11, 12, 13], 3).unwrap();
        assert_eq!(degrees(&k4), vec![3; 4]);

        let g = build_codegree_graph(&[0, 1, 2, 3, 4, 5], 3).unwrap();
        assert_eq!(degrees(&g), vec![3; 6]);
        assert_eq!(g.neighbors(0), vec![1, 3, 5]);
    }

    #[test]
    fn every_size_and_degree() {
        for d in 1..40usize {
            for t in 1..=d {
                let nb: Vec<EdgeId> = (0..d).map(|i| 3 * i + 1).collect();
                let g = build_codegree_graph(&nb, t).unwrap();
                for a in 0..d {
                    let deg = g.neighbor_positions(a).len();
                    assert!(deg == t || deg + 1 == t, "d={d} t={t} deg={deg}");
                    for b in 0..d {
                        assert_eq!(g.adjacent_positions(a, b), g.adjacent_positions(b, a));
                    }
                }
            }
        }
    }

    #[test]
    fn too_few_vertices() {
        assert!(matches!(
            build_codegree_graph(&[1, 2], 3),
            Err(Error::TooFewVertices { vertices: 2, t: 3 })
        ));
        assert!(build_codegree_graph(&[1, 2], 0).is_err());
    }
}
