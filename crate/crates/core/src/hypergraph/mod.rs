//! r-uniform hypergraphs on the vertex set `{0, .., n-1}`.
//!
//! Edges are stored as sorted r-tuples with stable ids `0..e(H)`. Each tuple
//! is also packed into a `u128` key (16 bits per vertex), which is what the
//! edge index and the shadow maps hash on. This bounds `r ≤ 8` and
//! `n ≤ 65536`, far beyond anything the exhaustive routines can touch.

mod density;
mod format;
mod generate;
mod partition;
mod shadow;

use std::fmt;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;

use crate::{Error, Result};

pub use density::{m_r_density, m_r_density_with_cap, DEFAULT_DENSITY_CAP};
pub use format::{parse_hg, read_hg, to_hg_string, write_hg, write_hg_file};
pub use generate::{complete, gen_gnrp, gen_with_edge_count};
pub use partition::{
    induced_partite_subgraph, random_r_partition, best_partite_subgraph, sample_partite_subgraph, Partition,
    DEFAULT_PARTITION_ATTEMPTS,
};
pub use shadow::ShadowMap;

pub type Vertex = u32;
pub type EdgeId = usize;
pub type Rational = num_rational::Ratio<i64>;

pub const MAX_UNIFORMITY: usize = 8;
pub const MAX_VERTICES: usize = 1 << 16;

/// Packs a sorted vertex tuple into a hash key. Lexicographic order of equal
/// length tuples is preserved by integer order of the keys.
#[inline]
pub fn pack(sorted: &[Vertex]) -> u128 {
    sorted.iter().fold(0u128, |acc, &v| (acc << 16) | v as u128)
}

/// Inverse of [`pack`] for a tuple of length `k`.
pub fn unpack(key: u128, k: usize) -> Vec<Vertex> {
    (0..k)
        .rev()
        .map(|i| ((key >> (16 * i)) & 0xFFFF) as Vertex)
        .collect()
}

#[derive(Clone)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    verts: Vec<Vertex>,
    index: FxHashMap<u128, EdgeId>,
    incidence: Vec<Vec<EdgeId>>,
    shadows: Vec<OnceLock<ShadowMap>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each tuple. Edge ids follow input order.
    pub fn new<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        let mut h = Self::empty(n, r)?;
        for e in edges {
            h.push_edge(e.as_ref())?;
        }
        Ok(h)
    }

    pub fn empty(n: usize, r: usize) -> Result<Self> {
        if !(2..=MAX_UNIFORMITY).contains(&r) {
            return Err(Error::InvalidParameter(format!(
                "uniformity r = {r} must lie in 2..={MAX_UNIFORMITY}"
            )));
        }
        if n < r || n > MAX_VERTICES {
            return Err(Error::InvalidParameter(format!(
                "vertex count n = {n} must satisfy r <= n <= {MAX_VERTICES}"
            )));
        }
        Ok(Hypergraph {
            n,
            r,
            verts: Vec::new(),
            index: FxHashMap::default(),
            incidence: vec![Vec::new(); n],
            shadows: (0..r).map(|_| OnceLock::new()).collect(),
        })
    }

    fn push_edge(&mut self, edge: &[Vertex]) -> Result<EdgeId> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        e.dedup();
        if e.len() != self.r || edge.len() != self.r {
            return Err(Error::BadArity {
                edge: edge.to_vec(),
                expected: self.r,
                found: e.len(),
            });
        }
        if let Some(&v) = e.iter().find(|&&v| v as usize >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let key = pack(&e);
        let id = self.edge_count();
        if self.index.insert(key, id).is_some() {
            return Err(Error::DuplicateEdge { edge: e });
        }
        for &v in &e {
            self.incidence[v as usize].push(id);
        }
        self.verts.extend_from_slice(&e);
        Ok(id)
    }

    /// Builds from tuples already known to be sorted, distinct and in range.
    pub(crate) fn from_sorted_unchecked(n: usize, r: usize, edges: impl IntoIterator<Item = Vec<Vertex>>) -> Self {
        let mut h = Self::empty(n, r).expect("valid parameters");
        for e in edges {
            debug_assert!(e.windows(2).all(|w| w[0] < w[1]));
            let key = pack(&e);
            let id = h.edge_count();
            h.index.insert(key, id);
            for &v in &e {
                h.incidence[v as usize].push(id);
            }
            h.verts.extend_from_slice(&e);
        }
        h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.verts.len() / self.r
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// The sorted vertex tuple of edge `id`. Panics on an invalid id.
    pub fn edge(&self, id: EdgeId) -> &[Vertex] {
        &self.verts[id * self.r..(id + 1) * self.r]
    }

    pub fn try_edge(&self, id: EdgeId) -> Result<&[Vertex]> {
        if id < self.edge_count() {
            Ok(self.edge(id))
        } else {
            Err(Error::UnknownEdgeId(id))
        }
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.verts.chunks_exact(self.r)
    }

    pub fn edge_key(&self, id: EdgeId) -> u128 {
        pack(self.edge(id))
    }

    /// Looks up an edge given its vertices in any order.
    pub fn edge_id(&self, vertices: &[Vertex]) -> Option<EdgeId> {
        if vertices.len() != self.r {
            return None;
        }
        let mut buf = [0 as Vertex; MAX_UNIFORMITY];
        buf[..self.r].copy_from_slice(vertices);
        buf[..self.r].sort_unstable();
        self.index.get(&pack(&buf[..self.r])).copied()
    }

    pub fn edge_id_by_key(&self, key: u128) -> Option<EdgeId> {
        self.index.get(&key).copied()
    }

    pub fn contains_edge(&self, vertices: &[Vertex]) -> bool {
        self.edge_id(vertices).is_some()
    }

    /// Edge ids containing `v`, ascending.
    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.incidence[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v as usize].len()
    }

    /// The k-shadow map, built on first use and cached.
    pub fn shadow(&self, k: usize) -> Result<&ShadowMap> {
        if k == 0 || k >= self.r {
            return Err(Error::BadShadowSize { k, r: self.r });
        }
        Ok(self.shadows[k].get_or_init(|| ShadowMap::build(self, k)))
    }

    /// `d_H(σ)` for a vertex set of size `1..r`; 0 when σ lies in no edge.
    pub fn codegree(&self, sigma: &[Vertex]) -> usize {
        match sigma.len() {
            1 => self.degree(sigma[0]),
            k if k < self.r => self.shadow(k).map(|s| s.codegree(sigma)).unwrap_or(0),
            _ => 0,
        }
    }

    /// `Δ_j(H)`, the maximum codegree over j-sets.
    pub fn max_codegree(&self, j: usize) -> Result<usize> {
        Ok(self.shadow(j)?.max_codegree())
    }

    /// The subgraph on the given edge ids, renumbered in the order given.
    pub fn edge_subgraph(&self, ids: &[EdgeId]) -> Hypergraph {
        Hypergraph::from_sorted_unchecked(self.n, self.r, ids.iter().map(|&id| self.edge(id).to_vec()))
    }

    /// A copy with one extra edge appended (id `e(H)`).
    pub fn with_edge(&self, vertices: &[Vertex]) -> Result<Hypergraph> {
        let mut h = Hypergraph::from_sorted_unchecked(self.n, self.r, self.edges().map(|e| e.to_vec()));
        h.push_edge(vertices)?;
        Ok(h)
    }

    /// Applies the vertex permutation `perm` (vertex v becomes `perm[v]`).
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Hypergraph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length must equal n".into()));
        }
        Hypergraph::new(
            self.n,
            self.r,
            self.edges()
                .map(|e| e.iter().map(|&v| perm[v as usize]).collect::<Vec<_>>()),
        )
    }

    /// Number of distinct vertices touched by the given edges.
    pub fn spanned_vertex_count(&self, ids: &[EdgeId]) -> usize {
        let mut vs: Vec<Vertex> = ids.iter().flat_map(|&id| self.edge(id).iter().copied()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs.len()
    }

    /// Edge tuples in lexicographic order.
    pub fn sorted_edges(&self) -> Vec<&[Vertex]> {
        let mut es: Vec<&[Vertex]> = self.edges().collect();
        es.sort_unstable();
        es
    }

    /// Same vertex count, uniformity and edge set, ignoring edge ids.
    pub fn same_edge_set(&self, other: &Hypergraph) -> bool {
        self.n == other.n && self.r == other.r && self.sorted_edges() == other.sorted_edges()
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.verts == other.verts
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle() {
        let h = Hypergraph::new(4, 2, [[0, 1], [1, 2], [2, 3], [3, 0]]).unwrap();
        assert_eq!(h.edge_count(), 4);
        assert_eq!(h.edge(3), &[0, 3]);
        assert_eq!(h.edge_id(&[3, 0]), Some(3));
        assert_eq!(h.degree(0), 2);
    }

    #[test]
    fn canonical_c34() {
        // e_i = {v_{2(i-1)}, v_{2i-1}, v_{2i}} with v_0 = v_8
        let edges = [[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 0]];
        let h = Hypergraph::new(8, 3, edges).unwrap();
        assert_eq!(h.edge_count(), 4);
        assert_eq!(h.n(), 8);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Hypergraph::new(3, 3, [[0, 1, 1]]),
            Err(Error::BadArity { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, [[0, 1], [1, 0]]),
            Err(Error::DuplicateEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, [[0, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(
            Hypergraph::new(4, 3, [vec![0, 1]]),
            Err(Error::BadArity { .. })
        ));
        assert!(Hypergraph::empty(2, 3).is_err());
    }

    #[test]
    fn pack_roundtrip_and_order() {
        let a = [1, 5, 9];
        assert_eq!(unpack(pack(&a), 3), a);
        assert!(pack(&[1, 5, 9]) < pack(&[1, 6, 0]));
        assert!(pack(&[0, 65535]) < pack(&[1, 0]));
    }

    #[test]
    fn relabel_and_with_edge() {
        let h = Hypergraph::new(4, 2, [[0, 1], [1, 2]]).unwrap();
        let g = h.relabel(&[3, 2, 1, 0]).unwrap();
        assert!(g.contains_edge(&[3, 2]) && g.contains_edge(&[2, 1]));
        let h2 = h.with_edge(&[2, 3]).unwrap();
        assert_eq!(h2.edge_count(), 3);
        assert!(h.with_edge(&[1, 0]).is_err());
    }
}
