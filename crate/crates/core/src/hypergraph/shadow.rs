use rustc_hash::FxHashMap;

use super::{pack, unpack, EdgeId, Hypergraph, Vertex, MAX_UNIFORMITY};
use crate::combinatorics::for_each_subset;

/// All k-subsets of edges together with the ids of the edges containing them.
#[derive(Debug, Clone)]
pub struct ShadowMap {
    k: usize,
    entries: FxHashMap<u128, Vec<EdgeId>>,
}

impl ShadowMap {
    pub(crate) fn build(h: &Hypergraph, k: usize) -> ShadowMap {
        let mut entries: FxHashMap<u128, Vec<EdgeId>> = FxHashMap::default();
        for (id, e) in h.edges().enumerate() {
            for_each_subset(e, k, |sigma| entries.entry(pack(sigma)).or_default().push(id));
        }
        ShadowMap { k, entries }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of distinct k-shadows.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Edge ids containing σ (any vertex order), ascending. Empty if absent.
    pub fn get(&self, sigma: &[Vertex]) -> &[EdgeId] {
        if sigma.len() != self.k {
            return &[];
        }
        let mut buf = [0 as Vertex; MAX_UNIFORMITY];
        buf[..self.k].copy_from_slice(sigma);
        buf[..self.k].sort_unstable();
        self.get_key(pack(&buf[..self.k]))
    }

    pub fn get_key(&self, key: u128) -> &[EdgeId] {
        self.entries.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn codegree(&self, sigma: &[Vertex]) -> usize {
        self.get(sigma).len()
    }

    pub fn max_codegree(&self) -> usize {
        self.entries.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Σ_σ d_H(σ); equals e(H)·C(r, k).
    pub fn total_codegree(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    /// Unordered iteration over (packed key, incident edge ids).
    pub fn iter(&self) -> impl Iterator<Item = (u128, &[EdgeId])> + '_ {
        self.entries.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    /// Shadows in lexicographic order.
    pub fn sorted(&self) -> Vec<(Vec<Vertex>, &[EdgeId])> {
        let mut keys: Vec<u128> = self.entries.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter()
            .map(|key| (unpack(key, self.k), self.get_key(key)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use crate::combinatorics::binomial;
    use crate::hypergraph::complete;

    #[test]
    fn k34_pairs_have_codegree_two() {
        let h = complete(4, 3).unwrap();
        let s = h.shadow(2).unwrap();
        assert_eq!(s.len(), 6);
        for a in 0..4 {
            for b in a + 1..4 {
                // brute force: edges of K^3_4 containing {a, b}
                let direct = h.edges().filter(|e| e.contains(&a) && e.contains(&b)).count();
                assert_eq!(direct, 2);
                assert_eq!(s.codegree(&[b, a]), 2);
            }
        }
    }

    #[test]
    fn single_edge_and_complete() {
        let h = crate::Hypergraph::new(5, 4, [[0, 1, 2, 3]]).unwrap();
        let s = h.shadow(3).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|(_, ids)| ids.len() == 1));

        let k = complete(7, 4).unwrap();
        let s = k.shadow(3).unwrap();
        assert!(s.iter().all(|(_, ids)| ids.len() == 7 - 4 + 1));
        assert_eq!(k.max_codegree(3).unwrap(), 4);
        for j in 1..4 {
            assert_eq!(
                k.shadow(j).unwrap().total_codegree() as u128,
                k.edge_count() as u128 * binomial(4, j as u64)
            );
        }
    }

    #[test]
    fn bad_size_and_empty() {
        let h = crate::Hypergraph::empty(5, 3).unwrap();
        assert!(h.shadow(0).is_err());
        assert!(h.shadow(3).is_err());
        assert_eq!(h.max_codegree(2).unwrap(), 0);
        assert_eq!(h.codegree(&[0, 1]), 0);
    }
}
