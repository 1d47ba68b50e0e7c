//! Linear cycles `C^r_ℓ` and Berge cycles `B^r_k`.
//!
//! A linear copy is stored as its edges `e_1..e_ℓ` in cyclic order together
//! with the witness `v_1..v_{ℓ(r-1)}`, where
//! `e_i = {v_{(i-1)(r-1)}, .., v_{i(r-1)}}` and `v_0 = v_{ℓ(r-1)}`.
//! A Berge copy stores `e_1..e_k` and its cores `v_1..v_k` with
//! `v_{i-1}, v_i ∈ e_i` and `v_0 = v_k`.
//!
//! Identity: linear copies are identified by their edge-id set. Berge copies
//! by the edge-id set together with the cyclic (dihedral) class of the core
//! sequence, unless [`BergeIdentity::EdgeSet`] is requested.

mod oracle;
mod search;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::hypergraph::{EdgeId, Hypergraph, Vertex};
use crate::{Error, Result};

pub use oracle::{brute_force_oracle, brute_force_oracle_with, DEFAULT_ORACLE_CAP};

pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleKind {
    Linear,
    Berge,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleCopy {
    pub kind: CycleKind,
    pub edge_ids: Vec<EdgeId>,
    pub witness: Vec<Vertex>,
}

impl CycleCopy {
    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn sorted_edge_ids(&self) -> Vec<EdgeId> {
        let mut ids = self.edge_ids.clone();
        ids.sort_unstable();
        ids
    }

    /// The Berge copy obtained by keeping only the junction vertices of a
    /// linear copy: `v_{r-1}, v_{2(r-1)}, .., v_{ℓ(r-1)}`.
    pub fn project_to_berge(&self, r: usize) -> CycleCopy {
        match self.kind {
            CycleKind::Berge => self.clone(),
            CycleKind::Linear => CycleCopy {
                kind: CycleKind::Berge,
                edge_ids: self.edge_ids.clone(),
                witness: self.witness.iter().skip(r - 2).step_by(r - 1).copied().collect(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Linear,
    Berge,
    /// Berge cycles of every length `2..=k`.
    BergeUpTo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleFamily {
    pub kind: FamilyKind,
    pub r: usize,
    pub length: usize,
}

impl CycleFamily {
    pub fn new(kind: FamilyKind, r: usize, length: usize) -> Result<CycleFamily> {
        let min = match kind {
            FamilyKind::Linear => 3,
            FamilyKind::Berge | FamilyKind::BergeUpTo => 2,
        };
        if length < min {
            return Err(Error::InvalidParameter(format!(
                "{kind:?} cycles need length >= {min}, got {length}"
            )));
        }
        if r < 2 {
            return Err(Error::InvalidParameter(format!("uniformity r = {r} < 2")));
        }
        Ok(CycleFamily { kind, r, length })
    }

    pub fn linear(r: usize, length: usize) -> Result<CycleFamily> {
        Self::new(FamilyKind::Linear, r, length)
    }

    pub fn berge(r: usize, length: usize) -> Result<CycleFamily> {
        Self::new(FamilyKind::Berge, r, length)
    }

    pub fn berge_up_to(r: usize, length: usize) -> Result<CycleFamily> {
        Self::new(FamilyKind::BergeUpTo, r, length)
    }

    pub fn copy_kind(&self) -> CycleKind {
        match self.kind {
            FamilyKind::Linear => CycleKind::Linear,
            _ => CycleKind::Berge,
        }
    }

    /// Cycle lengths covered by the family.
    pub fn lengths(&self) -> std::ops::RangeInclusive<usize> {
        match self.kind {
            FamilyKind::BergeUpTo => 2..=self.length,
            _ => self.length..=self.length,
        }
    }

    fn check_host(&self, h: &Hypergraph) -> Result<()> {
        if self.r != h.r() {
            return Err(Error::InvalidParameter(format!(
                "family uniformity {} differs from host uniformity {}",
                self.r,
                h.r()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BergeIdentity {
    /// Edge-id set plus the dihedral class of the core sequence.
    #[default]
    Witness,
    /// Edge-id set only.
    EdgeSet,
}

/// Identity key of a copy: sorted edge ids and, for Berge copies under
/// witness identity, the core cycle in canonical dihedral form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CopyKey {
    pub edges: Vec<EdgeId>,
    pub cores: Vec<Vertex>,
}

pub fn copy_key(c: &CycleCopy, identity: BergeIdentity) -> CopyKey {
    let cores = match (c.kind, identity) {
        (CycleKind::Berge, BergeIdentity::Witness) => canonical_cycle(&c.witness),
        _ => Vec::new(),
    };
    CopyKey {
        edges: c.sorted_edge_ids(),
        cores,
    }
}

/// Lexicographically least rotation/reflection of a cyclic sequence.
pub fn canonical_cycle(seq: &[Vertex]) -> Vec<Vertex> {
    let k = seq.len();
    let mut best: Option<Vec<Vertex>> = None;
    for start in 0..k {
        for dir in [1isize, -1] {
            let cand: Vec<Vertex> = (0..k as isize)
                .map(|i| seq[(start as isize + dir * i).rem_euclid(k as isize) as usize])
                .collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Checks a copy against the host's actual edges.
pub fn is_cycle_copy(h: &Hypergraph, c: &CycleCopy) -> Result<bool> {
    let edges: Vec<&[Vertex]> = c
        .edge_ids
        .iter()
        .map(|&id| h.try_edge(id))
        .collect::<Result<_>>()?;
    let mut ids = c.sorted_edge_ids();
    ids.dedup();
    if ids.len() != edges.len() {
        return Ok(false);
    }
    let mut distinct = c.witness.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != c.witness.len() {
        return Ok(false);
    }
    let r = h.r();
    let len = edges.len();
    let w = &c.witness;
    Ok(match c.kind {
        CycleKind::Linear => {
            if len < 3 || w.len() != len * (r - 1) {
                return Ok(false);
            }
            // v_j is w[j - 1]; v_0 is the last witness entry
            let v = |j: usize| w[(j + w.len() - 1) % w.len()];
            edges.iter().enumerate().all(|(i, e)| {
                let mut expect: Vec<Vertex> = (i * (r - 1)..=(i + 1) * (r - 1)).map(v).collect();
                expect.sort_unstable();
                expect == *e
            })
        }
        CycleKind::Berge => {
            if len < 2 || w.len() != len {
                return Ok(false);
            }
            let v = |j: usize| w[(j + len - 1) % len];
            edges
                .iter()
                .enumerate()
                .all(|(i, e)| e.contains(&v(i)) && e.contains(&v(i + 1)))
        }
    })
}

/// Result of a capped enumeration.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub copies: Vec<CycleCopy>,
    pub truncated: bool,
}

/// Visits every copy of the family once (per `identity`), restricted to the
/// active edges when a mask is given. The visitor returns `false` to stop.
pub fn for_each_copy(
    h: &Hypergraph,
    fam: &CycleFamily,
    active: Option<&FixedBitSet>,
    identity: BergeIdentity,
    mut visit: impl FnMut(&CycleCopy) -> bool,
) -> Result<()> {
    fam.check_host(h)?;
    for len in fam.lengths() {
        let mut go_on = true;
        match fam.kind {
            FamilyKind::Linear => {
                search::linear(h, active, len, search::Start::All, &mut |edges, witness| {
                    go_on = visit(&CycleCopy {
                        kind: CycleKind::Linear,
                        edge_ids: edges.to_vec(),
                        witness: witness.to_vec(),
                    });
                    go_on
                });
            }
            FamilyKind::Berge | FamilyKind::BergeUpTo => {
                let mut seen: FxHashSet<CopyKey> = FxHashSet::default();
                search::berge(h, active, len, None, &mut |edges, witness| {
                    let copy = CycleCopy {
                        kind: CycleKind::Berge,
                        edge_ids: edges.to_vec(),
                        witness: witness.to_vec(),
                    };
                    if seen.insert(copy_key(&copy, identity)) {
                        go_on = visit(&copy);
                    }
                    go_on
                });
            }
        }
        if !go_on {
            break;
        }
    }
    Ok(())
}

pub fn enumerate_cycles(h: &Hypergraph, fam: &CycleFamily, cap: usize) -> Result<Enumeration> {
    enumerate_cycles_with(h, fam, cap, BergeIdentity::Witness)
}

pub fn enumerate_cycles_with(
    h: &Hypergraph,
    fam: &CycleFamily,
    cap: usize,
    identity: BergeIdentity,
) -> Result<Enumeration> {
    let mut out = Enumeration::default();
    for_each_copy(h, fam, None, identity, |c| {
        if out.copies.len() == cap {
            out.truncated = true;
            return false;
        }
        out.copies.push(c.clone());
        true
    })?;
    Ok(out)
}

pub fn count_cycles(h: &Hypergraph, fam: &CycleFamily) -> Result<u128> {
    count_cycles_with(h, fam, BergeIdentity::Witness)
}

pub fn count_cycles_with(h: &Hypergraph, fam: &CycleFamily, identity: BergeIdentity) -> Result<u128> {
    fam.check_host(h)?;
    let mut count = 0u128;
    if fam.kind == FamilyKind::Linear {
        // no identity bookkeeping needed: count straight from the search
        search::linear(h, None, fam.length, search::Start::All, &mut |_, _| {
            count += 1;
            true
        });
        return Ok(count);
    }
    for_each_copy(h, fam, None, identity, |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// Any copy of the family among the active edges.
pub fn find_copy(h: &Hypergraph, fam: &CycleFamily, active: Option<&FixedBitSet>) -> Result<Option<CycleCopy>> {
    let mut found = None;
    for_each_copy(h, fam, active, BergeIdentity::EdgeSet, |c| {
        found = Some(c.clone());
        false
    })?;
    Ok(found)
}

/// Any copy that uses `edge` and otherwise only active edges. The edge
/// itself need not be active.
pub fn find_copy_through(
    h: &Hypergraph,
    fam: &CycleFamily,
    active: Option<&FixedBitSet>,
    edge: EdgeId,
) -> Result<Option<CycleCopy>> {
    fam.check_host(h)?;
    h.try_edge(edge)?;
    let mut found = None;
    for len in fam.lengths() {
        let kind = fam.copy_kind();
        let mut hit = |edges: &[EdgeId], witness: &[Vertex]| {
            found = Some(CycleCopy {
                kind,
                edge_ids: edges.to_vec(),
                witness: witness.to_vec(),
            });
            false
        };
        match kind {
            CycleKind::Linear => search::linear(h, active, len, search::Start::Anchor(edge), &mut hit),
            CycleKind::Berge => search::berge(h, active, len, Some(edge), &mut hit),
        }
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}

/// Visits the linear copies of length `len` whose smallest edge id is `e1`,
/// each once. Splitting the search this way lets callers process the copies
/// in independent groups.
pub fn for_each_linear_with_min_edge(
    h: &Hypergraph,
    len: usize,
    e1: EdgeId,
    mut visit: impl FnMut(&[EdgeId], &[Vertex]) -> bool,
) {
    search::linear(h, None, len, search::Start::Min(e1), &mut visit);
}

pub fn is_family_free(h: &Hypergraph, fam: &CycleFamily) -> Result<bool> {
    Ok(find_copy(h, fam, None)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete;

    fn c34() -> Hypergraph {
        Hypergraph::new(8, 3, [[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 0]]).unwrap()
    }

    #[test]
    fn canonical_host_is_a_copy() {
        let h = c34();
        let c = CycleCopy {
            kind: CycleKind::Linear,
            edge_ids: vec![0, 1, 2, 3],
            witness: vec![1, 2, 3, 4, 5, 6, 7, 0],
        };
        assert!(is_cycle_copy(&h, &c).unwrap());
        let mut swapped = c.clone();
        swapped.witness.swap(1, 2);
        assert!(!is_cycle_copy(&h, &swapped).unwrap());
        let bad = CycleCopy {
            edge_ids: vec![0, 1, 2, 9],
            ..c
        };
        assert!(matches!(is_cycle_copy(&h, &bad), Err(Error::UnknownEdgeId(9))));
    }

    #[test]
    fn berge_rejects_repeated_edge() {
        let h = Hypergraph::new(4, 3, [[0, 1, 2], [1, 2, 3]]).unwrap();
        let ok = CycleCopy {
            kind: CycleKind::Berge,
            edge_ids: vec![0, 1],
            witness: vec![2, 1],
        };
        assert!(is_cycle_copy(&h, &ok).unwrap());
        let twice = CycleCopy {
            edge_ids: vec![0, 0],
            ..ok
        };
        assert!(!is_cycle_copy(&h, &twice).unwrap());
    }

    #[test]
    fn small_counts() {
        let c4 = CycleFamily::linear(2, 4).unwrap();
        assert_eq!(count_cycles(&complete(4, 2).unwrap(), &c4).unwrap(), 3);
        assert_eq!(count_cycles(&complete(5, 2).unwrap(), &c4).unwrap(), 15);
        let c5 = Hypergraph::new(5, 2, [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]).unwrap();
        assert_eq!(count_cycles(&c5, &c4).unwrap(), 0);
        let e = enumerate_cycles(&c34(), &CycleFamily::linear(3, 4).unwrap(), 10).unwrap();
        assert_eq!(e.copies.len(), 1);
        assert!(!e.truncated);
        assert!(is_cycle_copy(&c34(), &e.copies[0]).unwrap());
        assert_eq!(
            count_cycles(&Hypergraph::empty(6, 3).unwrap(), &CycleFamily::linear(3, 4).unwrap()).unwrap(),
            0
        );
    }

    #[test]
    fn truncation_is_flagged() {
        let e = enumerate_cycles(&complete(5, 2).unwrap(), &CycleFamily::linear(2, 4).unwrap(), 4).unwrap();
        assert_eq!(e.copies.len(), 4);
        assert!(e.truncated);
    }

    #[test]
    fn projection_gives_berge_copy() {
        let h = complete(7, 3).unwrap();
        let e = enumerate_cycles(&h, &CycleFamily::linear(3, 3).unwrap(), 50).unwrap();
        for c in &e.copies {
            let b = c.project_to_berge(3);
            assert_eq!(b.witness.len(), 3);
            assert!(is_cycle_copy(&h, &b).unwrap());
        }
    }

    #[test]
    fn star_is_free_and_through_search() {
        let star = Hypergraph::new(6, 3, crate::combinatorics::KSubsets::new(5, 2).map(|p| {
            vec![0, p[0] as u32 + 1, p[1] as u32 + 1]
        }))
        .unwrap();
        assert!(is_family_free(&star, &CycleFamily::linear(3, 4).unwrap()).unwrap());
        assert!(is_family_free(&star, &CycleFamily::linear(3, 3).unwrap()).unwrap());
        assert!(!is_family_free(&c34(), &CycleFamily::linear(3, 4).unwrap()).unwrap());

        let fam = CycleFamily::linear(3, 4).unwrap();
        let mut mask = FixedBitSet::with_capacity(4);
        mask.insert_range(0..3);
        let c = find_copy_through(&c34(), &fam, Some(&mask), 3).unwrap().unwrap();
        assert_eq!(c.sorted_edge_ids(), vec![0, 1, 2, 3]);
        mask.set(1, false);
        assert!(find_copy_through(&c34(), &fam, Some(&mask), 3).unwrap().is_none());
    }

    #[test]
    fn family_validation() {
        assert!(CycleFamily::linear(3, 2).is_err());
        assert!(CycleFamily::berge(3, 2).is_ok());
        let fam = CycleFamily::linear(3, 4).unwrap();
        assert!(count_cycles(&complete(5, 2).unwrap(), &fam).is_err());
    }

    fn key_set(copies: &[CycleCopy]) -> Vec<CopyKey> {
        let mut keys: Vec<CopyKey> = copies.iter().map(|c| copy_key(c, BergeIdentity::Witness)).collect();
        keys.sort();
        keys
    }

    #[test]
    fn search_matches_oracle_on_small_hosts() {
        for seed in 0..30 {
            let h = crate::hypergraph::gen_with_edge_count(7, 3, 12, seed).unwrap();
            for fam in [
                CycleFamily::linear(3, 3).unwrap(),
                CycleFamily::berge(3, 2).unwrap(),
                CycleFamily::berge(3, 4).unwrap(),
                CycleFamily::berge_up_to(3, 3).unwrap(),
            ] {
                let fast = enumerate_cycles(&h, &fam, usize::MAX).unwrap().copies;
                let slow = brute_force_oracle(&h, &fam).unwrap();
                assert_eq!(key_set(&fast), key_set(&slow), "seed {seed} {fam:?}");
                assert!(fast.iter().all(|c| is_cycle_copy(&h, c).unwrap()));
            }
        }
    }

    #[test]
    fn k38_linear_four_cycles() {
        let h = complete(8, 3).unwrap();
        let fam = CycleFamily::linear(3, 4).unwrap();
        let fast = enumerate_cycles(&h, &fam, usize::MAX).unwrap().copies;
        assert_eq!(key_set(&fast), key_set(&brute_force_oracle(&h, &fam).unwrap()));
        assert_eq!(count_cycles(&h, &fam).unwrap(), fast.len() as u128);
    }

    #[test]
    fn dihedral_canonical_form() {
        assert_eq!(canonical_cycle(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(canonical_cycle(&[3, 2, 1]), vec![1, 2, 3]);
        assert_eq!(canonical_cycle(&[2, 4, 1, 3]), vec![1, 3, 2, 4]);
    }
}
