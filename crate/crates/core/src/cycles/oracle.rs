//! Brute-force ground truth: test every edge subset of the right size.

use std::collections::BTreeMap;

use super::{copy_key, BergeIdentity, CopyKey, CycleCopy, CycleFamily, CycleKind, FamilyKind};
use crate::combinatorics::{binomial, permutations, KSubsets};
use crate::hypergraph::{EdgeId, Hypergraph, Vertex};
use crate::{Error, Result};

/// Default bound on the number of edge subsets inspected.
pub const DEFAULT_ORACLE_CAP: u128 = 5_000_000;

pub fn brute_force_oracle(h: &Hypergraph, fam: &CycleFamily) -> Result<Vec<CycleCopy>> {
    brute_force_oracle_with(h, fam, DEFAULT_ORACLE_CAP, BergeIdentity::Witness)
}

/// Copies sorted by identity key.
pub fn brute_force_oracle_with(
    h: &Hypergraph,
    fam: &CycleFamily,
    cap: u128,
    identity: BergeIdentity,
) -> Result<Vec<CycleCopy>> {
    fam.check_host(h)?;
    let m = h.edge_count();
    let size: u128 = fam
        .lengths()
        .map(|len| binomial(m as u64, len as u64))
        .fold(0u128, u128::saturating_add);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    let mut found: BTreeMap<CopyKey, CycleCopy> = BTreeMap::new();
    for len in fam.lengths() {
        for subset in KSubsets::new(m, len) {
            match fam.kind {
                FamilyKind::Linear => {
                    if let Some(c) = linear_witness(h, &subset) {
                        found.entry(copy_key(&c, identity)).or_insert(c);
                    }
                }
                _ => berge_witnesses(h, &subset, |c| {
                    found.entry(copy_key(&c, identity)).or_insert(c);
                }),
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Tests whether the edge set is a linear cycle: pairwise intersections of
/// size at most one, an intersection graph that is a single cycle, and
/// `ℓ(r-1)` vertices overall. Returns a witness when it is.
fn linear_witness(h: &Hypergraph, ids: &[EdgeId]) -> Option<CycleCopy> {
    let len = ids.len();
    let r = h.r();
    if h.spanned_vertex_count(ids) != len * (r - 1) {
        return None;
    }
    let mut nbrs: Vec<Vec<(usize, Vertex)>> = vec![Vec::new(); len];
    for a in 0..len {
        for b in a + 1..len {
            let common: Vec<Vertex> = h
                .edge(ids[a])
                .iter()
                .filter(|v| h.edge(ids[b]).contains(v))
                .copied()
                .collect();
            match common.len() {
                0 => {}
                1 => {
                    nbrs[a].push((b, common[0]));
                    nbrs[b].push((a, common[0]));
                }
                _ => return None,
            }
        }
    }
    if nbrs.iter().any(|n| n.len() != 2) {
        return None;
    }
    // walk the cycle from edge 0
    let mut order = vec![0usize];
    let mut junctions = vec![nbrs[0][1].1, nbrs[0][0].1];
    let (mut prev, mut cur) = (0usize, nbrs[0][0].0);
    while cur != 0 {
        order.push(cur);
        let &(next, via) = nbrs[cur].iter().find(|(x, _)| *x != prev).unwrap();
        if next != 0 {
            junctions.push(via);
        }
        prev = cur;
        cur = next;
        if order.len() > len {
            return None;
        }
    }
    if order.len() != len {
        return None;
    }
    let mut witness = Vec::with_capacity(len * (r - 1));
    for (i, &pos) in order.iter().enumerate() {
        let entry = junctions[i];
        let exit = junctions[(i + 1) % len];
        witness.extend(h.edge(ids[pos]).iter().filter(|&&v| v != entry && v != exit));
        witness.push(exit);
    }
    Some(CycleCopy {
        kind: CycleKind::Linear,
        edge_ids: order.iter().map(|&p| ids[p]).collect(),
        witness,
    })
}

/// Every Berge witness on exactly this edge set: all cyclic orders of the
/// edges (first edge fixed) and all distinct core choices.
fn berge_witnesses(h: &Hypergraph, ids: &[EdgeId], mut emit: impl FnMut(CycleCopy)) {
    let k = ids.len();
    for rest in permutations(&ids[1..]) {
        let mut order = vec![ids[0]];
        order.extend(rest);
        // core v_i sits in e_i ∩ e_{i+1}; v_0 = v_k in e_k ∩ e_1
        let slots: Vec<Vec<Vertex>> = (0..k)
            .map(|i| {
                let a = h.edge(order[i]);
                let b = h.edge(order[(i + 1) % k]);
                a.iter().filter(|v| b.contains(v)).copied().collect()
            })
            .collect();
        let mut cores = Vec::with_capacity(k);
        choose_cores(&slots, &mut cores, &mut |cores| {
            emit(CycleCopy {
                kind: CycleKind::Berge,
                edge_ids: order.clone(),
                witness: cores.to_vec(),
            })
        });
    }
}

fn choose_cores(slots: &[Vec<Vertex>], cores: &mut Vec<Vertex>, f: &mut impl FnMut(&[Vertex])) {
    if cores.len() == slots.len() {
        f(cores);
        return;
    }
    for &v in &slots[cores.len()] {
        if !cores.contains(&v) {
            cores.push(v);
            choose_cores(slots, cores, f);
            cores.pop();
        }
    }
}
