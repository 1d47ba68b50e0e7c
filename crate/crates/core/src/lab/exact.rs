use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::containers::random_maximal_free;
use crate::cycles::{enumerate_cycles, find_copy_through, CycleFamily};
use crate::hypergraph::{EdgeId, Hypergraph};
use crate::rng;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactBudget {
    /// Branch-and-bound nodes before giving up with an interval.
    pub max_nodes: u64,
    /// Copies enumerated before the solver falls back to a partial model.
    pub copy_cap: usize,
    /// Greedy restarts seeding the incumbent.
    pub greedy_restarts: usize,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget {
            max_nodes: 2_000_000,
            copy_cap: 1_000_000,
            greedy_restarts: 8,
        }
    }
}

/// `lower ≤ ex(H, fam) ≤ upper`; `exact` when the search finished.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuranBound {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub nodes: u64,
    /// Distinct copy edge sets the model was built from.
    pub copies: usize,
    /// A free edge set of size `lower`.
    pub witness: Vec<EdgeId>,
}

/// Size of a largest `fam`-free edge subset of `h`.
///
/// The complement of a free set hits every copy, so this is a minimum
/// hitting set over the copies' edge sets: branch on the edges of the copy
/// with fewest undecided edges, bound by a greedy packing of pairwise
/// disjoint unhit copies. When the node budget runs out the incumbent and the
/// root packing bound give a certified interval. When copy enumeration hits
/// its cap the model covers only the copies found; its optimum still bounds
/// `ex` from above, and the lower bound comes from greedy free sets.
pub fn exact_random_turan(h: &Hypergraph, fam: &CycleFamily, budget: &ExactBudget) -> Result<TuranBound> {
    let e = h.edge_count();
    let found = enumerate_cycles(h, fam, budget.copy_cap)?;
    let mut copies: Vec<Vec<EdgeId>> = found.copies.iter().map(|c| c.sorted_edge_ids()).collect();
    copies.sort_unstable();
    copies.dedup();
    if fam.lengths().count() > 1 {
        // supersets of another copy are hit whenever it is
        copies.sort_by_key(|c| c.len());
        let mut minimal: Vec<Vec<EdgeId>> = Vec::with_capacity(copies.len());
        for c in copies {
            if !minimal.iter().any(|m| m.len() < c.len() && m.iter().all(|x| c.binary_search(x).is_ok())) {
                minimal.push(c);
            }
        }
        copies = minimal;
    }

    let mut best_free = greedy_best(h, fam, budget.greedy_restarts, 0x9e37)?;
    let mut solver = Solver::new(e, &copies, budget.max_nodes);
    if !found.truncated {
        let hit = greedy_hitting_set(e, &copies);
        if e - hit.len() > best_free.len() {
            best_free = complement(e, &hit);
        }
    }
    solver.best = if found.truncated { e + 1 } else { e - best_free.len() };
    let mut removed = FixedBitSet::with_capacity(e);
    let mut kept = FixedBitSet::with_capacity(e);
    let root_lb = solver.packing_bound(&kept, &solver.unhit(&removed));
    solver.search(&mut removed, &mut kept, 0);
    let finished = !solver.aborted;
    let hit_lb = if finished { solver.best.min(e) } else { root_lb.unwrap_or(0) };
    if !found.truncated && solver.best < e - best_free.len() {
        best_free = complement(e, &solver.witness);
    }
    let upper = e - hit_lb.min(e);
    Ok(TuranBound {
        lower: best_free.len(),
        upper,
        exact: finished && !found.truncated,
        nodes: solver.nodes,
        copies: copies.len(),
        witness: best_free,
    })
}

/// Size of a maximal free subgraph built by seeded random insertion.
pub fn greedy_turan_lower(h: &Hypergraph, fam: &CycleFamily, seed: u64) -> Result<usize> {
    Ok(random_maximal_free(h, fam, seed)?.count_ones(..))
}

/// Largest of `restarts` seeded maximal free sets.
pub(crate) fn greedy_best(h: &Hypergraph, fam: &CycleFamily, restarts: usize, seed: u64) -> Result<Vec<EdgeId>> {
    let mut best = Vec::new();
    for i in 0..restarts.max(1) {
        let s = random_maximal_free(h, fam, rng::derive(seed, i as u64))?;
        if s.count_ones(..) > best.len() || i == 0 {
            best = s.ones().collect();
        }
    }
    Ok(best)
}

/// Grows a free set to a maximal one, trying the other edges in a seeded
/// random order.
pub fn extend_to_maximal(h: &Hypergraph, fam: &CycleFamily, start: &[EdgeId], seed: u64) -> Result<Vec<EdgeId>> {
    use rand::seq::SliceRandom;
    let mut kept = FixedBitSet::with_capacity(h.edge_count());
    for &e in start {
        kept.insert(e);
    }
    let mut order: Vec<EdgeId> = (0..h.edge_count()).filter(|&e| !kept.contains(e)).collect();
    order.shuffle(&mut rng::from_seed(seed));
    for e in order {
        if find_copy_through(h, fam, Some(&kept), e)?.is_none() {
            kept.insert(e);
        }
    }
    Ok(kept.ones().collect())
}

/// Repeatedly removes the edge in most unhit copies (lowest id on ties).
pub(crate) fn greedy_hitting_set(e: usize, copies: &[Vec<EdgeId>]) -> Vec<EdgeId> {
    let mut member: Vec<Vec<usize>> = vec![Vec::new(); e];
    for (i, c) in copies.iter().enumerate() {
        for &x in c {
            member[x].push(i);
        }
    }
    let mut load: Vec<usize> = member.iter().map(|m| m.len()).collect();
    let mut hit = vec![false; copies.len()];
    let mut out = Vec::new();
    loop {
        let Some((x, &l)) = load.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))) else {
            break;
        };
        if l == 0 {
            break;
        }
        out.push(x);
        for &c in &member[x] {
            if !hit[c] {
                hit[c] = true;
                for &y in &copies[c] {
                    load[y] -= 1;
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn complement(e: usize, removed: &[EdgeId]) -> Vec<EdgeId> {
    let mut mark = vec![false; e];
    for &x in removed {
        mark[x] = true;
    }
    (0..e).filter(|&x| !mark[x]).collect()
}

struct Solver<'a> {
    copies: &'a [Vec<EdgeId>],
    member: Vec<Vec<usize>>,
    max_nodes: u64,
    nodes: u64,
    aborted: bool,
    best: usize,
    witness: Vec<EdgeId>,
}

impl<'a> Solver<'a> {
    fn new(e: usize, copies: &'a [Vec<EdgeId>], max_nodes: u64) -> Self {
        let mut member = vec![Vec::new(); e];
        for (i, c) in copies.iter().enumerate() {
            for &x in c {
                member[x].push(i);
            }
        }
        Solver {
            copies,
            member,
            max_nodes,
            nodes: 0,
            aborted: false,
            best: usize::MAX,
            witness: Vec::new(),
        }
    }

    fn unhit(&self, removed: &FixedBitSet) -> Vec<usize> {
        (0..self.copies.len())
            .filter(|&i| !self.copies[i].iter().any(|&x| removed.contains(x)))
            .collect()
    }

    /// Disjoint unhit copies (on their undecided edges), or `None` when a
    /// copy has no undecided edge left.
    fn packing_bound(&self, kept: &FixedBitSet, unhit: &[usize]) -> Option<usize> {
        let mut order: Vec<(usize, usize)> = Vec::with_capacity(unhit.len());
        for &i in unhit {
            let free = self.copies[i].iter().filter(|&&x| !kept.contains(x)).count();
            if free == 0 {
                return None;
            }
            order.push((free, i));
        }
        order.sort_unstable();
        let mut used = FixedBitSet::with_capacity(kept.len());
        let mut count = 0;
        for (_, i) in order {
            let edges = self.copies[i].iter().filter(|&&x| !kept.contains(x));
            if edges.clone().all(|&x| !used.contains(x)) {
                for &x in edges {
                    used.insert(x);
                }
                count += 1;
            }
        }
        Some(count)
    }

    fn search(&mut self, removed: &mut FixedBitSet, kept: &mut FixedBitSet, depth: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
            return;
        }
        let unhit = self.unhit(removed);
        if unhit.is_empty() {
            if depth < self.best {
                self.best = depth;
                self.witness = removed.ones().collect();
            }
            return;
        }
        let Some(lb) = self.packing_bound(kept, &unhit) else {
            return;
        };
        if depth + lb >= self.best {
            return;
        }
        let &pick = unhit
            .iter()
            .min_by_key(|&&i| self.copies[i].iter().filter(|&&x| !kept.contains(x)).count())
            .expect("nonempty");
        let mut cands: Vec<(usize, EdgeId)> = self.copies[pick]
            .iter()
            .filter(|&&x| !kept.contains(x))
            .map(|&x| {
                let load = self.member[x].iter().filter(|c| unhit.binary_search(c).is_ok()).count();
                (usize::MAX - load, x)
            })
            .collect();
        cands.sort_unstable();
        let mut newly_kept = Vec::new();
        for (_, x) in cands {
            removed.insert(x);
            self.search(removed, kept, depth + 1);
            removed.set(x, false);
            kept.insert(x);
            newly_kept.push(x);
            if self.aborted {
                break;
            }
        }
        for x in newly_kept {
            kept.set(x, false);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::is_family_free;
    use crate::hypergraph::{complete, gen_with_edge_count, Vertex};

    fn brute(h: &Hypergraph, fam: &CycleFamily) -> usize {
        let e = h.edge_count();
        let mut best = 0;
        for mask in 0u32..(1 << e) {
            let ones = mask.count_ones() as usize;
            if ones <= best {
                continue;
            }
            let ids: Vec<EdgeId> = (0..e).filter(|&i| mask >> i & 1 == 1).collect();
            if is_family_free(&h.edge_subgraph(&ids), fam).unwrap() {
                best = ones;
            }
        }
        best
    }

    #[test]
    fn small_known_values() {
        let c4 = CycleFamily::linear(2, 4).unwrap();
        let k5 = complete(5, 2).unwrap();
        let b = exact_random_turan(&k5, &c4, &ExactBudget::default()).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (6, 6, true));
        let host = Hypergraph::new(8, 3, [[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 0]]).unwrap();
        let b = exact_random_turan(&host, &CycleFamily::linear(3, 4).unwrap(), &ExactBudget::default()).unwrap();
        assert_eq!((b.lower, b.upper), (3, 3));
        let star: Vec<Vec<Vertex>> = (1..7u32).flat_map(|a| (a + 1..7).map(move |b| vec![0, a, b])).collect();
        let star = Hypergraph::new(7, 3, star).unwrap();
        let b = exact_random_turan(&star, &CycleFamily::linear(3, 4).unwrap(), &ExactBudget::default()).unwrap();
        assert_eq!(b.lower, star.edge_count());
    }

    #[test]
    fn matches_brute_force() {
        let c4 = CycleFamily::linear(2, 4).unwrap();
        for seed in 0..12 {
            let h = gen_with_edge_count(7, 2, 14, seed).unwrap();
            let b = exact_random_turan(&h, &c4, &ExactBudget::default()).unwrap();
            assert!(b.exact);
            assert_eq!(b.lower, brute(&h, &c4), "seed {seed}");
            assert!(is_family_free(&h.edge_subgraph(&b.witness), &c4).unwrap());
        }
    }

    #[test]
    fn tiny_budget_gives_an_interval() {
        let h = complete(8, 2).unwrap();
        let c4 = CycleFamily::linear(2, 4).unwrap();
        let b = exact_random_turan(
            &h,
            &c4,
            &ExactBudget {
                max_nodes: 3,
                ..ExactBudget::default()
            },
        )
        .unwrap();
        assert!(!b.exact && b.lower <= 11 && 11 <= b.upper);
        let full = exact_random_turan(&h, &c4, &ExactBudget::default()).unwrap();
        assert_eq!((full.lower, full.upper), (11, 11));
    }
}
