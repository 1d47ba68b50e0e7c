use crate::combinatorics::binomial;
use crate::cycles::{enumerate_cycles, CycleFamily, DEFAULT_ENUMERATION_CAP};
use crate::hypergraph::{EdgeId, Hypergraph};
use crate::{Error, Result};

pub const DEFAULT_COUNT_CAP: u128 = 1 << 32;

/// Number of `fam`-free subgraphs of `h` with exactly `m` edges.
///
/// Edge sets are grown in increasing id order; a branch dies as soon as the
/// chosen edges complete a copy. Refused when `C(e(H), m)` exceeds `cap`.
pub fn count_free_subgraphs(h: &Hypergraph, fam: &CycleFamily, m: usize, cap: u128) -> Result<u128> {
    let e = h.edge_count();
    if m > e {
        return Ok(0);
    }
    let size = binomial(e as u64, m as u64);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    let mut c = Counter::new(h, fam)?;
    c.target = Some(m);
    c.go(0, 0);
    Ok(c.tally[m])
}

/// `X_0, X_1, …, X_{e(H)}`: free subgraph counts by edge count. Refused when
/// `2^{e(H)}` exceeds `cap`.
pub fn count_free_by_size(h: &Hypergraph, fam: &CycleFamily, cap: u128) -> Result<Vec<u128>> {
    let e = h.edge_count();
    let size = if e >= 128 { u128::MAX } else { 1u128 << e };
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    let mut c = Counter::new(h, fam)?;
    c.go(0, 0);
    Ok(c.tally)
}

struct Counter {
    e: usize,
    member: Vec<Vec<usize>>,
    /// Chosen edges per copy.
    filled: Vec<usize>,
    sizes: Vec<usize>,
    target: Option<usize>,
    tally: Vec<u128>,
}

impl Counter {
    fn new(h: &Hypergraph, fam: &CycleFamily) -> Result<Self> {
        let found = enumerate_cycles(h, fam, DEFAULT_ENUMERATION_CAP)?;
        if found.truncated {
            return Err(Error::TooManyCopies {
                cap: DEFAULT_ENUMERATION_CAP,
            });
        }
        let mut copies: Vec<Vec<EdgeId>> = found.copies.iter().map(|c| c.sorted_edge_ids()).collect();
        copies.sort_unstable();
        copies.dedup();
        let e = h.edge_count();
        let mut member = vec![Vec::new(); e];
        for (i, c) in copies.iter().enumerate() {
            for &x in c {
                member[x].push(i);
            }
        }
        Ok(Counter {
            e,
            member,
            filled: vec![0; copies.len()],
            sizes: copies.iter().map(|c| c.len()).collect(),
            target: None,
            tally: vec![0; e + 1],
        })
    }

    /// Counts free sets whose edges below `next` are already decided.
    fn go(&mut self, next: usize, chosen: usize) {
        if let Some(m) = self.target {
            if chosen == m {
                self.tally[m] += 1;
                return;
            }
            if chosen + (self.e - next) < m {
                return;
            }
        } else {
            self.tally[chosen] += 1;
        }
        for x in next..self.e {
            if self.member[x].iter().any(|&c| self.filled[c] + 1 == self.sizes[c]) {
                continue;
            }
            for &c in &self.member[x] {
                self.filled[c] += 1;
            }
            self.go(x + 1, chosen + 1);
            for i in 0..self.member[x].len() {
                let c = self.member[x][i];
                self.filled[c] -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete;

    #[test]
    fn small_counts() {
        let c4 = CycleFamily::linear(2, 4).unwrap();
        let k4 = complete(4, 2).unwrap();
        assert_eq!(count_free_subgraphs(&k4, &c4, 0, DEFAULT_COUNT_CAP).unwrap(), 1);
        assert_eq!(count_free_subgraphs(&k4, &c4, 4, DEFAULT_COUNT_CAP).unwrap(), 12);
        let host = Hypergraph::new(8, 3, [[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 0]]).unwrap();
        let c34 = CycleFamily::linear(3, 4).unwrap();
        assert_eq!(count_free_subgraphs(&host, &c34, 4, DEFAULT_COUNT_CAP).unwrap(), 0);
        assert_eq!(count_free_subgraphs(&host, &c34, 3, DEFAULT_COUNT_CAP).unwrap(), 4);
        let all = count_free_by_size(&k4, &c4, DEFAULT_COUNT_CAP).unwrap();
        assert_eq!(all[4], 12);
        // supersets of some C4: 3·4 by copy, the full set counted thrice
        assert_eq!(all.iter().sum::<u128>(), 64 - (3 * 4 - 3 + 1));
    }

    #[test]
    fn cap_is_enforced() {
        let k8 = complete(8, 2).unwrap();
        assert!(matches!(
            count_free_subgraphs(&k8, &CycleFamily::linear(2, 4).unwrap(), 14, 1000),
            Err(Error::TooLarge { .. })
        ));
    }
}
