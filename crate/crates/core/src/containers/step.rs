use super::{absorb, ContainerFamily, ContainerParams, Verification};
use crate::hypergraph::EdgeId;
use crate::supersat::CycleCollection;
use crate::{Error, Result};

/// Checks `Δ_j(S) ≤ (B/v)^{j-1}·e(S)/L` for every `1 ≤ j ≤ |copy|`, with
/// `v` the number of host edges. Equality passes up to rounding.
pub fn check_container_hypothesis(s: &CycleCollection, b: f64, l: f64) -> Result<()> {
    if s.is_empty() {
        return Err(Error::HypothesisViolated {
            j: 1,
            delta: 0,
            bound: 0.0,
        });
    }
    let v = s.host_edge_count as f64;
    for (i, &d) in s.delta_profile().iter().enumerate() {
        let bound = (b / v).powi(i as i32) * s.len() as f64 / l;
        if d as f64 > bound * (1.0 + 1e-9) {
            return Err(Error::HypothesisViolated { j: i + 1, delta: d, bound });
        }
    }
    Ok(())
}

/// The largest `L` and then the smallest `B` meeting the hypothesis:
/// `L = e(S)/Δ_1`, `B = max_j v·(Δ_j/Δ_1)^{1/(j-1)}`.
pub fn fit_container_params(s: &CycleCollection) -> Result<(f64, f64)> {
    let p = s.delta_profile();
    if s.is_empty() || p.is_empty() {
        return Err(Error::HypothesisViolated {
            j: 1,
            delta: 0,
            bound: 0.0,
        });
    }
    let v = s.host_edge_count as f64;
    let l = s.len() as f64 / p[0] as f64;
    let b = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &d)| v * (d as f64 / p[0] as f64).powf(1.0 / i as f64))
        .fold(f64::MIN_POSITIVE, f64::max);
    Ok((b, l))
}

/// One application of the container lemma to `S`.
///
/// Branches on the ground element of largest degree among the surviving
/// copies (lowest id on ties): leave it out, or put it in. Putting an element
/// in forces out the last free element of every copy it would complete. A
/// branch becomes a container (everything not forced or chosen out) once
/// `⌈εL⌉` elements are out.
pub fn container_step(s: &CycleCollection, b: f64, l: f64, epsilon: f64, cap: usize) -> Result<ContainerFamily> {
    if !(epsilon > 0.0 && epsilon <= 1.0) || !(b > 0.0) || !(l > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need B, L > 0 and 0 < ε <= 1, got B = {b}, L = {l}, ε = {epsilon}"
        )));
    }
    check_container_hypothesis(s, b, l)?;
    let ground = s.host_edge_count;
    let mut copies: Vec<Vec<EdgeId>> = s.copies.iter().map(|c| c.sorted_edge_ids()).collect();
    copies.sort_unstable();
    copies.dedup();
    let mut member: Vec<Vec<usize>> = vec![Vec::new(); ground];
    for (i, c) in copies.iter().enumerate() {
        for &e in c {
            member[e].push(i);
        }
    }
    let need = (epsilon * l).ceil() as usize;
    let mut deg = vec![0u32; ground];
    for (e, m) in member.iter().enumerate() {
        deg[e] = m.len() as u32;
    }
    let root = Node {
        status: vec![Status::Free; ground],
        alive: vec![true; copies.len()],
        free: copies.iter().map(|c| c.len() as u32).collect(),
        deg,
        out: 0,
    };
    let mut b_ = Brancher {
        copies: &copies,
        member: &member,
        need,
        cap,
        found: Vec::new(),
    };
    b_.go(root)?;
    let containers = absorb(ground, b_.found);
    let min_omitted = containers.iter().map(|c| ground - c.len()).min().unwrap_or(ground);
    Ok(ContainerFamily {
        ground,
        containers,
        params: ContainerParams {
            b: Some(b),
            l: Some(l),
            epsilon,
        },
        depth: 1,
        min_omitted,
        achieved_epsilon: Some(min_omitted as f64 / l),
        log_size_bound: Some((ground as f64 / b).ln() * b / epsilon),
        complete: true,
        stalled: 0,
        steps: Vec::new(),
        verification: Verification::NotRun,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Free,
    In,
    Out,
}

#[derive(Clone)]
struct Node {
    status: Vec<Status>,
    /// Copies with no element out.
    alive: Vec<bool>,
    /// Free elements per copy.
    free: Vec<u32>,
    /// Alive copies through each element.
    deg: Vec<u32>,
    out: usize,
}

struct Brancher<'a> {
    copies: &'a [Vec<EdgeId>],
    member: &'a [Vec<usize>],
    need: usize,
    cap: usize,
    found: Vec<Vec<EdgeId>>,
}

impl Brancher<'_> {
    fn go(&mut self, node: Node) -> Result<()> {
        let pick = (0..node.status.len())
            .filter(|&e| node.status[e] == Status::Free && node.deg[e] > 0)
            .max_by(|&a, &b| node.deg[a].cmp(&node.deg[b]).then(b.cmp(&a)));
        let Some(v) = pick.filter(|_| node.out < self.need) else {
            if self.found.len() == self.cap {
                return Err(Error::Truncated { cap: self.cap });
            }
            self.found.push((0..node.status.len()).filter(|&e| node.status[e] != Status::Out).collect());
            return Ok(());
        };
        let mut keep = node.clone();
        self.set_out(&mut keep, v);
        self.go(keep)?;
        let mut take = node;
        if self.set_in(&mut take, v) {
            self.go(take)?;
        }
        Ok(())
    }

    fn set_out(&self, node: &mut Node, e: EdgeId) {
        node.status[e] = Status::Out;
        node.out += 1;
        for &c in &self.member[e] {
            node.free[c] -= 1;
            if node.alive[c] {
                node.alive[c] = false;
                for &x in &self.copies[c] {
                    node.deg[x] -= 1;
                }
            }
        }
    }

    /// False if some copy would lie entirely inside.
    fn set_in(&self, node: &mut Node, e: EdgeId) -> bool {
        node.status[e] = Status::In;
        for &c in &self.member[e] {
            node.free[c] -= 1;
        }
        for &c in &self.member[e] {
            if !node.alive[c] {
                continue;
            }
            match node.free[c] {
                0 => return false,
                1 => {
                    let last = *self.copies[c].iter().find(|&&x| node.status[x] == Status::Free).expect("one free");
                    self.set_out(node, last);
                }
                _ => {}
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containers::verify_covering_exhaustive;
    use crate::cycles::{enumerate_cycles, CycleCopy, CycleFamily, CycleKind};
    use crate::hypergraph::complete;

    fn all_c4(n: usize) -> CycleCollection {
        let h = complete(n, 2).unwrap();
        CycleCollection {
            copies: enumerate_cycles(&h, &CycleFamily::linear(2, 4).unwrap(), 10_000).unwrap().copies,
            ..CycleCollection::empty(CycleKind::Linear, 2, 4, h.edge_count())
        }
    }

    #[test]
    fn empty_collection_is_rejected() {
        let s = CycleCollection::empty(CycleKind::Linear, 2, 4, 6);
        assert!(matches!(container_step(&s, 1.0, 1.0, 0.1, 100), Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn hypothesis_gate() {
        let s = all_c4(4);
        // Δ = [2, 2, 1, 1] over 6 edges and 3 copies
        assert_eq!(s.delta_profile(), vec![2, 2, 1, 1]);
        assert!(check_container_hypothesis(&s, 6.0, 1.5).is_ok());
        assert!(matches!(
            check_container_hypothesis(&s, 6.0, 1.6),
            Err(Error::HypothesisViolated { j: 1, .. })
        ));
        assert!(matches!(
            check_container_hypothesis(&s, 5.0, 1.5),
            Err(Error::HypothesisViolated { j: 2, .. })
        ));
        assert!(check_container_hypothesis(&s, 4.2, 1.0).is_ok());
        assert!(matches!(
            check_container_hypothesis(&s, 4.1, 1.0),
            Err(Error::HypothesisViolated { j: 4, .. })
        ));
        let (b, l) = fit_container_params(&s).unwrap();
        assert!(check_container_hypothesis(&s, b, l).is_ok());
        assert!((l - 1.5).abs() < 1e-12 && (b - 6.0).abs() < 1e-12);
    }

    #[test]
    fn k4_and_k5_cover_everything() {
        for n in [4, 5] {
            let s = all_c4(n);
            let (b, l) = fit_container_params(&s).unwrap();
            let fam = container_step(&s, b, l, 0.1, 10_000).unwrap();
            let need = (0.1 * l).ceil() as usize;
            assert!(fam.containers.iter().all(|c| s.host_edge_count - c.len() >= need));
            let report = verify_covering_exhaustive(&fam, &s).unwrap();
            assert_eq!(report.failures, 0, "n = {n}");
        }
    }

    #[test]
    fn disjoint_single_edge_copies() {
        // two copies {0} and {1}: every container drops both
        let s = CycleCollection {
            copies: vec![
                CycleCopy {
                    kind: CycleKind::Berge,
                    edge_ids: vec![0],
                    witness: vec![],
                },
                CycleCopy {
                    kind: CycleKind::Berge,
                    edge_ids: vec![1],
                    witness: vec![],
                },
            ],
            ..CycleCollection::empty(CycleKind::Berge, 2, 1, 3)
        };
        let fam = container_step(&s, 1.0, 2.0, 1.0, 100).unwrap();
        assert_eq!(fam.containers, vec![vec![2]]);
        assert_eq!(fam.min_omitted, 2);
    }
}
