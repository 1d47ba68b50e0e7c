//! The balanced supersaturation recursion.
//!
//! At uniformity r ≥ 3 the host is cut down to an r-partite subgraph `H′`,
//! split by the codegree dichotomy at `threshold_a`, and then either
//! * Case 1: the core `F` keeps at least `e(H′)/polylog` edges and greedy
//!   expansion runs on it, or
//! * Case 2: the largest eligible bucket `F_{τ,a}` is projected to its
//!   τ-shadow `G`, the recursion runs on `G` and the result is lifted back
//!   by shadow extension.
//!
//! At r = 2 all `C_{2ℓ}` are enumerated and pruned until the Δ-profile has
//! the graph-case shape.

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{
    codegree_dichotomy_partition, greedy_expand_with, shadow_extend, threshold_a, verify_balance, BalanceBound,
    BalanceReport, BoundRegime, CycleCollection, ExpandConfig, ExpandMode,
};
use crate::combinatorics::{factorial, for_each_subset};
use crate::cycles::{enumerate_cycles, CycleFamily, CycleKind, DEFAULT_ENUMERATION_CAP};
use crate::hypergraph::{best_partite_subgraph, EdgeId, Hypergraph, Partition, Vertex, DEFAULT_PARTITION_ATTEMPTS};
use crate::rng;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupersatConfig {
    /// The constant K of the density precondition.
    pub k: f64,
    pub seed: u64,
    /// Copy cap for every enumeration along the way.
    pub cap: usize,
    /// Random partitions drawn at the top level; the largest partite
    /// subgraph is kept.
    pub partition_attempts: usize,
    /// Largest n for which Case 1 expands exhaustively; sampled above.
    pub exhaustive_max_n: usize,
    /// Runs drawn by sampled expansion.
    pub samples: usize,
    /// Case-1 divisor; `None` means `max(ln n, 2)^{r-2}`.
    pub case1_divisor: Option<f64>,
    /// Constant used when pruning the graph base case; `None` means 2ℓ.
    pub base_c: Option<f64>,
    /// Check the density precondition on the input.
    pub enforce_precondition: bool,
}

impl Default for SupersatConfig {
    fn default() -> Self {
        SupersatConfig {
            k: 1.0,
            seed: 0,
            cap: DEFAULT_ENUMERATION_CAP,
            partition_attempts: DEFAULT_PARTITION_ATTEMPTS,
            exhaustive_max_n: 15,
            samples: 20_000,
            case1_divisor: None,
            base_c: None,
            enforce_precondition: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BucketSummary {
    pub tau: Vec<usize>,
    pub a: u32,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum LevelCase {
    /// Graph level: enumerate and prune.
    Base { enumerated: usize, pruned: usize, rounds: usize },
    Case1 {
        core_edges: usize,
        expansion_t: usize,
        sampled: bool,
    },
    Case2 {
        tau: Vec<usize>,
        a: u32,
        bucket_edges: usize,
        shadow_edges: usize,
        cutoff: Option<f64>,
    },
    /// No bucket cleared the cutoff.
    Case2Exhausted { cutoff: Option<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Level {
    pub r: usize,
    pub n: usize,
    pub edges: usize,
    pub t: f64,
    pub partite_edges: Option<usize>,
    pub threshold: Option<f64>,
    pub core_edges: Option<usize>,
    pub buckets: Vec<BucketSummary>,
    pub case: Option<LevelCase>,
    pub output: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub variant: CycleKind,
    pub ell: usize,
    pub seed: u64,
    /// Top level first.
    pub levels: Vec<Level>,
}

#[derive(Debug, Clone)]
pub struct SupersatOutcome {
    pub collection: CycleCollection,
    /// The theorem's bound with `c` fitted to the output.
    pub bound: BalanceBound,
    pub report: BalanceReport,
    pub trace: Trace,
}

/// `t` as the theorems measure it: `e/n^{r-1}` for linear cycles with
/// r ≥ 3, `e/n^{1+1/ℓ}` for graphs and for Berge cycles.
pub fn density_t(kind: CycleKind, r: usize, ell: usize, n: usize, edges: usize) -> f64 {
    let n = n as f64;
    let scale = match (kind, r) {
        (CycleKind::Linear, r) if r >= 3 => n.powi(r as i32 - 1),
        _ => n.powf(1.0 + 1.0 / ell as f64),
    };
    edges as f64 / scale
}

/// Minimum edge count the precondition asks for.
pub fn required_edges(kind: CycleKind, r: usize, ell: usize, n: usize, k: f64) -> f64 {
    let nf = n as f64;
    match (kind, r) {
        (CycleKind::Linear, r) if r >= 3 => k * nf.powi(r as i32 - 1),
        (CycleKind::Berge, r) if r >= 3 => k * nf.ln().powi(r as i32 - 2) * nf.powf(1.0 + 1.0 / ell as f64),
        _ => k * nf.powf(1.0 + 1.0 / ell as f64),
    }
}

pub fn balanced_supersat(h: &Hypergraph, ell: usize, variant: CycleKind, cfg: &SupersatConfig) -> Result<SupersatOutcome> {
    if ell < 2 {
        return Err(Error::InvalidParameter("ell must be at least 2".into()));
    }
    let (n, r) = (h.n(), h.r());
    if cfg.enforce_precondition {
        let required = required_edges(variant, r, ell, n, cfg.k);
        if (h.edge_count() as f64) < required {
            return Err(Error::TooSparse {
                edges: h.edge_count(),
                required,
            });
        }
    }
    let mut run = Driver {
        ell,
        kind: variant,
        cfg,
        levels: Vec::new(),
    };
    let mut collection = run.level(h, None, 0)?;
    if variant == CycleKind::Berge && collection.kind == CycleKind::Linear {
        collection.copies = collection.copies.iter().map(|c| c.project_to_berge(r)).collect();
        collection.kind = CycleKind::Berge;
    }
    let t = density_t(variant, r, ell, n, h.edge_count());
    let bound = BalanceBound::new(BoundRegime::for_family(variant, r), r, ell, n, t);
    let report = verify_balance(&collection, &bound);
    Ok(SupersatOutcome {
        collection,
        bound: bound.with_c(report.implied_c),
        report,
        trace: Trace {
            variant,
            ell,
            seed: cfg.seed,
            levels: run.levels,
        },
    })
}

struct Driver<'c> {
    ell: usize,
    kind: CycleKind,
    cfg: &'c SupersatConfig,
    levels: Vec<Level>,
}

impl Driver<'_> {
    /// Collection over `h`'s edge ids.
    fn level(&mut self, h: &Hypergraph, inherited: Option<Partition>, depth: u64) -> Result<CycleCollection> {
        let (n, r) = (h.n(), h.r());
        let t = density_t(self.kind, r, self.ell, n, h.edge_count());
        let idx = self.levels.len();
        self.levels.push(Level {
            r,
            n,
            edges: h.edge_count(),
            t,
            partite_edges: None,
            threshold: None,
            core_edges: None,
            buckets: Vec::new(),
            case: None,
            output: 0,
        });
        let out = if r == 2 {
            self.base(h, t, idx)?
        } else {
            self.split(h, t, inherited, depth, idx)?
        };
        self.levels[idx].output = out.len();
        Ok(out)
    }

    fn base(&mut self, g: &Hypergraph, t: f64, idx: usize) -> Result<CycleCollection> {
        let len = 2 * self.ell;
        let fam = CycleFamily::linear(2, len)?;
        let found = enumerate_cycles(g, &fam, self.cfg.cap)?;
        if found.truncated {
            return Err(Error::Truncated { cap: self.cfg.cap });
        }
        let mut s = CycleCollection {
            copies: found.copies,
            ..CycleCollection::empty(CycleKind::Linear, 2, len, g.edge_count())
        };
        let enumerated = s.len();
        let c = self.cfg.base_c.unwrap_or(len as f64);
        let bound = BalanceBound::new(BoundRegime::Graph, 2, self.ell, g.n(), t).with_c(c);
        let rounds = prune_to_bound(&mut s, &bound);
        self.levels[idx].case = Some(LevelCase::Base {
            enumerated,
            pruned: enumerated - s.len(),
            rounds,
        });
        Ok(s)
    }

    fn split(
        &mut self,
        h: &Hypergraph,
        t: f64,
        inherited: Option<Partition>,
        depth: u64,
        idx: usize,
    ) -> Result<CycleCollection> {
        let (n, r, ell) = (h.n(), h.r(), self.ell);
        let sampled;
        let (p, hp): (Partition, &Hypergraph) = match inherited {
            Some(p) => (p, h),
            None => {
                let (p, sub) = best_partite_subgraph(h, rng::derive(self.cfg.seed, depth), self.cfg.partition_attempts)?;
                sampled = sub;
                (p, &sampled)
            }
        };
        let a_threshold = threshold_a(self.kind, r, ell, t, n as f64);
        let split = codegree_dichotomy_partition(hp, &p, a_threshold)?;
        let divisor = self
            .cfg
            .case1_divisor
            .unwrap_or_else(|| (n as f64).ln().max(2.0).powi(r as i32 - 2));
        {
            let lv = &mut self.levels[idx];
            lv.partite_edges = Some(hp.edge_count());
            lv.threshold = Some(a_threshold);
            lv.core_edges = Some(split.f.edge_count());
            lv.buckets = split
                .buckets
                .iter()
                .map(|b| BucketSummary {
                    tau: b.tau.clone(),
                    a: b.a,
                    edges: b.edge_ids.len(),
                })
                .collect();
        }

        if !split.f.is_empty() && split.f.edge_count() as f64 >= hp.edge_count() as f64 / divisor {
            let expansion_t = (a_threshold.ceil() as usize).max(1);
            let sampled = n > self.cfg.exhaustive_max_n;
            let mode = if sampled {
                ExpandMode::Sampled {
                    count: self.cfg.samples,
                    seed: rng::derive(self.cfg.seed, 1 << 32 | depth),
                }
            } else {
                ExpandMode::Exhaustive
            };
            let cfg = ExpandConfig {
                mode,
                cap: self.cfg.cap,
                enforce_threshold: false,
            };
            let mut s = greedy_expand_with(&split.f, expansion_t, ell, &cfg)?;
            if self.kind == CycleKind::Berge {
                s.copies = s.copies.iter().map(|c| c.project_to_berge(r)).collect();
                s.kind = CycleKind::Berge;
            }
            self.levels[idx].case = Some(LevelCase::Case1 {
                core_edges: split.f.edge_count(),
                expansion_t,
                sampled,
            });
            return remap(s, &split.f, h);
        }

        let cutoff = match self.kind {
            CycleKind::Linear if r == 3 => Some(t / 9.0),
            CycleKind::Linear => Some(factorial(r) as f64 * t / (4.0 * (r as f64).powi(r as i32))),
            CycleKind::Berge => None,
        };
        let mut best: Option<&super::Bucket> = None;
        for b in &split.buckets {
            let eligible = cutoff.is_none_or(|c| (1u64 << b.a) as f64 > c);
            if eligible && best.is_none_or(|cur| b.edge_ids.len() > cur.edge_ids.len()) {
                best = Some(b);
            }
        }
        let Some(bucket) = best else {
            self.levels[idx].case = Some(LevelCase::Case2Exhausted { cutoff });
            return Ok(CycleCollection::empty(self.kind, r, 2 * ell, h.edge_count()));
        };
        let f_prime = &bucket.graph;
        let (g, g_parts) = tau_shadow(f_prime, &p, &bucket.tau)?;
        self.levels[idx].case = Some(LevelCase::Case2 {
            tau: bucket.tau.clone(),
            a: bucket.a,
            bucket_edges: f_prime.edge_count(),
            shadow_edges: g.edge_count(),
            cutoff,
        });
        let s_prime = self.level(&g, Some(g_parts), depth + 1)?;
        let lifted = shadow_extend(&s_prime, &g, f_prime, self.kind == CycleKind::Linear, self.cfg.cap)?;
        remap(lifted, f_prime, h)
    }
}

/// The (r-1)-graph of τ-shadows of a partite host, with the partition it
/// inherits (vertices of the dropped part join part 0, where they are
/// isolated).
fn tau_shadow(f: &Hypergraph, p: &Partition, tau: &[usize]) -> Result<(Hypergraph, Partition)> {
    let mut edges: Vec<Vec<Vertex>> = f
        .edges()
        .map(|e| e.iter().copied().filter(|&v| tau.contains(&p.part_of(v))).collect())
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let g = Hypergraph::new(f.n(), f.r() - 1, edges)?;
    let assignment = p
        .assignment
        .iter()
        .map(|part| tau.iter().position(|x| x == part).unwrap_or(0))
        .collect();
    Ok((g, Partition::from_assignment(tau.len(), assignment)?))
}

/// Rewrites edge ids of `from` into ids of `to` by vertex tuple.
fn remap(mut s: CycleCollection, from: &Hypergraph, to: &Hypergraph) -> Result<CycleCollection> {
    for c in &mut s.copies {
        for id in &mut c.edge_ids {
            *id = to
                .edge_id(from.edge(*id))
                .ok_or_else(|| Error::InvalidParameter("edge missing from the parent host".into()))?;
        }
    }
    s.host_edge_count = to.edge_count();
    Ok(s)
}

/// Drops copies through over-loaded edge sets until every `Δ_j`, j < 2ℓ,
/// meets the bound taken at the enumerated size (re-evaluating at the
/// shrinking size would chase the average down to nothing). Returns the
/// number of rounds.
fn prune_to_bound(s: &mut CycleCollection, bound: &BalanceBound) -> usize {
    let len = s.length;
    let start = s.len();
    let mut rounds = 0;
    'rounds: loop {
        let sets: Vec<Vec<EdgeId>> = s.copies.iter().map(|c| c.sorted_edge_ids()).collect();
        for j in 1..len {
            let limit = bound.bound(j, start).floor().max(0.0) as usize;
            let mut loads: FxHashMap<Vec<EdgeId>, Vec<usize>> = FxHashMap::default();
            for (i, set) in sets.iter().enumerate() {
                for_each_subset(set, j, |sub| loads.entry(sub.to_vec()).or_default().push(i));
            }
            let worst = loads
                .into_iter()
                .filter(|(_, holders)| holders.len() > limit)
                .max_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| b.0.cmp(&a.0)));
            if let Some((_, holders)) = worst {
                let excess = holders.len() - limit;
                let mut drop = vec![false; s.copies.len()];
                for &i in holders.iter().rev().take(excess) {
                    drop[i] = true;
                }
                let mut k = 0;
                s.copies.retain(|_| {
                    k += 1;
                    !drop[k - 1]
                });
                rounds += 1;
                continue 'rounds;
            }
        }
        return rounds;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete;

    #[test]
    fn graph_base_on_k8() {
        let h = complete(8, 2).unwrap();
        let out = balanced_supersat(&h, 2, CycleKind::Linear, &SupersatConfig::default()).unwrap();
        let p = out.collection.delta_profile();
        assert_eq!(p[3], 1);
        assert!(out.collection.all_valid(&h).unwrap());
        assert!(matches!(out.trace.levels[0].case, Some(LevelCase::Base { .. })));
        assert!(out.report.implied_c.is_finite() && out.report.implied_c > 0.0);
        assert!((verify_balance(&out.collection, &out.bound).max_ratio - 1.0).abs() < 1e-9);
    }

    #[test]
    fn complete_three_graph() {
        let h = complete(12, 3).unwrap();
        let cfg = SupersatConfig {
            seed: 3,
            ..SupersatConfig::default()
        };
        let out = balanced_supersat(&h, 2, CycleKind::Linear, &cfg).unwrap();
        assert!(!out.collection.is_empty());
        assert!(out.collection.all_valid(&h).unwrap());
        assert_eq!(out.collection.delta_profile()[3], 1);
    }

    #[test]
    fn star_is_too_sparse_or_empty() {
        let edges: Vec<Vec<Vertex>> = (1..10u32)
            .flat_map(|a| (a + 1..10).map(move |b| vec![0, a, b]))
            .collect();
        let star = Hypergraph::new(10, 3, edges).unwrap();
        assert!(matches!(
            balanced_supersat(&star, 2, CycleKind::Linear, &SupersatConfig::default()),
            Err(Error::TooSparse { .. })
        ));
        let cfg = SupersatConfig {
            enforce_precondition: false,
            ..SupersatConfig::default()
        };
        let out = balanced_supersat(&star, 2, CycleKind::Linear, &cfg).unwrap();
        assert!(out.collection.is_empty());
    }

    #[test]
    fn forced_case_two_lifts_valid_copies() {
        let h = complete(12, 3).unwrap();
        for kind in [CycleKind::Linear, CycleKind::Berge] {
            let cfg = SupersatConfig {
                seed: 1,
                case1_divisor: Some(0.5),
                enforce_precondition: false,
                ..SupersatConfig::default()
            };
            let out = balanced_supersat(&h, 2, kind, &cfg).unwrap();
            assert!(out.collection.all_valid(&h).unwrap(), "{kind:?}");
            assert!(out.trace.levels.len() <= 2);
            assert!(out.collection.copies.iter().all(|c| c.kind == kind));
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let h = complete(10, 3).unwrap();
        let cfg = SupersatConfig {
            seed: 11,
            ..SupersatConfig::default()
        };
        let a = balanced_supersat(&h, 2, CycleKind::Linear, &cfg).unwrap();
        let b = balanced_supersat(&h, 2, CycleKind::Linear, &cfg).unwrap();
        assert_eq!(a.collection, b.collection);
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn implied_c_stable_across_seeds() {
        let h = complete(12, 3).unwrap();
        let cs: Vec<f64> = (0..10)
            .map(|seed| {
                let cfg = SupersatConfig {
                    seed,
                    ..SupersatConfig::default()
                };
                balanced_supersat(&h, 2, CycleKind::Linear, &cfg).unwrap().report.implied_c
            })
            .collect();
        let mean = cs.iter().sum::<f64>() / cs.len() as f64;
        assert!(cs.iter().all(|c| c.is_finite() && (c - mean).abs() <= 0.2 * mean), "{cs:?}");
    }
}
