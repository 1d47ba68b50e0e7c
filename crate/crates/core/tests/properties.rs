use proptest::prelude::*;

use turanlab::combinatorics::{binomial, KSubsets};
use turanlab::containers::{container_step, fit_container_params, verify_covering_exhaustive};
use turanlab::cycles::{
    brute_force_oracle, copy_key, enumerate_cycles, is_cycle_copy, is_family_free, BergeIdentity, CopyKey, CycleFamily,
    CycleKind,
};
use turanlab::hypergraph::{gen_gnrp, gen_with_edge_count, parse_hg, to_hg_string};
use turanlab::lab::{
    construction_deletion, construction_star, count_free_by_size, count_free_subgraphs, exact_random_turan,
    greedy_turan_lower, ExactBudget, Prediction, DEFAULT_COUNT_CAP,
};
use turanlab::supersat::CycleCollection;
use turanlab::{Hypergraph, Vertex};

fn keys(copies: &[turanlab::cycles::CycleCopy]) -> Vec<CopyKey> {
    let mut k: Vec<CopyKey> = copies.iter().map(|c| copy_key(c, BergeIdentity::Witness)).collect();
    k.sort();
    k
}

/// (host, family) with at most `max_edges` edges on at most 8 vertices.
fn small_instance(max_edges: usize) -> impl Strategy<Value = (Hypergraph, CycleFamily)> {
    (2usize..=3, 0usize..3, any::<u64>(), 0usize..=max_edges, 0usize..4).prop_map(move |(r, fi, seed, m, dn)| {
        let n = 5 + dn;
        let total = binomial(n as u64, r as u64) as usize;
        let h = gen_with_edge_count(n, r, m.min(total), seed).unwrap();
        let fam = match fi {
            0 => CycleFamily::linear(r, 4),
            1 => CycleFamily::linear(r, 3),
            _ => CycleFamily::berge(r, 3),
        }
        .unwrap();
        (h, fam)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hg_round_trip(n in 4usize..10, r in 2usize..4, p in 0.0f64..1.0, seed: u64) {
        let h = gen_gnrp(n, r, p, seed).unwrap();
        prop_assert_eq!(parse_hg(&to_hg_string(&h)).unwrap(), h);
    }

    #[test]
    fn search_equals_oracle((h, fam) in small_instance(14)) {
        let fast = enumerate_cycles(&h, &fam, usize::MAX).unwrap().copies;
        prop_assert_eq!(keys(&fast), keys(&brute_force_oracle(&h, &fam).unwrap()));
        for c in &fast {
            prop_assert!(is_cycle_copy(&h, c).unwrap());
        }
    }

    #[test]
    fn sandwich_and_counting((h, fam) in small_instance(14), seed: u64) {
        let ex = exact_random_turan(&h, &fam, &ExactBudget::default()).unwrap();
        prop_assert!(ex.exact);
        prop_assert_eq!(ex.lower, ex.upper);
        prop_assert!(greedy_turan_lower(&h, &fam, seed).unwrap() <= ex.lower);
        prop_assert!(ex.lower <= h.edge_count());
        prop_assert!(is_family_free(&h.edge_subgraph(&ex.witness), &fam).unwrap());
        let by_size = count_free_by_size(&h, &fam, DEFAULT_COUNT_CAP).unwrap();
        prop_assert!(by_size[ex.lower] >= 1);
        prop_assert!(by_size[ex.lower + 1..].iter().all(|&c| c == 0));
        prop_assert_eq!(count_free_subgraphs(&h, &fam, ex.lower, DEFAULT_COUNT_CAP).unwrap(), by_size[ex.lower]);
    }

    #[test]
    fn exact_is_monotone((h, fam) in small_instance(12), pick: prop::sample::Index) {
        let absent: Vec<Vec<Vertex>> = KSubsets::new(h.n(), h.r())
            .map(|s| s.into_iter().map(|v| v as Vertex).collect::<Vec<_>>())
            .filter(|s| !h.contains_edge(s))
            .collect();
        prop_assume!(!absent.is_empty());
        let bigger = h.with_edge(&absent[pick.index(absent.len())]).unwrap();
        let a = exact_random_turan(&h, &fam, &ExactBudget::default()).unwrap().lower;
        let b = exact_random_turan(&bigger, &fam, &ExactBudget::default()).unwrap().lower;
        prop_assert!(a <= b && b <= a + 1);
    }

    #[test]
    fn constructions_are_free((h, fam) in small_instance(20), v in 0u32..5) {
        let del = construction_deletion(&h, &fam, 1_000_000).unwrap();
        prop_assert!(is_family_free(&del, &fam).unwrap());
        prop_assert!(del.edges().all(|e| h.contains_edge(e)));
        if fam.kind == turanlab::cycles::FamilyKind::Linear {
            prop_assert!(is_family_free(&construction_star(&h, v).unwrap(), &fam).unwrap());
        }
    }

    #[test]
    fn single_step_covers_independent_sets(seed: u64, m in 6usize..13, eps in 0.05f64..1.0) {
        let h = gen_with_edge_count(6, 2, m, seed).unwrap();
        let s = CycleCollection {
            copies: enumerate_cycles(&h, &CycleFamily::linear(2, 4).unwrap(), usize::MAX).unwrap().copies,
            ..CycleCollection::empty(CycleKind::Linear, 2, 4, h.edge_count())
        };
        prop_assume!(!s.is_empty());
        let (b, l) = fit_container_params(&s).unwrap();
        let fam = container_step(&s, b, l, eps, 1_000_000).unwrap();
        prop_assert_eq!(verify_covering_exhaustive(&fam, &s).unwrap().failures, 0);
        let need = (eps * l).ceil() as usize;
        prop_assert!(fam.containers.iter().all(|c| h.edge_count() - c.len() >= need));
    }

    #[test]
    fn prediction_envelopes(r in 2usize..7, ell in 2usize..6, x in 0.0f64..7.0) {
        let p = Prediction::new(r, ell).unwrap();
        let x = x.min(r as f64);
        prop_assert!(p.lower(x) <= p.upper(x) + 1e-12);
        prop_assert!(p.lower(x) <= x + 1e-12);
        let y = (x + 0.01).min(r as f64);
        prop_assert!(p.lower(y) >= p.lower(x) - 1e-12);
        prop_assert!(p.upper(y) >= p.upper(x) - 1e-12);
    }
}

/// `P[X_m ≥ 1] ≤ E[X_m]` on sampled hosts, with m just above the typical
/// random Turán number so that both sides are small.
#[test]
fn markov_harness() {
    let fam = CycleFamily::linear(3, 4).unwrap();
    let (n, p, trials) = (7, 0.5, 150);
    let mut exs = Vec::new();
    let mut counts: Vec<Vec<u128>> = Vec::new();
    for seed in 0..trials {
        let h = gen_gnrp(n, 3, p, seed).unwrap();
        if h.edge_count() > 22 {
            continue;
        }
        exs.push(exact_random_turan(&h, &fam, &ExactBudget::default()).unwrap().lower);
        counts.push(count_free_by_size(&h, &fam, DEFAULT_COUNT_CAP).unwrap());
    }
    let k = exs.len() as f64;
    assert!(k > 50.0);
    for m in 8..20 {
        let freq = exs.iter().filter(|&&e| e >= m).count() as f64 / k;
        let mean = counts.iter().map(|c| c.get(m).copied().unwrap_or(0) as f64).sum::<f64>() / k;
        // a three-standard-error allowance on the frequency
        let se = (freq * (1.0 - freq) / k).sqrt();
        assert!(freq <= mean + 3.0 * se + 1e-12, "m = {m}: frequency {freq} above mean {mean}");
    }
}
