//! One container step on the C4 copies of K_5, with the hypothesis check
//! and an exhaustive covering audit.

use turanlab::containers::{check_container_hypothesis, container_step, fit_container_params, verify_covering_exhaustive};
use turanlab::cycles::{enumerate_cycles, CycleFamily, CycleKind};
use turanlab::hypergraph::complete;
use turanlab::supersat::CycleCollection;

fn main() -> turanlab::Result<()> {
    let h = complete(5, 2)?;
    let s = CycleCollection {
        copies: enumerate_cycles(&h, &CycleFamily::linear(2, 4)?, usize::MAX)?.copies,
        ..CycleCollection::empty(CycleKind::Linear, 2, 4, h.edge_count())
    };
    let (b, l) = fit_container_params(&s)?;
    println!("{} copies, Δ = {:?}, fitted B = {b:.3}, L = {l:.3}", s.len(), s.delta_profile());
    check_container_hypothesis(&s, b, l)?;
    if let Err(e) = check_container_hypothesis(&s, b * 0.9, l) {
        println!("B shrunk by 10%: {e}");
    }
    for eps in [0.1, 0.5, 1.0] {
        let fam = container_step(&s, b, l, eps, 1_000_000)?;
        let audit = verify_covering_exhaustive(&fam, &s)?;
        println!(
            "ε = {eps}: {} containers, each omits >= {}, {} free sets checked, {} uncovered",
            fam.len(),
            fam.min_omitted,
            audit.checked,
            audit.failures
        );
    }
    Ok(())
}
