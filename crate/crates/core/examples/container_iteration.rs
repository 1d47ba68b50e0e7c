//! Iterated containers from K_8 along the geometric schedule, audited on
//! random maximal C4-free graphs.

use turanlab::containers::{iterate_containers, schedule, schedule_ratio, verify_covering_sampled, IterateConfig};
use turanlab::cycles::CycleFamily;
use turanlab::hypergraph::complete;
use turanlab::supersat::BoundRegime;

fn main() -> turanlab::Result<()> {
    let cfg = IterateConfig::default();
    let n = 8;
    let t0 = 28.0 / (n as f64).powf(1.5);
    let ratio = schedule_ratio(n as f64, 2, cfg.epsilon);
    let plan = schedule(BoundRegime::Graph, n as f64, 2, 2, t0 * ratio * ratio, cfg.epsilon)?;
    println!("t0 = {t0:.3}, ratio {ratio:.3}, {} rounds planned", plan.m());
    let host = complete(n, 2)?;
    let c4 = CycleFamily::linear(2, 4)?;
    for rounds in 1..=2 {
        let target = t0 * ratio.powi(rounds);
        let fam = iterate_containers(n, 2, 2, target, BoundRegime::Graph, &cfg)?;
        let audit = verify_covering_sampled(&fam, &host, &c4, 2000, 1)?;
        let largest = fam.containers.iter().map(|c| c.len()).max().unwrap_or(0);
        println!(
            "target {target:.3}: {} containers (largest {largest} edges), depth {}, complete {}, {}/{} samples uncovered",
            fam.len(),
            fam.depth,
            fam.complete,
            audit.failures,
            audit.checked
        );
        let first = &fam.steps[0];
        println!(
            "    {} steps; first on {} edges with B = {:.2}, L = {:.2}, c = {:.2}",
            fam.steps.len(),
            first.edges,
            first.b,
            first.l,
            first.implied_c
        );
    }
    Ok(())
}
