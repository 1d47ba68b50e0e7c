//! Splits a random 3-partite host into a high-codegree core and buckets
//! indexed by part pattern and codegree scale.

use turanlab::hypergraph::{best_partite_subgraph, gen_gnrp};
use turanlab::supersat::codegree_dichotomy_partition;

fn main() -> turanlab::Result<()> {
    let h = gen_gnrp(15, 3, 0.35, 9)?;
    let (part, hp) = best_partite_subgraph(&h, 1, 32)?;
    println!("host {} edges, partite part {} edges", h.edge_count(), hp.edge_count());
    for a in [2.0, 4.0, 6.0] {
        let out = codegree_dichotomy_partition(&hp, &part, a)?;
        println!(
            "A = {a}: core {} edges, {} removals, {} bucketed edges",
            out.f.edge_count(),
            out.removals.len(),
            out.bucketed_edge_count()
        );
        for b in &out.buckets {
            println!("    tau {:?}, 2^{}: {} edges", b.tau, b.a, b.edge_ids.len());
        }
    }
    Ok(())
}
