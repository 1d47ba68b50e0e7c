//! `ex(G^3_{n,p}, C^3_4)`: exact value, greedy and the three constructions,
//! plus free-subgraph counts on a tiny host.

use turanlab::cycles::CycleFamily;
use turanlab::hypergraph::{gen_gnrp, gen_with_edge_count};
use turanlab::lab::{
    best_star_vertex, construction_deletion, construction_middle, construction_star, count_free_by_size,
    exact_random_turan, greedy_turan_lower, ExactBudget, DEFAULT_COUNT_CAP,
};

fn main() -> turanlab::Result<()> {
    let fam = CycleFamily::linear(3, 4)?;
    let n = 9;
    for x in [1.5, 2.0, 2.5] {
        let p = (n as f64).powf(x - 3.0);
        let h = gen_gnrp(n, 3, p, 5)?;
        let ex = exact_random_turan(&h, &fam, &ExactBudget::default())?;
        let greedy = greedy_turan_lower(&h, &fam, 1)?;
        let star = construction_star(&h, best_star_vertex(&h))?.edge_count();
        let del = construction_deletion(&h, &fam, 1_000_000)?.edge_count();
        let mid = construction_middle(&h, &fam, p, 2, 1_000_000)?.edge_count();
        println!(
            "x = {x}: e = {:>3}, ex in [{}, {}] ({} nodes), greedy {greedy}, star {star}, deletion {del}, middle {mid}",
            h.edge_count(),
            ex.lower,
            ex.upper,
            ex.nodes
        );
    }
    let h = gen_with_edge_count(8, 3, 20, 3)?;
    let counts = count_free_by_size(&h, &fam, DEFAULT_COUNT_CAP)?;
    let ex = exact_random_turan(&h, &fam, &ExactBudget::default())?.lower;
    println!("X_m on a 20-edge host (ex = {ex}): {counts:?}");
    Ok(())
}
