//! Counts linear and Berge cycles in small complete hosts and checks the
//! backtracking search against the brute-force oracle.

use turanlab::cycles::{brute_force_oracle, count_cycles, enumerate_cycles, is_cycle_copy, CycleFamily};
use turanlab::hypergraph::{complete, gen_with_edge_count};

fn main() -> turanlab::Result<()> {
    println!("{:>10} {:>4} {:>8} {:>12}", "family", "n", "length", "copies");
    for (r, n, len, berge) in [(2, 6, 4, false), (3, 7, 3, true), (3, 9, 4, true), (4, 8, 3, true), (4, 12, 4, false)] {
        let h = complete(n, r)?;
        let mut fams = vec![CycleFamily::linear(r, len)?];
        if berge {
            fams.push(CycleFamily::berge(r, len)?);
        }
        for fam in fams {
            println!("{:>10} {:>4} {:>8} {:>12}", format!("{:?} r={r}", fam.kind), n, len, count_cycles(&h, &fam)?);
        }
    }

    let h = gen_with_edge_count(8, 3, 14, 2)?;
    let fam = CycleFamily::linear(3, 4)?;
    let fast = enumerate_cycles(&h, &fam, usize::MAX)?;
    let slow = brute_force_oracle(&h, &fam)?;
    println!("random host: search {} copies, oracle {}", fast.copies.len(), slow.len());
    for c in fast.copies.iter().take(3) {
        println!("  edges {:?} core {:?} valid {}", c.edge_ids, c.witness, is_cycle_copy(&h, c)?);
    }
    Ok(())
}
