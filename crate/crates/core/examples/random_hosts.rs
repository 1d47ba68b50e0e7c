//! Random hosts: `G^r_{n,p}`, fixed edge count, codegrees, the `m_r`
//! density and a round trip through the `.hg` format.
//!
//! cargo run --release --example random_hosts

use turanlab::hypergraph::{gen_gnrp, gen_with_edge_count, m_r_density, parse_hg, to_hg_string};
use turanlab::lab::construction_subsample;

fn main() -> turanlab::Result<()> {
    let (n, r) = (12, 3);
    for x in [1.5, 2.0, 2.5] {
        let p = (n as f64).powf(x - r as f64);
        let h = gen_gnrp(n, r, p, 7)?;
        println!(
            "x = {x}: p = {p:.4}, e = {}, max degree {}, max 2-codegree {}",
            h.edge_count(),
            (0..n as u32).map(|v| h.degree(v)).max().unwrap_or(0),
            h.max_codegree(2)?
        );
    }

    let h = gen_with_edge_count(7, 3, 9, 1)?;
    println!("m_3(H) for 9 random triples on 7 vertices = {}", m_r_density(&h)?);

    // G(p) thinned by p' looks like G(p p')
    let thin = construction_subsample(&gen_gnrp(n, r, 0.5, 3)?, 0.4, 4)?;
    println!("thinned host: {} edges, expected {:.1}", thin.edge_count(), 220.0 * 0.2);

    let text = to_hg_string(&h);
    assert_eq!(parse_hg(&text)?, h);
    print!("{text}");
    Ok(())
}
