//! Balanced supersaturation on dense hosts: collection size, Δ profile and
//! the fitted constant, with the level trace of the recursion.
//!
//! cargo run --release --example balanced_supersaturation

use turanlab::cycles::CycleKind;
use turanlab::hypergraph::{complete, gen_gnrp};
use turanlab::supersat::{balanced_supersat, density_t, SupersatConfig};

fn main() -> turanlab::Result<()> {
    let cfg = SupersatConfig::default();
    for (name, h, ell, kind) in [
        ("K_10", complete(10, 2)?, 2, CycleKind::Linear),
        ("K^3_12", complete(12, 3)?, 2, CycleKind::Linear),
        ("G^3_14,0.7", gen_gnrp(14, 3, 0.7, 3)?, 2, CycleKind::Linear),
        ("K^3_10 Berge", complete(10, 3)?, 2, CycleKind::Berge),
    ] {
        let t = density_t(kind, h.r(), ell, h.n(), h.edge_count());
        let out = match balanced_supersat(&h, ell, kind, &cfg) {
            Ok(o) => o,
            Err(e) => {
                println!("{name}: {e}");
                continue;
            }
        };
        println!(
            "{name}: t = {t:.3}, |S| = {}, Δ = {:?}, c = {:.3}",
            out.collection.len(),
            out.report.profile,
            out.report.implied_c
        );
        for lvl in &out.trace.levels {
            println!("    r = {}, e = {}, output {}", lvl.r, lvl.edges, lvl.output);
        }
    }
    Ok(())
}
