//! Greedy expansion on `K^3_n` with `t = n - 2`: every reachable linear
//! C4, its size and the Δ profile against `t`.

use turanlab::hypergraph::complete;
use turanlab::supersat::{expansion_stats, greedy_expand_with, ExpandConfig, ExpandMode};

fn main() -> turanlab::Result<()> {
    for n in [9, 10, 11, 12] {
        let h = complete(n, 3)?;
        let t = n - 2;
        let cfg = ExpandConfig {
            enforce_threshold: false,
            ..ExpandConfig::default()
        };
        let s = greedy_expand_with(&h, t, 2, &cfg)?;
        let stats = expansion_stats(&h, t, 2, false)?;
        assert_eq!(stats.size as usize, s.len());
        println!(
            "n = {n:>2}, t = {t:>2}: |S| = {:>8}, Δ = {:?}, valid = {}",
            s.len(),
            s.delta_profile(),
            s.all_valid(&h)?
        );
    }
    let h = complete(14, 3)?;
    let cfg = ExpandConfig {
        mode: ExpandMode::Sampled { count: 2000, seed: 1 },
        enforce_threshold: false,
        ..ExpandConfig::default()
    };
    let s = greedy_expand_with(&h, 12, 2, &cfg)?;
    println!("sampled runs on K^3_14: {} distinct copies, Δ = {:?}", s.len(), s.delta_profile());
    Ok(())
}
