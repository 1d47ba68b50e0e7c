//! Runs a sweep from a TOML config (or a small built-in grid) and prints the
//! measured `log_n ex` next to the predicted envelopes.
//!
//! cargo run --release --example turan_sweep -- [config.toml]

use turanlab::lab::{curve, sweep, sweep_to_dir, Prediction, SweepConfig};

fn main() -> turanlab::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => SweepConfig::load(path)?,
        None => SweepConfig::from_toml(
            r#"
            r = 3
            ell = 2
            n_list = [8, 10]
            x_list = [1.0, 1.5, 2.0, 2.5, 3.0]
            reps = 2
            "#,
        )?,
    };
    let start = std::time::Instant::now();
    let records = if cfg.output_dir.is_some() { sweep_to_dir(&cfg)? } else { sweep(&cfg)? };
    let pred = Prediction::new(cfg.r, cfg.ell)?;
    println!("{:>4} {:>6} {:>6} {:>6} {:>8} {:>8}  source", "n", "x", "edges", "lower", "log_n", "envelope");
    for rec in &records {
        println!(
            "{:>4} {:>6.3} {:>6} {:>6} {:>8.3} {:>8.3}  {}{}",
            rec.n,
            rec.x,
            rec.edges,
            rec.ex_lower,
            rec.log_lower(),
            pred.lower(rec.x),
            rec.lower_source,
            rec.error.as_deref().map(|e| format!("  error: {e}")).unwrap_or_default()
        );
    }
    for (n, pts) in curve(&records) {
        let ys: Vec<String> = pts.iter().map(|(x, y)| format!("{x}:{y:.2}")).collect();
        println!("n = {n}: {}", ys.join(" "));
    }
    eprintln!("{} cells in {:.1}s", records.len(), start.elapsed().as_secs_f64());
    Ok(())
}
