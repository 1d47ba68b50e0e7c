use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use turanlab::containers::{iterate_containers, verify_covering_sampled, IterateConfig, Verification};
use turanlab::cycles::{enumerate_cycles, CycleFamily, CycleKind, FamilyKind, DEFAULT_ENUMERATION_CAP};
use turanlab::hypergraph::{complete, gen_gnrp, gen_with_edge_count, read_hg, to_hg_string};
use turanlab::lab::{
    exact_random_turan, greedy_turan_lower, read_jsonl, sweep_to_dir, write_plot, ExactBudget, Prediction, SweepConfig,
};
use turanlab::supersat::{balanced_supersat, BoundRegime, SupersatConfig};
use turanlab::Error;

/// Cycles in random hypergraphs: generation, enumeration, balanced
/// supersaturation, containers and random Turán numbers.
#[derive(Parser)]
#[command(name = "turanlab", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Linear,
    Berge,
    BergeUpTo,
}

impl From<Family> for FamilyKind {
    fn from(f: Family) -> Self {
        match f {
            Family::Linear => FamilyKind::Linear,
            Family::Berge => FamilyKind::Berge,
            Family::BergeUpTo => FamilyKind::BergeUpTo,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Linear,
    Berge,
}

impl From<Variant> for CycleKind {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Linear => CycleKind::Linear,
            Variant::Berge => CycleKind::Berge,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ExEstimator {
    Exact,
    Heuristic,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a host in .hg format: G^r_{n,p}, a uniform m-edge host or K^r_n.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, conflicts_with_all = ["m", "complete"])]
        p: Option<f64>,
        #[arg(long, conflicts_with = "complete")]
        m: Option<usize>,
        #[arg(long)]
        complete: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Count (or list) the cycle copies of a host.
    Enum {
        host: PathBuf,
        #[arg(long, value_enum, default_value = "linear")]
        family: Family,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a balanced supersaturated collection of C_{2ℓ} copies.
    Supersat {
        host: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_enum, default_value = "linear")]
        variant: Variant,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Constant of the density precondition.
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long)]
        no_precondition: bool,
        /// Trace and bound as JSON.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// The copies as JSON lines.
        #[arg(long)]
        collection: Option<PathBuf>,
    },
    /// Iterate container steps from K^r_n down to t_target.
    Containers {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        t_target: f64,
        #[arg(long, value_enum, default_value = "linear")]
        variant: Variant,
        #[arg(long, default_value_t = turanlab::containers::DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_containers: usize,
        /// Audit the family against this many random maximal free subgraphs.
        #[arg(long, default_value_t = 0)]
        verify_samples: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Random Turán number of a host: exact (branch-and-bound) or heuristic.
    Ex {
        host: PathBuf,
        #[arg(long, value_enum, default_value = "linear")]
        family: Family,
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value = "exact")]
        estimator: ExEstimator,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = ExactBudget::default().max_nodes)]
        max_nodes: u64,
        #[arg(long, default_value_t = ExactBudget::default().copy_cap)]
        copy_cap: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a sweep from a TOML config into its output directory.
    Sweep {
        config: PathBuf,
        /// Overrides output_dir from the config.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Plot sweep records against the predicted exponent.
    Plot {
        records: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

enum Failure {
    Invalid(String),
    Partial(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Invalid(e.to_string())
        } else {
            Failure::Partial(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(out: Option<&Path>, v: &impl serde::Serialize) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    emit(out, &s)
}

/// `Ok(true)` when the results are complete, `Ok(false)` when partial.
fn run(cmd: Cmd) -> Result<bool, Failure> {
    match cmd {
        Cmd::Gen {
            n,
            r,
            p,
            m,
            complete: full,
            seed,
            out,
        } => {
            let h = match (p, m, full) {
                (Some(p), _, _) => gen_gnrp(n, r, p, seed)?,
                (None, Some(m), _) => gen_with_edge_count(n, r, m, seed)?,
                (None, None, true) => complete(n, r)?,
                _ => return Err(Failure::Invalid("one of --p, --m or --complete is required".into())),
            };
            emit(out.as_deref(), &to_hg_string(&h))?;
            Ok(true)
        }
        Cmd::Enum {
            host,
            family,
            length,
            list,
            cap,
            out,
        } => {
            let h = read_hg(&host)?;
            let fam = CycleFamily::new(family.into(), h.r(), length)?;
            let found = enumerate_cycles(&h, &fam, cap)?;
            let mut v = json!({
                "family": fam,
                "count": found.copies.len(),
                "truncated": found.truncated,
            });
            if list {
                v["copies"] = serde_json::to_value(&found.copies)?;
            }
            emit_json(out.as_deref(), &v)?;
            Ok(!found.truncated)
        }
        Cmd::Supersat {
            host,
            ell,
            variant,
            seed,
            k,
            no_precondition,
            out,
            collection,
        } => {
            let h = read_hg(&host)?;
            let cfg = SupersatConfig {
                k,
                seed,
                enforce_precondition: !no_precondition,
                ..SupersatConfig::default()
            };
            let o = balanced_supersat(&h, ell, variant.into(), &cfg)?;
            if let Some(path) = collection {
                o.collection.write_jsonl(std::fs::File::create(path)?)?;
            }
            emit_json(
                out.as_deref(),
                &json!({
                    "copies": o.collection.len(),
                    "truncated": o.collection.truncated,
                    "bound": o.bound,
                    "report": o.report,
                    "trace": o.trace,
                }),
            )?;
            Ok(!o.collection.truncated)
        }
        Cmd::Containers {
            n,
            r,
            ell,
            t_target,
            variant,
            epsilon,
            seed,
            max_containers,
            verify_samples,
            out,
        } => {
            let cfg = IterateConfig {
                epsilon,
                seed,
                max_containers,
                ..IterateConfig::default()
            };
            let regime = BoundRegime::for_family(variant.into(), r);
            let mut fam = iterate_containers(n, r, ell, t_target, regime, &cfg)?;
            if verify_samples > 0 {
                let host = complete(n, r)?;
                let cycles = match variant {
                    Variant::Linear => CycleFamily::linear(r, 2 * ell)?,
                    Variant::Berge => CycleFamily::berge(r, 2 * ell)?,
                };
                let rep = verify_covering_sampled(&fam, &host, &cycles, verify_samples, seed)?;
                fam.verification = Verification::Sampled {
                    samples: rep.checked,
                    failures: rep.failures,
                };
            }
            let mut s = fam.to_json()?;
            s.push('\n');
            emit(out.as_deref(), &s)?;
            Ok(fam.complete)
        }
        Cmd::Ex {
            host,
            family,
            length,
            estimator,
            seed,
            max_nodes,
            copy_cap,
            out,
        } => {
            let h = read_hg(&host)?;
            let fam = CycleFamily::new(family.into(), h.r(), length)?;
            match estimator {
                ExEstimator::Exact => {
                    let b = exact_random_turan(
                        &h,
                        &fam,
                        &ExactBudget {
                            max_nodes,
                            copy_cap,
                            ..ExactBudget::default()
                        },
                    )?;
                    emit_json(out.as_deref(), &b)?;
                    Ok(b.exact)
                }
                ExEstimator::Heuristic => {
                    let lower = greedy_turan_lower(&h, &fam, seed)?;
                    emit_json(
                        out.as_deref(),
                        &json!({"lower": lower, "upper": h.edge_count(), "exact": false, "seed": seed}),
                    )?;
                    Ok(true)
                }
            }
        }
        Cmd::Sweep { config, output_dir } => {
            let mut cfg = SweepConfig::load(&config)?;
            if output_dir.is_some() {
                cfg.output_dir = output_dir;
            }
            if cfg.output_dir.is_none() {
                return Err(Failure::Invalid("output_dir is not set".into()));
            }
            let recs = sweep_to_dir(&cfg)?;
            let failed = recs.iter().filter(|r| r.error.is_some()).count();
            let exhausted = recs.iter().filter(|r| r.notes.contains("budget exhausted")).count();
            eprintln!(
                "{} records written to {}; {failed} failed, {exhausted} over budget",
                recs.len(),
                cfg.output_dir.as_ref().unwrap().display()
            );
            Ok(failed == 0 && exhausted == 0)
        }
        Cmd::Plot { records, out } => {
            let recs = read_jsonl(&records)?;
            let first = recs.first().ok_or(Error::EmptyInput)?;
            if recs.iter().any(|r| r.r != first.r || r.ell != first.ell) {
                return Err(Failure::Invalid("records mix several (r, ell)".into()));
            }
            write_plot(&out, &recs, &Prediction::new(first.r, first.ell)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("warning: budget exhausted, results are partial");
            ExitCode::from(3)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Partial(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
