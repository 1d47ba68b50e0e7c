use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::constructions::{best_star_vertex, construction_deletion, construction_middle, construction_star};
use super::exact::{exact_random_turan, extend_to_maximal, greedy_best, ExactBudget};
use super::plot::write_plot;
use super::prediction::Prediction;
use crate::cycles::{is_family_free, CycleFamily, FamilyKind};
use crate::hypergraph::{gen_gnrp, EdgeId};
use crate::{rng, Error, Result};

pub const RECORDS_FILE: &str = "records.jsonl";
pub const CSV_FILE: &str = "records.csv";
pub const PLOT_FILE: &str = "sweep.svg";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    /// Full branch-and-bound with the configured budget on every cell.
    Exact,
    /// Full budget up to `exact_max_edges` host edges, a small one above.
    #[default]
    Auto,
    /// Constructions and greedy only; the upper bound is `e(H)`.
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    pub max_nodes: u64,
    pub copy_cap: usize,
    pub greedy_restarts: usize,
    /// Largest host `Auto` solves with the full budget.
    pub exact_max_edges: usize,
    pub large_max_nodes: u64,
    pub large_copy_cap: usize,
    /// Copy enumeration cap of the deletion constructions.
    pub construction_copy_cap: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_nodes: 2_000_000,
            copy_cap: 1_000_000,
            greedy_restarts: 8,
            exact_max_edges: 40,
            large_max_nodes: 2_000,
            large_copy_cap: 20_000,
            construction_copy_cap: 200_000,
        }
    }
}

fn one() -> usize {
    1
}

fn linear() -> FamilyKind {
    FamilyKind::Linear
}

/// A sweep over `n_list × x_list × reps` at `p = n^{x-r}`, forbidding cycles
/// of length `2ℓ`. Read from TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub r: usize,
    pub ell: usize,
    #[serde(default = "linear")]
    pub family: FamilyKind,
    pub n_list: Vec<usize>,
    pub x_list: Vec<f64>,
    #[serde(default = "one")]
    pub reps: usize,
    /// One seed per repetition; defaults to `0..reps`.
    #[serde(default)]
    pub seeds: Option<Vec<u64>>,
    #[serde(default)]
    pub estimator: Estimator,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[serde(default)]
    pub workers: Option<usize>,
    /// Store wall-clock seconds per cell. Off by default so that outputs are
    /// reproducible byte for byte.
    #[serde(default)]
    pub record_elapsed: bool,
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.n_list.is_empty() || self.x_list.is_empty() {
            return bad("n_list and x_list must be nonempty".into());
        }
        if self.reps == 0 {
            return bad("reps must be at least 1".into());
        }
        if let Some(s) = &self.seeds {
            if s.len() != self.reps {
                return bad(format!("{} seeds for {} reps", s.len(), self.reps));
            }
        }
        if let Some(x) = self.x_list.iter().find(|&&x| !(x > 0.0 && x <= self.r as f64)) {
            return bad(format!("x = {x} is outside (0, {}]", self.r));
        }
        if let Some(n) = self.n_list.iter().find(|&&n| n < self.r) {
            return bad(format!("n = {n} is below r = {}", self.r));
        }
        if self.workers == Some(0) {
            return bad("workers must be at least 1".into());
        }
        self.cycle_family().map(|_| ())
    }

    pub fn cycle_family(&self) -> Result<CycleFamily> {
        if self.ell < 2 {
            return Err(Error::Config(format!("ell = {} must be at least 2", self.ell)));
        }
        CycleFamily::new(self.family, self.r, 2 * self.ell)
    }

    pub fn seed(&self, rep: usize) -> u64 {
        self.seeds.as_ref().map_or(rep as u64, |s| s[rep])
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.n_list.len() * self.x_list.len() * self.reps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn sorted_xs(&self) -> Vec<f64> {
        let mut xs = self.x_list.clone();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub r: usize,
    pub ell: usize,
    pub family: FamilyKind,
    pub n: usize,
    pub p: f64,
    pub x: f64,
    pub rep: usize,
    pub seed: u64,
    /// `exact`, `interval` (budget ran out) or `heuristic`.
    pub estimator: String,
    pub edges: usize,
    pub ex_lower: usize,
    pub ex_upper: usize,
    /// Which construction gave `ex_lower`.
    pub lower_source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<f64>,
    /// Set when the cell failed; the bounds are then trivial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default)]
    pub notes: String,
}

impl ExperimentRecord {
    /// `log_n ex_lower`, 0 for an empty free set.
    pub fn log_lower(&self) -> f64 {
        if self.ex_lower == 0 {
            0.0
        } else {
            (self.ex_lower as f64).ln() / (self.n as f64).ln()
        }
    }

    fn sort_key(&self) -> (usize, f64, usize) {
        (self.n, self.x, self.rep)
    }
}

pub fn sort_records(records: &mut [ExperimentRecord]) {
    records.sort_by(|a, b| {
        let (ka, kb) = (a.sort_key(), b.sort_key());
        ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1)).then(ka.2.cmp(&kb.2))
    });
}

/// Runs every cell and returns the records sorted by `(n, x, rep)`.
///
/// Cells sharing `(n, rep)` form a chain over increasing x. The host seed
/// depends only on `(seed, n)`, so the chain's hosts are nested and the best
/// free set of one cell stays free in the next, where it is extended greedily.
/// Chains run on a bounded pool of threads.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<ExperimentRecord>> {
    run_chains(cfg, &[], |_| Ok(()))
}

/// [`sweep`] backed by `output_dir`: complete chains already present in
/// `records.jsonl` are kept, new chains are appended as they finish, and the
/// file is finally rewritten sorted next to `records.csv` and `sweep.svg`.
pub fn sweep_to_dir(cfg: &SweepConfig) -> Result<Vec<ExperimentRecord>> {
    let dir = cfg
        .output_dir
        .clone()
        .ok_or_else(|| Error::Config("output_dir is not set".into()))?;
    fs::create_dir_all(&dir)?;
    let path = dir.join(RECORDS_FILE);
    let previous = if path.exists() { read_jsonl(&path)? } else { Vec::new() };
    let file = Mutex::new(fs::OpenOptions::new().create(true).append(true).open(&path)?);
    let records = run_chains(cfg, &previous, |chain| {
        let mut f = file.lock().unwrap();
        for rec in chain {
            writeln!(f, "{}", serde_json::to_string(rec)?)?;
        }
        f.flush()?;
        Ok(())
    })?;
    write_jsonl(&path, &records)?;
    write_csv(&dir.join(CSV_FILE), &records)?;
    write_plot(&dir.join(PLOT_FILE), &records, &Prediction::new(cfg.r, cfg.ell)?)?;
    Ok(records)
}

fn run_chains<F>(cfg: &SweepConfig, previous: &[ExperimentRecord], on_chain: F) -> Result<Vec<ExperimentRecord>>
where
    F: Fn(&[ExperimentRecord]) -> Result<()> + Sync,
{
    cfg.validate()?;
    let fam = cfg.cycle_family()?;
    let xs = cfg.sorted_xs();
    let mut done: Vec<ExperimentRecord> = Vec::new();
    let mut todo = Vec::new();
    for &n in &cfg.n_list {
        for rep in 0..cfg.reps {
            let seed = cfg.seed(rep);
            let have: Vec<&ExperimentRecord> = previous
                .iter()
                .filter(|rec| {
                    rec.n == n
                        && rec.rep == rep
                        && rec.seed == seed
                        && rec.r == cfg.r
                        && rec.ell == cfg.ell
                        && rec.family == cfg.family
                })
                .collect();
            let complete = xs.iter().all(|&x| have.iter().any(|rec| rec.x == x));
            if complete {
                done.extend(xs.iter().map(|&x| (*have.iter().find(|rec| rec.x == x).unwrap()).clone()));
            } else {
                todo.push((n, rep));
            }
        }
    }
    // larger hosts first keeps the pool busy at the end
    todo.sort_by_key(|&(n, rep)| (std::cmp::Reverse(n), rep));

    let workers = cfg
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |w| w.get()))
        .min(todo.len())
        .max(1);
    let next = AtomicUsize::new(0);
    let out = Mutex::new(Vec::new());
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(n, rep)) = todo.get(i) else { break };
                let chain = run_chain(cfg, &fam, &xs, n, rep);
                if let Err(e) = on_chain(&chain) {
                    failure.lock().unwrap().get_or_insert(e);
                }
                out.lock().unwrap().extend(chain);
            });
        }
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    done.extend(out.into_inner().unwrap());
    sort_records(&mut done);
    Ok(done)
}

fn run_chain(cfg: &SweepConfig, fam: &CycleFamily, xs: &[f64], n: usize, rep: usize) -> Vec<ExperimentRecord> {
    let seed = cfg.seed(rep);
    let host_seed = rng::derive(seed, n as u64);
    let mut warm: Vec<Vec<u32>> = Vec::new();
    let mut records = Vec::with_capacity(xs.len());
    for (i, &x) in xs.iter().enumerate() {
        let start = Instant::now();
        let p = (n as f64).powf(x - cfg.r as f64).min(1.0);
        let mut rec = ExperimentRecord {
            r: cfg.r,
            ell: cfg.ell,
            family: cfg.family,
            n,
            p,
            x,
            rep,
            seed,
            estimator: String::new(),
            edges: 0,
            ex_lower: 0,
            ex_upper: 0,
            lower_source: String::new(),
            elapsed: None,
            error: None,
            notes: String::new(),
        };
        let cell_seed = rng::derive(host_seed, i as u64 + 1);
        match run_cell(cfg, fam, p, host_seed, cell_seed, &warm, &mut rec) {
            Ok(free) => warm = free,
            Err(e) => {
                rec.error = Some(e.to_string());
                rec.estimator = "failed".into();
                rec.ex_upper = rec.edges;
            }
        }
        if cfg.record_elapsed {
            rec.elapsed = Some(start.elapsed().as_secs_f64());
        }
        records.push(rec);
    }
    records
}

/// Fills the bounds of one cell; returns the best free set as vertex tuples.
fn run_cell(
    cfg: &SweepConfig,
    fam: &CycleFamily,
    p: f64,
    host_seed: u64,
    cell_seed: u64,
    warm: &[Vec<u32>],
    rec: &mut ExperimentRecord,
) -> Result<Vec<Vec<u32>>> {
    let h = gen_gnrp(rec.n, cfg.r, p, host_seed)?;
    rec.edges = h.edge_count();
    let b = &cfg.budgets;
    let mut notes = Vec::new();
    let mut cands: Vec<(&str, Vec<EdgeId>)> = Vec::new();

    let mut carried = Vec::with_capacity(warm.len());
    for t in warm {
        // nested hosts: every earlier edge is still present
        carried.push(h.edge_id(t).ok_or_else(|| Error::InvalidParameter("warm start edge missing".into()))?);
    }
    if !carried.is_empty() {
        cands.push(("warm", extend_to_maximal(&h, fam, &carried, rng::derive(cell_seed, 1))?));
    }
    cands.push(("greedy", greedy_best(&h, fam, b.greedy_restarts, rng::derive(cell_seed, 2))?));
    let star = construction_star(&h, best_star_vertex(&h))?;
    if is_family_free(&star, fam)? {
        let ids: Vec<EdgeId> = star.edges().map(|e| h.edge_id(e).expect("subgraph edge")).collect();
        cands.push(("star", extend_to_maximal(&h, fam, &ids, rng::derive(cell_seed, 3))?));
    }
    for (name, built) in [
        ("deletion", construction_deletion(&h, fam, b.construction_copy_cap)),
        (
            "middle",
            construction_middle(&h, fam, p, rng::derive(cell_seed, 4), b.construction_copy_cap),
        ),
    ] {
        match built {
            Ok(g) => {
                let ids: Vec<EdgeId> = g.edges().map(|e| h.edge_id(e).expect("subgraph edge")).collect();
                cands.push((name, extend_to_maximal(&h, fam, &ids, rng::derive(cell_seed, 5))?));
            }
            Err(Error::TooManyCopies { .. }) => notes.push(format!("{name} skipped: too many copies")),
            Err(e) => return Err(e),
        }
    }

    let budget = match cfg.estimator {
        Estimator::Heuristic => None,
        Estimator::Exact => Some(ExactBudget {
            max_nodes: b.max_nodes,
            copy_cap: b.copy_cap,
            greedy_restarts: b.greedy_restarts,
        }),
        Estimator::Auto if h.edge_count() <= b.exact_max_edges => Some(ExactBudget {
            max_nodes: b.max_nodes,
            copy_cap: b.copy_cap,
            greedy_restarts: b.greedy_restarts,
        }),
        Estimator::Auto => Some(ExactBudget {
            max_nodes: b.large_max_nodes,
            copy_cap: b.large_copy_cap,
            greedy_restarts: 1,
        }),
    };
    rec.ex_upper = h.edge_count();
    rec.estimator = "heuristic".into();
    if let Some(budget) = budget {
        let bound = exact_random_turan(&h, fam, &budget)?;
        rec.ex_upper = bound.upper;
        rec.estimator = if bound.exact { "exact" } else { "interval" }.into();
        cands.push(("exact", bound.witness));
        if !bound.exact && cfg.estimator == Estimator::Exact {
            notes.push("budget exhausted".into());
        }
    }

    // first of the largest, in the fixed candidate order
    let (source, best) = cands
        .into_iter()
        .fold(None, |acc: Option<(&str, Vec<EdgeId>)>, c| match acc {
            Some(a) if a.1.len() >= c.1.len() => Some(a),
            _ => Some(c),
        })
        .expect("greedy always runs");
    rec.ex_lower = best.len();
    rec.lower_source = source.into();
    rec.ex_upper = rec.ex_upper.max(rec.ex_lower);
    rec.notes = notes.join("; ");
    Ok(best.into_iter().map(|e| h.edge(e).to_vec()).collect())
}

pub fn read_jsonl(path: &Path) -> Result<Vec<ExperimentRecord>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(fs::File::open(path)?).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}

pub fn write_jsonl(path: &Path, records: &[ExperimentRecord]) -> Result<()> {
    let mut s = String::new();
    for rec in records {
        s.push_str(&serde_json::to_string(rec)?);
        s.push('\n');
    }
    fs::write(path, s)?;
    Ok(())
}

/// Flat rows for spreadsheets; `log_n_lower` is added for convenience.
pub fn to_csv(records: &[ExperimentRecord]) -> Result<String> {
    #[derive(Serialize)]
    struct Row<'a> {
        r: usize,
        ell: usize,
        family: FamilyKind,
        n: usize,
        p: f64,
        x: f64,
        rep: usize,
        seed: u64,
        estimator: &'a str,
        edges: usize,
        ex_lower: usize,
        ex_upper: usize,
        log_n_lower: f64,
        lower_source: &'a str,
        elapsed: Option<f64>,
        error: &'a str,
        notes: &'a str,
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for rec in records {
        w.serialize(Row {
            r: rec.r,
            ell: rec.ell,
            family: rec.family,
            n: rec.n,
            p: rec.p,
            x: rec.x,
            rep: rec.rep,
            seed: rec.seed,
            estimator: &rec.estimator,
            edges: rec.edges,
            ex_lower: rec.ex_lower,
            ex_upper: rec.ex_upper,
            log_n_lower: rec.log_lower(),
            lower_source: &rec.lower_source,
            elapsed: rec.elapsed,
            error: rec.error.as_deref().unwrap_or(""),
            notes: &rec.notes,
        })
        .map_err(|e| Error::Config(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_csv(path: &Path, records: &[ExperimentRecord]) -> Result<()> {
    fs::write(path, to_csv(records)?)?;
    Ok(())
}

/// Per-x summary over all records: the median of `log_n ex_lower` for each n.
pub fn curve(records: &[ExperimentRecord]) -> BTreeMap<usize, Vec<(f64, f64)>> {
    let mut by: BTreeMap<usize, BTreeMap<u64, Vec<f64>>> = BTreeMap::new();
    for rec in records.iter().filter(|rec| rec.error.is_none()) {
        by.entry(rec.n).or_default().entry(rec.x.to_bits()).or_default().push(rec.log_lower());
    }
    by.into_iter()
        .map(|(n, cells)| {
            let mut pts: Vec<(f64, f64)> = cells
                .into_iter()
                .map(|(x, mut v)| {
                    v.sort_by(f64::total_cmp);
                    (f64::from_bits(x), v[v.len() / 2])
                })
                .collect();
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            (n, pts)
        })
        .collect()
}
