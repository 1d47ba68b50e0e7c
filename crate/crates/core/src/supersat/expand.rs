//! Greedy expansion of linear cycles `C^r_{2ℓ}` through the auxiliary graphs
//! `Γ(σ)` on shadow neighbourhoods.
//!
//! A run fixes an ordered edge `e_1 = (v_{1,1}, .., v_{1,r-2}, w_{2ℓ}, w_1)`,
//! then alternately grows `f_{2ℓ+1-i}` and `f_{i+1}` by shifting one vertex out
//! and a fresh `w` in (step ii), and finally rotates each `f_i` into `e_i` by
//! shifting in the fresh vertices `v_{i,1..r-2}` (step iii). Every shift must
//! move along an edge of `Γ(σ)`, σ being the r-1 vertices kept.
//!
//! Two routes produce the set of reachable copies:
//! * the reachability route takes every linear copy of the host and asks
//!   whether some run ends in it. Once `e_1` and its order are fixed, step ii
//!   is forced, so the test is a small search over labelings and orders;
//! * the literal route runs the algorithm itself, branching on every choice.
//!
//! Exhaustive mode uses the first, sampled mode draws random literal runs.

use rand::seq::SliceRandom;
use rand::Rng;
use rustc_hash::FxHashSet;

use super::codegree_graph::circulant_adjacent;
use super::CycleCollection;
use crate::combinatorics::permutations;
use crate::cycles::{
    for_each_copy, for_each_linear_with_min_edge, BergeIdentity, CycleCopy, CycleFamily, CycleKind,
    DEFAULT_ENUMERATION_CAP,
};
use crate::hypergraph::{EdgeId, Hypergraph, ShadowMap, Vertex, MAX_UNIFORMITY};
use crate::rng;
use crate::{Error, Result};

type Tuple = [Vertex; MAX_UNIFORMITY];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpandMode {
    /// Every copy some run can reach.
    Exhaustive,
    /// The distinct copies produced by `count` random runs.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpandConfig {
    pub mode: ExpandMode,
    /// Maximum number of copies before [`Error::Truncated`].
    pub cap: usize,
    /// Require `t ≥ 4ℓ(r-1)`, the freshness margin of the counting argument.
    pub enforce_threshold: bool,
}

impl Default for ExpandConfig {
    fn default() -> Self {
        ExpandConfig {
            mode: ExpandMode::Exhaustive,
            cap: DEFAULT_ENUMERATION_CAP,
            enforce_threshold: true,
        }
    }
}

/// Smallest `t` accepted when the threshold is enforced.
pub fn expansion_threshold(r: usize, ell: usize) -> usize {
    4 * ell * (r - 1)
}

pub fn greedy_expand(f: &Hypergraph, t: usize, ell: usize, mode: ExpandMode) -> Result<CycleCollection> {
    greedy_expand_with(
        f,
        t,
        ell,
        &ExpandConfig {
            mode,
            ..ExpandConfig::default()
        },
    )
}

pub fn greedy_expand_with(f: &Hypergraph, t: usize, ell: usize, cfg: &ExpandConfig) -> Result<CycleCollection> {
    check_preconditions(f, t, ell, cfg.enforce_threshold)?;
    let len = 2 * ell;
    let mut out = CycleCollection::empty(CycleKind::Linear, f.r(), len, f.edge_count());
    if f.is_empty() {
        return Ok(out);
    }
    let gamma = Gamma::new(f, t);
    match cfg.mode {
        ExpandMode::Exhaustive => {
            let fam = CycleFamily::linear(f.r(), len)?;
            let check = Reach::new(&gamma, ell);
            let mut over = false;
            for_each_copy(f, &fam, None, BergeIdentity::EdgeSet, |c| {
                if check.reachable(&c.edge_ids, &c.witness) {
                    if out.copies.len() == cfg.cap {
                        over = true;
                        return false;
                    }
                    out.copies.push(c.clone());
                }
                true
            })?;
            if over {
                return Err(Error::Truncated { cap: cfg.cap });
            }
        }
        ExpandMode::Sampled { count, seed } => {
            let mut run = Run::new(&gamma, ell);
            let mut rng = rng::from_seed(seed);
            let mut seen: FxHashSet<Vec<EdgeId>> = FxHashSet::default();
            for _ in 0..count {
                if let Some(c) = run.sample(&mut rng) {
                    if seen.insert(c.sorted_edge_ids()) {
                        if out.copies.len() == cfg.cap {
                            return Err(Error::Truncated { cap: cfg.cap });
                        }
                        out.copies.push(c);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Runs the algorithm literally, branching on every choice, and collects the
/// distinct copies reached. Exponential in `t`; meant for small hosts.
pub fn greedy_expand_literal(f: &Hypergraph, t: usize, ell: usize, cap: usize) -> Result<CycleCollection> {
    check_preconditions(f, t, ell, false)?;
    let mut out = CycleCollection::empty(CycleKind::Linear, f.r(), 2 * ell, f.edge_count());
    let gamma = Gamma::new(f, t);
    let mut run = Run::new(&gamma, ell);
    let mut seen: FxHashSet<Vec<EdgeId>> = FxHashSet::default();
    let mut over = false;
    run.all(&mut |c| {
        if seen.insert(c.sorted_edge_ids()) {
            if out.copies.len() == cap {
                over = true;
                return false;
            }
            out.copies.push(c);
        }
        true
    });
    if over {
        return Err(Error::Truncated { cap });
    }
    out.copies.sort_by_cached_key(CycleCopy::sorted_edge_ids);
    Ok(out)
}

/// Summary of the exhaustive output without materialising it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExpansionStats {
    pub size: u64,
    pub delta_1: u64,
    /// Largest multiplicity of a full edge set, i.e. `Δ_{2ℓ}`.
    pub delta_len: u64,
    /// Copies failing the independent validity check.
    pub invalid: u64,
}

/// Streams the exhaustive output grouped by smallest edge id, tracking edge
/// loads and repeated edge sets on the fly.
pub fn expansion_stats(f: &Hypergraph, t: usize, ell: usize, enforce_threshold: bool) -> Result<ExpansionStats> {
    check_preconditions(f, t, ell, enforce_threshold)?;
    let len = 2 * ell;
    let m = f.edge_count();
    let mut stats = ExpansionStats::default();
    if m == 0 {
        return Ok(stats);
    }
    let gamma = Gamma::new(f, t);
    let check = Reach::new(&gamma, ell);
    let mut load = vec![0u64; m];
    let bits = (usize::BITS - m.leading_zeros()) as usize;
    let packable = len * bits <= 128;
    let mut packed: Vec<u128> = Vec::new();
    let mut wide: Vec<Vec<EdgeId>> = Vec::new();
    let mut scratch: Vec<Vertex> = Vec::new();
    let mut ids: Vec<EdgeId> = Vec::with_capacity(len);
    for e1 in 0..m {
        packed.clear();
        wide.clear();
        for_each_linear_with_min_edge(f, len, e1, |edges, witness| {
            if !check.reachable(edges, witness) {
                return true;
            }
            if !linear_copy_ok(f, edges, witness, &mut scratch) {
                stats.invalid += 1;
            }
            stats.size += 1;
            ids.clear();
            ids.extend_from_slice(edges);
            ids.sort_unstable();
            for &e in &ids {
                load[e] += 1;
            }
            if packable {
                packed.push(ids.iter().fold(0u128, |acc, &e| (acc << bits) | e as u128));
            } else {
                wide.push(ids.clone());
            }
            true
        });
        packed.sort_unstable();
        wide.sort_unstable();
        stats.delta_len = stats
            .delta_len
            .max(longest_run(&packed))
            .max(longest_run(&wide));
    }
    stats.delta_1 = load.into_iter().max().unwrap_or(0);
    Ok(stats)
}

fn longest_run<T: PartialEq>(sorted: &[T]) -> u64 {
    sorted
        .chunk_by(|a, b| a == b)
        .map(|c| c.len() as u64)
        .max()
        .unwrap_or(0)
}

/// Validity of a linear copy straight from the definition, reusing `scratch`.
fn linear_copy_ok(h: &Hypergraph, edges: &[EdgeId], witness: &[Vertex], scratch: &mut Vec<Vertex>) -> bool {
    let r = h.r();
    let len = edges.len();
    if witness.len() != len * (r - 1) {
        return false;
    }
    scratch.clear();
    scratch.extend_from_slice(witness);
    scratch.sort_unstable();
    if scratch.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let total = witness.len();
    edges.iter().enumerate().all(|(i, &id)| {
        let e = h.edge(id);
        (i * (r - 1)..=(i + 1) * (r - 1)).all(|j| e.contains(&witness[(j + total - 1) % total]))
    })
}

fn check_preconditions(f: &Hypergraph, t: usize, ell: usize, enforce_threshold: bool) -> Result<()> {
    let r = f.r();
    if r < 3 {
        return Err(Error::InvalidParameter("greedy expansion needs r >= 3".into()));
    }
    if ell < 2 {
        return Err(Error::InvalidParameter("greedy expansion needs ell >= 2".into()));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    let sh = f.shadow(r - 1)?;
    if sh.iter().any(|(_, nb)| nb.len() < t) {
        let (sigma, nb) = sh
            .sorted()
            .into_iter()
            .find(|(_, nb)| nb.len() < t)
            .expect("a violator exists");
        return Err(Error::CodegreeTooSmall {
            codegree: nb.len(),
            sigma: Some(sigma),
            required: t,
        });
    }
    let threshold = expansion_threshold(r, ell);
    if enforce_threshold && t < threshold {
        return Err(Error::CodegreeTooSmall {
            sigma: None,
            codegree: t,
            required: threshold,
        });
    }
    Ok(())
}

/// The graphs `Γ(σ)` over the (r-1)-shadow of the host.
struct Gamma<'a> {
    h: &'a Hypergraph,
    sh: &'a ShadowMap,
    t: usize,
    r: usize,
}

impl<'a> Gamma<'a> {
    fn new(h: &'a Hypergraph, t: usize) -> Self {
        Gamma {
            h,
            sh: h.shadow(h.r() - 1).expect("r >= 3"),
            t,
            r: h.r(),
        }
    }

    /// `Γ(σ)`-adjacency of two edges containing σ.
    fn adjacent(&self, sigma: &[Vertex], a: EdgeId, b: EdgeId) -> bool {
        if a == b {
            return false;
        }
        let nb = self.sh.get(sigma);
        let d = nb.len();
        if d == self.t {
            return true;
        }
        match (nb.binary_search(&a), nb.binary_search(&b)) {
            (Ok(x), Ok(y)) => circulant_adjacent(d, self.t, x, y),
            _ => false,
        }
    }

    /// The ordered edge `from[1..] ⊎ {v}` if it exists and is a `Γ`-neighbour
    /// of `from`.
    fn shift(&self, from: &Tuple, from_id: EdgeId, v: Vertex) -> Option<(Tuple, EdgeId)> {
        let r = self.r;
        let mut next = [0 as Vertex; MAX_UNIFORMITY];
        next[..r - 1].copy_from_slice(&from[1..r]);
        next[r - 1] = v;
        let id = self.h.edge_id(&next[..r])?;
        self.adjacent(&from[1..r], from_id, id).then_some((next, id))
    }

    /// Every `Γ`-neighbour of `from` whose new vertex is not yet used.
    fn options(&self, from: &Tuple, from_id: EdgeId, used: &[bool]) -> Vec<(Tuple, EdgeId, Vertex)> {
        let r = self.r;
        let sigma = &from[1..r];
        let mut out = Vec::new();
        for &g in self.sh.get(sigma) {
            if !self.adjacent(sigma, from_id, g) {
                continue;
            }
            let x = *self.h.edge(g).iter().find(|v| !sigma.contains(v)).expect("r-set over σ");
            if used[x as usize] {
                continue;
            }
            let mut next = [0 as Vertex; MAX_UNIFORMITY];
            next[..r - 1].copy_from_slice(sigma);
            next[r - 1] = x;
            out.push((next, g, x));
        }
        out
    }
}

/// Reachability test for a given copy.
struct Reach<'g, 'a> {
    g: &'g Gamma<'a>,
    ell: usize,
    perms: Vec<Vec<usize>>,
}

impl<'g, 'a> Reach<'g, 'a> {
    fn new(g: &'g Gamma<'a>, ell: usize) -> Self {
        let idx: Vec<usize> = (0..g.r - 2).collect();
        Reach {
            g,
            ell,
            perms: permutations(&idx),
        }
    }

    /// `edges`/`witness` in the linear convention: the exit junction of
    /// edge k is `witness[(k+1)(r-1)-1]`, its interior the r-2 entries before.
    fn reachable(&self, edges: &[EdgeId], witness: &[Vertex]) -> bool {
        let len = edges.len();
        let m = self.g.r - 1;
        let junction = |k: usize| witness[(k + 1) * m - 1];
        // label i = 1..=len; slot 0 mirrors slot len for w
        let mut pos = [0usize; 2 * MAX_LEN + 1];
        let mut w = [0 as Vertex; 2 * MAX_LEN + 1];
        if len > 2 * MAX_LEN {
            return false;
        }
        for s in 0..len {
            for forward in [true, false] {
                for i in 1..=len {
                    let c = if forward {
                        (s + i - 1) % len
                    } else {
                        (s + len - (i - 1) % len) % len
                    };
                    pos[i] = c;
                    w[i] = if forward { junction(c) } else { junction((c + len - 1) % len) };
                }
                w[0] = w[len];
                if self.labeled(edges, witness, &pos[..=len], &w[..=len]) {
                    return true;
                }
            }
        }
        false
    }

    fn interior<'w>(&self, witness: &'w [Vertex], c: usize) -> &'w [Vertex] {
        let m = self.g.r - 1;
        &witness[c * m..c * m + m - 1]
    }

    fn labeled(&self, edges: &[EdgeId], witness: &[Vertex], pos: &[usize], w: &[Vertex]) -> bool {
        let r = self.g.r;
        let len = 2 * self.ell;
        let inner = self.interior(witness, pos[1]);
        let mut f = [[0 as Vertex; MAX_UNIFORMITY]; 2 * MAX_LEN + 2];
        let mut fid = [0 as EdgeId; 2 * MAX_LEN + 2];
        'orders: for pi in &self.perms {
            for (k, &p) in pi.iter().enumerate() {
                f[1][k] = inner[p];
            }
            f[1][r - 2] = w[len];
            f[1][r - 1] = w[1];
            fid[1] = edges[pos[1]];
            for i in 1..self.ell {
                let Some((a, aid)) = self.g.shift(&f[i], fid[i], w[len - i]) else {
                    continue 'orders;
                };
                f[len + 1 - i] = a;
                fid[len + 1 - i] = aid;
                let Some((b, bid)) = self.g.shift(&a, aid, w[i + 1]) else {
                    continue 'orders;
                };
                f[i + 1] = b;
                fid[i + 1] = bid;
            }
            f[self.ell + 1] = f[self.ell];
            fid[self.ell + 1] = fid[self.ell];
            let rotations_ok = (2..=len).all(|i| {
                self.rotates(&f[i], fid[i], w[i - 1], w[i], self.interior(witness, pos[i]), edges[pos[i]])
            });
            if rotations_ok {
                return true;
            }
        }
        false
    }

    /// Step iii for one edge: some order of `f \ {a, b}` followed by `a, b`,
    /// then some order of the interior shifted in one vertex at a time.
    fn rotates(&self, f: &Tuple, fid: EdgeId, a: Vertex, b: Vertex, interior: &[Vertex], target: EdgeId) -> bool {
        let r = self.g.r;
        let mut rest = [0 as Vertex; MAX_UNIFORMITY];
        let mut k = 0;
        for &v in &f[..r] {
            if v != a && v != b {
                if k == r - 2 {
                    return false;
                }
                rest[k] = v;
                k += 1;
            }
        }
        if k != r - 2 {
            return false;
        }
        for rho in &self.perms {
            let mut start = [0 as Vertex; MAX_UNIFORMITY];
            for (j, &p) in rho.iter().enumerate() {
                start[j] = rest[p];
            }
            start[r - 2] = a;
            start[r - 1] = b;
            'sigma: for sigma in &self.perms {
                let (mut cur, mut cur_id) = (start, fid);
                for &p in sigma {
                    match self.g.shift(&cur, cur_id, interior[p]) {
                        Some(next) => (cur, cur_id) = next,
                        None => continue 'sigma,
                    }
                }
                if cur_id == target {
                    return true;
                }
            }
        }
        false
    }
}

/// Longest `ℓ` supported by the fixed-size buffers of the reachability test.
const MAX_LEN: usize = 32;

#[derive(Debug, Clone, Copy)]
enum Op {
    /// Step ii: `f_to = f_from[2..] ⊎ {w_slot}`.
    Grow { from: usize, to: usize, slot: usize },
    /// Step iii: reorder `f_i` so `w_{i-1}, w_i` come last.
    Order(usize),
    /// Step iii: shift in `v_{i,j}`.
    Rotate { i: usize, j: usize },
}

/// State of one literal run.
struct Run<'g, 'a> {
    g: &'g Gamma<'a>,
    ell: usize,
    len: usize,
    ops: Vec<Op>,
    perms: Vec<Vec<usize>>,
    used: Vec<bool>,
    marked: Vec<Vertex>,
    f: Vec<Tuple>,
    fid: Vec<EdgeId>,
    w: Vec<Vertex>,
    v: Vec<Tuple>,
    eid: Vec<EdgeId>,
    cur: Tuple,
    cur_id: EdgeId,
}

impl<'g, 'a> Run<'g, 'a> {
    fn new(g: &'g Gamma<'a>, ell: usize) -> Self {
        let len = 2 * ell;
        let r = g.r;
        let mut ops = Vec::new();
        for i in 1..ell {
            ops.push(Op::Grow {
                from: i,
                to: len + 1 - i,
                slot: len - i,
            });
            ops.push(Op::Grow {
                from: len + 1 - i,
                to: i + 1,
                slot: i + 1,
            });
        }
        for i in 2..=len {
            ops.push(Op::Order(i));
            ops.extend((1..=r - 2).map(|j| Op::Rotate { i, j }));
        }
        let idx: Vec<usize> = (0..r - 2).collect();
        Run {
            g,
            ell,
            len,
            ops,
            perms: permutations(&idx),
            used: vec![false; g.h.n()],
            marked: Vec::new(),
            f: vec![[0; MAX_UNIFORMITY]; len + 2],
            fid: vec![0; len + 2],
            w: vec![0; len + 1],
            v: vec![[0; MAX_UNIFORMITY]; len + 1],
            eid: vec![0; len + 1],
            cur: [0; MAX_UNIFORMITY],
            cur_id: 0,
        }
    }

    // f_{ℓ+1} = f_ℓ
    fn source(&self, i: usize) -> usize {
        if i == self.ell + 1 {
            self.ell
        } else {
            i
        }
    }

    fn start(&mut self, order: &Tuple, id: EdgeId) {
        let r = self.g.r;
        self.f[1] = *order;
        self.fid[1] = id;
        self.eid[1] = id;
        self.v[1][..r - 2].copy_from_slice(&order[..r - 2]);
        self.w[self.len] = order[r - 2];
        self.w[1] = order[r - 1];
        self.w[0] = order[r - 2];
        for &x in &order[..r] {
            self.used[x as usize] = true;
        }
    }

    fn clear(&mut self) {
        let r = self.g.r;
        for x in self.f[1][..r].to_vec() {
            self.used[x as usize] = false;
        }
        for x in self.marked.drain(..) {
            self.used[x as usize] = false;
        }
    }

    fn copy(&self) -> CycleCopy {
        let r = self.g.r;
        let mut witness = Vec::with_capacity(self.len * (r - 1));
        for i in 1..=self.len {
            witness.extend_from_slice(&self.v[i][..r - 2]);
            witness.push(self.w[i]);
        }
        CycleCopy {
            kind: CycleKind::Linear,
            edge_ids: self.eid[1..].to_vec(),
            witness,
        }
    }

    /// Reordered `f_i` for step iii, or `None` if it misses `w_{i-1}, w_i`.
    fn reorder(&self, i: usize, rho: &[usize]) -> Option<Tuple> {
        let r = self.g.r;
        let (a, b) = (self.w[i - 1], self.w[i]);
        let f = &self.f[self.source(i)];
        let rest: Vec<Vertex> = f[..r].iter().copied().filter(|&x| x != a && x != b).collect();
        if rest.len() != r - 2 {
            return None;
        }
        let mut out = [0 as Vertex; MAX_UNIFORMITY];
        for (j, &p) in rho.iter().enumerate() {
            out[j] = rest[p];
        }
        out[r - 2] = a;
        out[r - 1] = b;
        Some(out)
    }

    fn apply(&mut self, op: Op, next: Tuple, id: EdgeId, x: Vertex) {
        match op {
            Op::Grow { to, slot, .. } => {
                self.f[to] = next;
                self.fid[to] = id;
                self.w[slot] = x;
            }
            Op::Rotate { i, j } => {
                self.cur = next;
                self.cur_id = id;
                self.v[i][j - 1] = x;
                self.eid[i] = id;
            }
            Op::Order(_) => unreachable!(),
        }
    }

    fn from_of(&self, op: Op) -> (Tuple, EdgeId) {
        match op {
            Op::Grow { from, .. } => (self.f[from], self.fid[from]),
            _ => (self.cur, self.cur_id),
        }
    }

    /// Every run, reported copy by copy; the visitor returns `false` to stop.
    fn all(&mut self, emit: &mut dyn FnMut(CycleCopy) -> bool) {
        let h = self.g.h;
        let r = self.g.r;
        let idx: Vec<usize> = (0..r).collect();
        let orders = permutations(&idx);
        for id in 0..h.edge_count() {
            let e = h.edge(id);
            for p in &orders {
                let mut order = [0 as Vertex; MAX_UNIFORMITY];
                for (k, &q) in p.iter().enumerate() {
                    order[k] = e[q];
                }
                self.start(&order, id);
                let go_on = self.dfs(0, emit);
                self.clear();
                if !go_on {
                    return;
                }
            }
        }
    }

    fn dfs(&mut self, k: usize, emit: &mut dyn FnMut(CycleCopy) -> bool) -> bool {
        let Some(&op) = self.ops.get(k) else {
            return emit(self.copy());
        };
        if let Op::Order(i) = op {
            for p in 0..self.perms.len() {
                let Some(t) = self.reorder(i, &self.perms[p]) else {
                    return true;
                };
                self.cur = t;
                self.cur_id = self.fid[self.source(i)];
                if !self.dfs(k + 1, emit) {
                    return false;
                }
            }
            return true;
        }
        let (from, from_id) = self.from_of(op);
        let saved = (self.cur, self.cur_id);
        for (next, id, x) in self.g.options(&from, from_id, &self.used) {
            self.used[x as usize] = true;
            self.apply(op, next, id, x);
            let go_on = self.dfs(k + 1, emit);
            self.used[x as usize] = false;
            (self.cur, self.cur_id) = saved;
            if !go_on {
                return false;
            }
        }
        true
    }

    /// One random run; `None` when it gets stuck.
    fn sample(&mut self, rng: &mut rng::TuranRng) -> Option<CycleCopy> {
        let h = self.g.h;
        let r = self.g.r;
        let id = rng.random_range(0..h.edge_count());
        let mut order = [0 as Vertex; MAX_UNIFORMITY];
        order[..r].copy_from_slice(h.edge(id));
        order[..r].shuffle(rng);
        self.start(&order, id);
        let out = self.sample_ops(rng);
        self.clear();
        out
    }

    fn sample_ops(&mut self, rng: &mut rng::TuranRng) -> Option<CycleCopy> {
        for k in 0..self.ops.len() {
            let op = self.ops[k];
            if let Op::Order(i) = op {
                let p = rng.random_range(0..self.perms.len());
                self.cur = self.reorder(i, &self.perms[p])?;
                self.cur_id = self.fid[self.source(i)];
                continue;
            }
            let (from, from_id) = self.from_of(op);
            let opts = self.g.options(&from, from_id, &self.used);
            if opts.is_empty() {
                return None;
            }
            let (next, id, x) = opts[rng.random_range(0..opts.len())];
            self.used[x as usize] = true;
            self.marked.push(x);
            self.apply(op, next, id, x);
        }
        Some(self.copy())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{enumerate_cycles, is_cycle_copy};
    use crate::hypergraph::{complete, gen_with_edge_count};

    fn c34() -> Hypergraph {
        Hypergraph::new(8, 3, [[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 0]]).unwrap()
    }

    fn key_set(s: &CycleCollection) -> Vec<Vec<EdgeId>> {
        let mut keys: Vec<Vec<EdgeId>> = s.copies.iter().map(CycleCopy::sorted_edge_ids).collect();
        keys.sort();
        keys
    }

    #[test]
    fn threshold_and_codegree_errors() {
        assert!(matches!(
            greedy_expand(&c34(), 1, 2, ExpandMode::Exhaustive),
            Err(Error::CodegreeTooSmall { sigma: None, required: 16, .. })
        ));
        let err = greedy_expand(&c34(), 2, 2, ExpandMode::Exhaustive).unwrap_err();
        assert!(matches!(err, Error::CodegreeTooSmall { sigma: Some(ref s), codegree: 1, .. } if s == &vec![0, 1]));
        let graph = complete(5, 2).unwrap();
        assert!(matches!(greedy_expand(&graph, 1, 2, ExpandMode::Exhaustive), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn complete_hosts_reach_every_copy() {
        // every Γ is complete when t = n - 2
        let h = complete(8, 3).unwrap();
        let cfg = ExpandConfig {
            enforce_threshold: false,
            ..ExpandConfig::default()
        };
        let s = greedy_expand_with(&h, 6, 2, &cfg).unwrap();
        let all = enumerate_cycles(&h, &CycleFamily::linear(3, 4).unwrap(), usize::MAX).unwrap();
        assert_eq!(s.len(), all.copies.len());
        assert!(s.all_valid(&h).unwrap());
        assert_eq!(*s.delta_profile().last().unwrap(), 1);
    }

    #[test]
    fn routes_agree_on_sparse_hosts() {
        let cfg = ExpandConfig {
            enforce_threshold: false,
            ..ExpandConfig::default()
        };
        for (n, t) in [(7, 2), (7, 3), (8, 3), (8, 4)] {
            let h = complete(n, 3).unwrap();
            let reach = greedy_expand_with(&h, t, 2, &cfg).unwrap();
            let literal = greedy_expand_literal(&h, t, 2, usize::MAX).unwrap();
            assert_eq!(key_set(&reach), key_set(&literal), "n={n} t={t}");
            assert!(literal.all_valid(&h).unwrap());
        }
        for seed in 0..4 {
            let h = gen_with_edge_count(8, 3, 45, seed).unwrap();
            let t = h.shadow(2).unwrap().iter().map(|(_, nb)| nb.len()).min().unwrap();
            let reach = greedy_expand_with(&h, t, 2, &cfg).unwrap();
            let literal = greedy_expand_literal(&h, t, 2, usize::MAX).unwrap();
            assert_eq!(key_set(&reach), key_set(&literal), "seed={seed} t={t}");
        }
    }

    #[test]
    fn routes_agree_for_four_uniform() {
        let cfg = ExpandConfig {
            enforce_threshold: false,
            ..ExpandConfig::default()
        };
        let mut nonempty = 0;
        for seed in 0..3 {
            let h = gen_with_edge_count(12, 4, 260, seed).unwrap();
            let t = h.shadow(3).unwrap().iter().map(|(_, nb)| nb.len()).min().unwrap();
            let reach = greedy_expand_with(&h, t, 2, &cfg).unwrap();
            let literal = greedy_expand_literal(&h, t, 2, usize::MAX).unwrap();
            assert_eq!(key_set(&reach), key_set(&literal), "seed={seed} t={t}");
            nonempty += usize::from(!reach.is_empty());
        }
        assert!(nonempty > 0);
    }

    #[test]
    fn sampled_is_reproducible_and_valid() {
        let h = complete(9, 3).unwrap();
        let cfg = ExpandConfig {
            mode: ExpandMode::Sampled { count: 300, seed: 7 },
            enforce_threshold: false,
            ..ExpandConfig::default()
        };
        let a = greedy_expand_with(&h, 5, 2, &cfg).unwrap();
        let b = greedy_expand_with(&h, 5, 2, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
        for c in &a.copies {
            assert!(is_cycle_copy(&h, c).unwrap());
        }
        let exhaustive = greedy_expand_with(&h, 5, 2, &ExpandConfig { enforce_threshold: false, ..ExpandConfig::default() }).unwrap();
        let all = key_set(&exhaustive);
        assert!(key_set(&a).iter().all(|k| all.binary_search(k).is_ok()));
    }

    #[test]
    fn stats_match_materialised_output() {
        let h = complete(8, 3).unwrap();
        for t in [3, 6] {
            let s = greedy_expand_with(
                &h,
                t,
                2,
                &ExpandConfig {
                    enforce_threshold: false,
                    ..ExpandConfig::default()
                },
            )
            .unwrap();
            let stats = expansion_stats(&h, t, 2, false).unwrap();
            let p = s.delta_profile();
            assert_eq!(stats.size, s.len() as u64);
            assert_eq!(stats.delta_1, p[0]);
            assert_eq!(stats.delta_len, p[3]);
            assert_eq!(stats.invalid, 0);
        }
    }

    #[test]
    fn truncation_is_an_error() {
        let h = complete(8, 3).unwrap();
        let cfg = ExpandConfig {
            cap: 10,
            enforce_threshold: false,
            ..ExpandConfig::default()
        };
        assert!(matches!(greedy_expand_with(&h, 6, 2, &cfg), Err(Error::Truncated { cap: 10 })));
    }
}
