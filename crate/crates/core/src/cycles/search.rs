//! Backtracking kernels. Both walk the witness sequence edge by edge and
//! report raw (edges, witness) pairs to a visitor returning `false` to stop.
//!
//! Linear search: `e_1` is the smallest edge id of the copy, an ordered
//! junction pair `(v_0, v_{r-1})` is fixed inside it, and each further edge
//! must meet the used vertices exactly in the current junction. The last
//! edge is looked up through the pair shadow of its two junctions. Reversal
//! is removed by requiring `e_2 < e_ℓ`.
//!
//! Berge search: `v_0` is the smallest core and `v_1 < v_{k-1}` (or
//! `e_1 < e_2` when `k = 2`). Different edge assignments over the same core
//! cycle are reported separately; callers deduplicate.
//!
//! With an anchor edge the canonical constraints are dropped and the anchor
//! is forced into position `e_1`, which is what single-copy detection needs.

use fixedbitset::FixedBitSet;

use crate::hypergraph::{EdgeId, Hypergraph, Vertex};

type Visitor<'v> = dyn FnMut(&[EdgeId], &[Vertex]) -> bool + 'v;

#[inline]
fn is_active(active: Option<&FixedBitSet>, id: EdgeId) -> bool {
    active.is_none_or(|m| m.contains(id))
}

struct Linear<'a, 'v> {
    h: &'a Hypergraph,
    active: Option<&'a FixedBitSet>,
    len: usize,
    anchored: bool,
    used: Vec<bool>,
    edges: Vec<EdgeId>,
    // junctions[0] = v_0, junctions[i] = v_{i(r-1)}
    junctions: Vec<Vertex>,
    witness: Vec<Vertex>,
    visit: &'v mut Visitor<'v>,
}

impl Linear<'_, '_> {
    fn admissible(&self, f: EdgeId) -> bool {
        is_active(self.active, f) && (self.anchored || f > self.edges[0])
    }

    fn emit(&mut self) -> bool {
        self.witness.clear();
        let len = self.len;
        for i in 0..len {
            let entry = self.junctions[i];
            let exit = self.junctions[(i + 1) % len];
            let e = self.h.edge(self.edges[i]);
            self.witness.extend(e.iter().filter(|&&v| v != entry && v != exit));
            self.witness.push(exit);
        }
        (self.visit)(&self.edges, &self.witness)
    }

    // leaves `keep` (the junction shared with the previous edge) untouched
    fn mark(&mut self, f: EdgeId, keep: Option<Vertex>, on: bool) {
        for &v in self.h.edge(f) {
            if Some(v) != keep {
                self.used[v as usize] = on;
            }
        }
    }

    // edges e_1..e_i are placed; junctions[i] is the exit of e_i
    fn extend(&mut self, i: usize) -> bool {
        let h = self.h;
        let at = self.junctions[i];
        if i == self.len - 1 {
            let home = self.junctions[0];
            let single;
            let closing: &[EdgeId] = if h.r() == 2 {
                single = h.edge_id(&[at, home]);
                single.as_slice()
            } else {
                h.shadow(2).expect("r >= 3").get(&[at, home])
            };
            for &f in closing {
                if !self.admissible(f) || (!self.anchored && f < self.edges[1]) {
                    continue;
                }
                if h.edge(f).iter().any(|&v| v != at && v != home && self.used[v as usize]) {
                    continue;
                }
                self.edges.push(f);
                let go_on = self.emit();
                self.edges.pop();
                if !go_on {
                    return false;
                }
            }
            return true;
        }
        for &f in h.incident(at) {
            if !self.admissible(f) {
                continue;
            }
            if h.edge(f).iter().any(|&v| v != at && self.used[v as usize]) {
                continue;
            }
            self.mark(f, Some(at), true);
            self.edges.push(f);
            for &next in h.edge(f) {
                if next == at {
                    continue;
                }
                self.junctions.push(next);
                let go_on = self.extend(i + 1);
                self.junctions.pop();
                if !go_on {
                    self.edges.pop();
                    self.mark(f, Some(at), false);
                    return false;
                }
            }
            self.edges.pop();
            self.mark(f, Some(at), false);
        }
        true
    }
}

/// Which copies a search reports.
#[derive(Debug, Clone, Copy)]
pub(super) enum Start {
    /// Every copy once.
    All,
    /// Only the copies whose smallest edge id is the given one.
    Min(EdgeId),
    /// Copies through the given edge, without symmetry reduction.
    Anchor(EdgeId),
}

pub(super) fn linear(
    h: &Hypergraph,
    active: Option<&FixedBitSet>,
    len: usize,
    start: Start,
    visit: &mut Visitor<'_>,
) {
    if len < 3 || h.edge_count() < len || len * (h.r() - 1) > h.n() {
        return;
    }
    let mut s = Linear {
        h,
        active,
        len,
        anchored: matches!(start, Start::Anchor(_)),
        used: vec![false; h.n()],
        edges: Vec::with_capacity(len),
        junctions: Vec::with_capacity(len),
        witness: Vec::with_capacity(len * (h.r() - 1)),
        visit,
    };
    let starts = match start {
        Start::All => 0..h.edge_count(),
        Start::Min(e) | Start::Anchor(e) => e..e + 1,
    };
    for e1 in starts {
        if !s.anchored && !is_active(active, e1) {
            continue;
        }
        s.mark(e1, None, true);
        s.edges.push(e1);
        let e = h.edge(e1);
        for &home in e {
            for &exit in e {
                if home == exit {
                    continue;
                }
                s.junctions.push(home);
                s.junctions.push(exit);
                let go_on = s.extend(1);
                s.junctions.clear();
                if !go_on {
                    return;
                }
            }
        }
        s.edges.pop();
        s.mark(e1, None, false);
    }
}

struct Berge<'a, 'v> {
    h: &'a Hypergraph,
    active: Option<&'a FixedBitSet>,
    len: usize,
    anchored: bool,
    is_core: Vec<bool>,
    edges: Vec<EdgeId>,
    // cores[0] = v_0, cores[i] = v_i
    cores: Vec<Vertex>,
    witness: Vec<Vertex>,
    visit: &'v mut Visitor<'v>,
}

impl Berge<'_, '_> {
    fn edge_ok(&self, f: EdgeId) -> bool {
        is_active(self.active, f) && !self.edges.contains(&f)
    }

    fn emit(&mut self) -> bool {
        self.witness.clear();
        self.witness.extend_from_slice(&self.cores[1..]);
        self.witness.push(self.cores[0]);
        (self.visit)(&self.edges, &self.witness)
    }

    // edges e_1..e_i placed, current core v_i
    fn extend(&mut self, i: usize) -> bool {
        let h = self.h;
        let at = self.cores[i];
        let home = self.cores[0];
        if i == self.len - 1 {
            if !self.anchored {
                let ok = if self.len == 2 {
                    true
                } else {
                    self.cores[1] < self.cores[i]
                };
                if !ok {
                    return true;
                }
            }
            for &f in h.incident(at) {
                if !self.edge_ok(f) || !h.edge(f).contains(&home) {
                    continue;
                }
                if !self.anchored && self.len == 2 && f < self.edges[0] {
                    continue;
                }
                self.edges.push(f);
                let go_on = self.emit();
                self.edges.pop();
                if !go_on {
                    return false;
                }
            }
            return true;
        }
        for &f in h.incident(at) {
            if !self.edge_ok(f) {
                continue;
            }
            self.edges.push(f);
            for &next in h.edge(f) {
                if self.is_core[next as usize] || (!self.anchored && next < home) {
                    continue;
                }
                self.is_core[next as usize] = true;
                self.cores.push(next);
                let go_on = self.extend(i + 1);
                self.cores.pop();
                self.is_core[next as usize] = false;
                if !go_on {
                    self.edges.pop();
                    return false;
                }
            }
            self.edges.pop();
        }
        true
    }
}

pub(super) fn berge(
    h: &Hypergraph,
    active: Option<&FixedBitSet>,
    len: usize,
    anchor: Option<EdgeId>,
    visit: &mut Visitor<'_>,
) {
    if len < 2 || h.edge_count() < len || len > h.n() {
        return;
    }
    let mut s = Berge {
        h,
        active,
        len,
        anchored: anchor.is_some(),
        is_core: vec![false; h.n()],
        edges: Vec::with_capacity(len),
        cores: Vec::with_capacity(len),
        witness: Vec::with_capacity(len),
        visit,
    };
    match anchor {
        None => {
            for v0 in 0..h.n() as Vertex {
                s.is_core[v0 as usize] = true;
                s.cores.push(v0);
                let go_on = s.extend(0);
                s.cores.pop();
                s.is_core[v0 as usize] = false;
                if !go_on {
                    return;
                }
            }
        }
        Some(a) => {
            // the anchor is e_1, so v_0 and v_1 are two of its vertices
            s.edges.push(a);
            let e = h.edge(a);
            for &v0 in e {
                for &v1 in e {
                    if v0 == v1 {
                        continue;
                    }
                    s.is_core[v0 as usize] = true;
                    s.is_core[v1 as usize] = true;
                    s.cores.extend([v0, v1]);
                    let go_on = s.extend(1);
                    s.cores.clear();
                    s.is_core[v0 as usize] = false;
                    s.is_core[v1 as usize] = false;
                    if !go_on {
                        return;
                    }
                }
            }
        }
    }
}
