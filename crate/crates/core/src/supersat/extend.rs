use super::CycleCollection;
use crate::cycles::{CycleCopy, CycleKind};
use crate::hypergraph::{EdgeId, Hypergraph, Vertex};
use crate::{Error, Result};

/// Lifts copies in an (r-1)-graph `G` to copies in the r-graph `F′` by
/// replacing every edge `g` of a copy with an edge of `F′` containing it.
///
/// With `distinct` the added vertices must be pairwise distinct and avoid
/// the copy, so linear copies lift to linear copies. Without it any choice
/// of pairwise different edges is allowed and the output is Berge, with the
/// cores taken from the input copy. All extension tuples are emitted.
pub fn shadow_extend(
    s_prime: &CycleCollection,
    g: &Hypergraph,
    f_prime: &Hypergraph,
    distinct: bool,
    cap: usize,
) -> Result<CycleCollection> {
    let r = f_prime.r();
    if g.r() + 1 != r {
        return Err(Error::InvalidParameter(format!(
            "shadow host has uniformity {}, expected {}",
            g.r(),
            r - 1
        )));
    }
    if distinct && s_prime.kind == CycleKind::Berge {
        return Err(Error::InvalidParameter(
            "distinct extension needs linear input copies".into(),
        ));
    }
    let kind = if distinct { CycleKind::Linear } else { CycleKind::Berge };
    let mut out = CycleCollection::empty(kind, r, s_prime.length, f_prime.edge_count());
    let shadow = f_prime.shadow(r - 1)?;
    let mut used = vec![false; f_prime.n()];
    for copy in &s_prime.copies {
        let mut options: Vec<Vec<(EdgeId, Vertex)>> = Vec::with_capacity(copy.len());
        for &gid in &copy.edge_ids {
            let ge = g.try_edge(gid)?;
            let ext: Vec<(EdgeId, Vertex)> = shadow
                .get(ge)
                .iter()
                .map(|&fid| {
                    let x = *f_prime.edge(fid).iter().find(|v| !ge.contains(v)).expect("one extra vertex");
                    (fid, x)
                })
                .collect();
            if ext.is_empty() {
                return Err(Error::DanglingShadow { edge: ge.to_vec() });
            }
            options.push(ext);
        }
        for &v in &copy.witness {
            used[v as usize] = true;
        }
        if distinct {
            for &gid in &copy.edge_ids {
                for &v in g.edge(gid) {
                    used[v as usize] = true;
                }
            }
        }
        let mut ext = Extender {
            options: &options,
            distinct,
            used: &mut used,
            chosen: Vec::with_capacity(copy.len()),
            copy,
            g_r: g.r(),
            out: &mut out,
            cap,
        };
        let ok = ext.go();
        for &v in &copy.witness {
            used[v as usize] = false;
        }
        for &gid in &copy.edge_ids {
            for &v in g.edge(gid) {
                used[v as usize] = false;
            }
        }
        if !ok {
            return Err(Error::Truncated { cap });
        }
    }
    Ok(out)
}

struct Extender<'a> {
    options: &'a [Vec<(EdgeId, Vertex)>],
    distinct: bool,
    used: &'a mut Vec<bool>,
    chosen: Vec<(EdgeId, Vertex)>,
    copy: &'a CycleCopy,
    g_r: usize,
    out: &'a mut CycleCollection,
    cap: usize,
}

impl Extender<'_> {
    /// False once the cap is hit.
    fn go(&mut self) -> bool {
        let i = self.chosen.len();
        if i == self.options.len() {
            return self.emit();
        }
        for &(fid, x) in &self.options[i] {
            if self.distinct {
                if self.used[x as usize] {
                    continue;
                }
                self.used[x as usize] = true;
            } else if self.chosen.iter().any(|&(f, _)| f == fid) {
                continue;
            }
            self.chosen.push((fid, x));
            let go_on = self.go();
            self.chosen.pop();
            if self.distinct {
                self.used[x as usize] = false;
            }
            if !go_on {
                return false;
            }
        }
        true
    }

    fn emit(&mut self) -> bool {
        if self.out.copies.len() == self.cap {
            return false;
        }
        let edge_ids: Vec<EdgeId> = self.chosen.iter().map(|&(f, _)| f).collect();
        let witness = if self.distinct {
            // interior of g_i, then x_i, then the junction
            let m = self.g_r - 1;
            let w = &self.copy.witness;
            let mut out = Vec::with_capacity(w.len() + self.chosen.len());
            for (i, &(_, x)) in self.chosen.iter().enumerate() {
                out.extend_from_slice(&w[i * m..(i + 1) * m - 1]);
                out.push(x);
                out.push(w[(i + 1) * m - 1]);
            }
            out
        } else {
            match self.copy.kind {
                CycleKind::Berge => self.copy.witness.clone(),
                CycleKind::Linear => self.copy.project_to_berge(self.g_r).witness,
            }
        };
        self.out.copies.push(CycleCopy {
            kind: self.out.kind,
            edge_ids,
            witness,
        });
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{enumerate_cycles, is_cycle_copy, CycleFamily};
    use crate::hypergraph::gen_with_edge_count;

    fn four_cycle() -> (Hypergraph, CycleCollection) {
        let g = Hypergraph::new(8, 2, [[0, 1], [1, 2], [2, 3], [3, 0]]).unwrap();
        let s = CycleCollection {
            copies: enumerate_cycles(&g, &CycleFamily::linear(2, 4).unwrap(), 10).unwrap().copies,
            ..CycleCollection::empty(CycleKind::Linear, 2, 4, 4)
        };
        (g, s)
    }

    #[test]
    fn one_extension_each() {
        let (g, s) = four_cycle();
        let f = Hypergraph::new(8, 3, [[0, 1, 4], [1, 2, 5], [2, 3, 6], [0, 3, 7]]).unwrap();
        let out = shadow_extend(&s, &g, &f, true, 100).unwrap();
        assert_eq!(out.len(), 1);
        assert!(is_cycle_copy(&f, &out.copies[0]).unwrap());
    }

    #[test]
    fn shared_new_vertex() {
        let (g, s) = four_cycle();
        let f = Hypergraph::new(8, 3, [[0, 1, 4], [1, 2, 4], [2, 3, 6], [0, 3, 7]]).unwrap();
        assert!(shadow_extend(&s, &g, &f, true, 100).unwrap().is_empty());
        let berge = shadow_extend(&s, &g, &f, false, 100).unwrap();
        assert_eq!(berge.len(), 1);
        assert_eq!(berge.kind, CycleKind::Berge);
        assert!(is_cycle_copy(&f, &berge.copies[0]).unwrap());
    }

    #[test]
    fn dangling_and_bad_mode() {
        let (g, s) = four_cycle();
        let f = Hypergraph::new(8, 3, [[0, 1, 4], [1, 2, 5], [2, 3, 6]]).unwrap();
        assert!(matches!(shadow_extend(&s, &g, &f, true, 100), Err(Error::DanglingShadow { .. })));
        let berge = CycleCollection {
            kind: CycleKind::Berge,
            ..s
        };
        assert!(matches!(shadow_extend(&berge, &g, &f, true, 100), Err(Error::InvalidParameter(_))));
    }

    /// Product-with-exclusion count: all tuples of extending edges, kept
    /// when the new vertices are distinct and outside the copy.
    fn oracle_count(s: &CycleCollection, g: &Hypergraph, f: &Hypergraph, distinct: bool) -> usize {
        let mut total = 0;
        for c in &s.copies {
            let lists: Vec<Vec<EdgeId>> = c
                .edge_ids
                .iter()
                .map(|&gid| (0..f.edge_count()).filter(|&e| g.edge(gid).iter().all(|v| f.edge(e).contains(v))).collect())
                .collect();
            let mut verts: Vec<Vertex> = c.edge_ids.iter().flat_map(|&gid| g.edge(gid).to_vec()).collect();
            verts.sort_unstable();
            verts.dedup();
            let mut idx = vec![0usize; lists.len()];
            'outer: loop {
                let pick: Vec<EdgeId> = idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
                let extra: Vec<Vertex> = pick
                    .iter()
                    .zip(&c.edge_ids)
                    .map(|(&e, &gid)| *f.edge(e).iter().find(|v| !g.edge(gid).contains(v)).unwrap())
                    .collect();
                let mut sorted_pick = pick.clone();
                sorted_pick.sort_unstable();
                sorted_pick.dedup();
                let ok = if distinct {
                    let mut x = extra.clone();
                    x.sort_unstable();
                    x.dedup();
                    x.len() == extra.len() && extra.iter().all(|v| verts.binary_search(v).is_err())
                } else {
                    sorted_pick.len() == pick.len()
                };
                total += usize::from(ok);
                for k in 0..idx.len() {
                    idx[k] += 1;
                    if idx[k] < lists[k].len() {
                        continue 'outer;
                    }
                    idx[k] = 0;
                }
                break;
            }
        }
        total
    }

    #[test]
    fn counts_match_product_oracle() {
        for seed in 0..5 {
            let f = gen_with_edge_count(9, 3, 50, seed).unwrap();
            let pairs: Vec<Vec<Vertex>> = f.shadow(2).unwrap().sorted().into_iter().map(|(s, _)| s).collect();
            let g = Hypergraph::new(9, 2, pairs).unwrap();
            let s = CycleCollection {
                copies: enumerate_cycles(&g, &CycleFamily::linear(2, 4).unwrap(), 200).unwrap().copies,
                ..CycleCollection::empty(CycleKind::Linear, 2, 4, g.edge_count())
            };
            let lin = shadow_extend(&s, &g, &f, true, usize::MAX).unwrap();
            let berge = shadow_extend(&s, &g, &f, false, usize::MAX).unwrap();
            assert_eq!(lin.len(), oracle_count(&s, &g, &f, true));
            assert_eq!(berge.len(), oracle_count(&s, &g, &f, false));
            assert!(berge.len() >= lin.len());
            assert!(lin.all_valid(&f).unwrap() && berge.all_valid(&f).unwrap());
        }
    }
}
