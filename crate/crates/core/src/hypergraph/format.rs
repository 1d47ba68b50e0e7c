//! The `.hg` text format: a header line `r n m`, then m lines of r vertex ids.

use std::io::Write;
use std::path::Path;

use rustc_hash::FxHashSet;

use super::{pack, Hypergraph, Vertex};
use crate::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_hg(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `r n m`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_err(hline, "header must be `r n m`"));
    }
    let num = |s: &str, what: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_err(hline, format!("{what} `{s}` is not a non-negative integer")))
    };
    let (r, n, m) = (num(fields[0], "r")?, num(fields[1], "n")?, num(fields[2], "m")?);
    let mut edges: Vec<Vec<Vertex>> = Vec::with_capacity(m);
    let mut seen = FxHashSet::default();
    Hypergraph::empty(n, r).map_err(|e| parse_err(hline, e.to_string()))?;

    for (line, body) in lines.by_ref() {
        if edges.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} edges")));
        }
        let mut e = Vec::with_capacity(r);
        for tok in body.split_whitespace() {
            let v: Vertex = tok
                .parse()
                .map_err(|_| parse_err(line, format!("`{tok}` is not a vertex id")))?;
            if v as usize >= n {
                return Err(parse_err(line, format!("vertex {v} is not below n = {n}")));
            }
            e.push(v);
        }
        if e.len() != r {
            return Err(parse_err(line, format!("expected {r} vertices, found {}", e.len())));
        }
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_err(line, "repeated vertex in edge"));
        }
        if !seen.insert(pack(&e)) {
            return Err(parse_err(line, format!("duplicate edge {e:?}")));
        }
        edges.push(e);
    }
    if edges.len() != m {
        let last = text.lines().count().max(1);
        return Err(parse_err(last, format!("declared {m} edges, found {}", edges.len())));
    }
    Ok(Hypergraph::from_sorted_unchecked(n, r, edges))
}

pub fn read_hg(path: impl AsRef<Path>) -> Result<Hypergraph> {
    parse_hg(&std::fs::read_to_string(path)?)
}

/// Serialises with edges in lexicographic order.
pub fn write_hg<W: Write>(h: &Hypergraph, mut out: W) -> Result<()> {
    writeln!(out, "{} {} {}", h.r(), h.n(), h.edge_count())?;
    for e in h.sorted_edges() {
        let line: Vec<String> = e.iter().map(u32::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn to_hg_string(h: &Hypergraph) -> String {
    let mut buf = Vec::new();
    write_hg(h, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn write_hg_file(h: &Hypergraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_hg_string(h))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_sorted() {
        let h = Hypergraph::new(5, 3, [[4, 2, 3], [0, 1, 2]]).unwrap();
        let s = to_hg_string(&h);
        assert_eq!(s, "3 5 2\n0 1 2\n2 3 4\n");
        assert!(parse_hg(&s).unwrap().same_edge_set(&h));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line_of = |text: &str| match parse_hg(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of(""), 1);
        assert_eq!(line_of("3 5"), 1);
        assert_eq!(line_of("3 5 2\n0 1 2\n0 1\n"), 3);
        assert_eq!(line_of("3 5 1\n0 1 9\n"), 2);
        assert_eq!(line_of("3 5 2\n0 1 2\n2 1 0\n"), 3);
        assert_eq!(line_of("3 5 1\n0 0 2\n"), 2);
        assert_eq!(line_of("3 5 1\n0 1 2\n1 2 3\n"), 3);
        assert_eq!(line_of("2 5 2\n0 1\n"), 2);
        assert_eq!(line_of("2 5 1\n0 x\n"), 2);
    }
}
