use super::{Hypergraph, Rational};
use crate::{Error, Result};

/// Default limit on the number of edge subsets examined.
pub const DEFAULT_DENSITY_CAP: u128 = 1 << 20;

/// `m_r(H)`: the maximum of `(e(G) - 1)/(v(G) - r)` over subgraphs with at
/// least two edges. Two distinct edges always span more than r vertices,
/// so the denominator is positive.
pub fn m_r_density(h: &Hypergraph) -> Result<Rational> {
    m_r_density_with_cap(h, DEFAULT_DENSITY_CAP)
}

pub fn m_r_density_with_cap(h: &Hypergraph, cap: u128) -> Result<Rational> {
    let m = h.edge_count();
    if m < 2 {
        return Err(Error::Undefined);
    }
    if m >= 127 || (1u128 << m) > cap {
        return Err(Error::TooLarge {
            size: if m >= 127 { u128::MAX } else { 1u128 << m },
            cap,
        });
    }
    // Gray-code walk over edge subsets, maintaining vertex multiplicities.
    let mut mult = vec![0u32; h.n()];
    let mut spanned = 0usize;
    let mut edges = 0usize;
    let mut best: Option<(i64, i64)> = None;
    let r = h.r();
    for i in 1u64..(1u64 << m) {
        let bit = i.trailing_zeros() as usize;
        let gray = i ^ (i >> 1);
        let adding = gray & (1 << bit) != 0;
        for &v in h.edge(bit) {
            let c = &mut mult[v as usize];
            if adding {
                if *c == 0 {
                    spanned += 1;
                }
                *c += 1;
            } else {
                *c -= 1;
                if *c == 0 {
                    spanned -= 1;
                }
            }
        }
        if adding {
            edges += 1;
        } else {
            edges -= 1;
        }
        if edges >= 2 {
            let num = edges as i64 - 1;
            let den = (spanned - r) as i64;
            if best.is_none_or(|(bn, bd)| num * bd > bn * den) {
                best = Some((num, den));
            }
        }
    }
    let (num, den) = best.expect("at least one subgraph with two edges");
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_densities() {
        let c4 = Hypergraph::new(4, 2, [[0, 1], [1, 2], [2, 3], [3, 0]]).unwrap();
        assert_eq!(m_r_density(&c4).unwrap(), Rational::new(3, 2));

        let c34 = Hypergraph::new(8, 3, [[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 0]]).unwrap();
        assert_eq!(m_r_density(&c34).unwrap(), Rational::new(3, 5));

        for r in 2..=5u32 {
            let e1: Vec<u32> = (0..r).collect();
            let e2: Vec<u32> = (r..2 * r).collect();
            let h = Hypergraph::new(2 * r as usize, r as usize, [e1, e2]).unwrap();
            assert_eq!(m_r_density(&h).unwrap(), Rational::new(1, r as i64));
        }
    }

    #[test]
    fn errors() {
        let one = Hypergraph::new(3, 2, [[0, 1]]).unwrap();
        assert!(matches!(m_r_density(&one), Err(Error::Undefined)));
        let k6 = crate::hypergraph::complete(6, 2).unwrap();
        assert!(matches!(
            m_r_density_with_cap(&k6, 1000),
            Err(Error::TooLarge { .. })
        ));
    }
}
