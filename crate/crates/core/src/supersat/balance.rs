use serde::{Deserialize, Serialize};

use super::CycleCollection;
use crate::cycles::CycleKind;

/// Codegree threshold of the dichotomy step.
///
/// * linear, r = 3: `(t/ln n)^{(2ℓ-1)ℓ/(4ℓ²-5ℓ+2)} · n^{(2ℓ-1)(ℓ-1)/(4ℓ²-5ℓ+2)}`
/// * linear, r ≥ 4: `(t/(ln n)^{r-2})^{(2ℓ-1)/((2ℓ-1)r-2ℓ)} · n^{((2ℓ-1)r-4ℓ+1)/((2ℓ-1)r-2ℓ)}`
/// * Berge: `(t/(ln n)^{r-2})^{ℓ(2ℓ-1)/(2(r-1)ℓ²-(r+2)ℓ+2)}`
pub fn threshold_a(kind: CycleKind, r: usize, ell: usize, t: f64, n: f64) -> f64 {
    let (r_, l) = (r as f64, ell as f64);
    let log = n.ln();
    let scaled = t / log.powi(r as i32 - 2);
    match kind {
        CycleKind::Linear if r == 3 => {
            let den = 4.0 * l * l - 5.0 * l + 2.0;
            (t / log).powf((2.0 * l - 1.0) * l / den) * n.powf((2.0 * l - 1.0) * (l - 1.0) / den)
        }
        CycleKind::Linear => {
            let den = (2.0 * l - 1.0) * r_ - 2.0 * l;
            scaled.powf((2.0 * l - 1.0) / den) * n.powf(((2.0 * l - 1.0) * r_ - 4.0 * l + 1.0) / den)
        }
        CycleKind::Berge => {
            let den = 2.0 * (r_ - 1.0) * l * l - (r_ + 2.0) * l + 2.0;
            scaled.powf(l * (2.0 * l - 1.0) / den)
        }
    }
}

/// Which theorem's Δ-profile shape a bound follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRegime {
    /// Even cycles in graphs, `tn^{1+1/ℓ}` edges.
    Graph,
    /// Linear cycles, r = 3, `tn²` edges.
    Linear3,
    /// Linear cycles, r ≥ 4, `tn^{r-1}` edges.
    LinearGe4,
    /// Berge cycles, `tn^{1+1/ℓ}` edges.
    Berge,
}

impl BoundRegime {
    pub fn for_family(kind: CycleKind, r: usize) -> BoundRegime {
        match (kind, r) {
            (_, 2) => BoundRegime::Graph,
            (CycleKind::Linear, 3) => BoundRegime::Linear3,
            (CycleKind::Linear, _) => BoundRegime::LinearGe4,
            (CycleKind::Berge, _) => BoundRegime::Berge,
        }
    }
}

/// `Δ_j(S) ≤ c · |S| · polylog / (t · scale) · base^{j-1}` for `1 ≤ j ≤ 2ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalanceBound {
    pub regime: BoundRegime,
    pub r: usize,
    pub ell: usize,
    pub n: usize,
    pub t: f64,
    pub c: f64,
}

impl BalanceBound {
    pub fn new(regime: BoundRegime, r: usize, ell: usize, n: usize, t: f64) -> Self {
        BalanceBound {
            regime,
            r,
            ell,
            n,
            t,
            c: 1.0,
        }
    }

    fn log(&self) -> f64 {
        (self.n as f64).ln()
    }

    pub fn polylog(&self) -> f64 {
        match self.regime {
            BoundRegime::Graph => 1.0,
            BoundRegime::Linear3 => self.log(),
            BoundRegime::LinearGe4 | BoundRegime::Berge => self.log().powi(self.r as i32 - 2),
        }
    }

    /// Edge count per unit of t: `n^{1+1/ℓ}`, `n²` or `n^{r-1}`.
    pub fn scale(&self) -> f64 {
        let n = self.n as f64;
        let l = self.ell as f64;
        match self.regime {
            BoundRegime::Graph | BoundRegime::Berge => n.powf(1.0 + 1.0 / l),
            BoundRegime::Linear3 => n * n,
            BoundRegime::LinearGe4 => n.powi(self.r as i32 - 1),
        }
    }

    pub fn base(&self) -> f64 {
        let n = self.n as f64;
        let (l, r, t) = (self.ell as f64, self.r as f64, self.t);
        let tt = t / self.polylog();
        match self.regime {
            BoundRegime::Graph => {
                f64::max(t.powf(-l / (l - 1.0)), n.powf(-(l - 1.0) / (l * (2.0 * l - 1.0))) / t)
            }
            BoundRegime::Linear3 => {
                let den = 4.0 * l * l - 5.0 * l + 2.0;
                let first = tt.powf(-l * (4.0 * l - 3.0) / den) * n.powf(-(l - 1.0) * (4.0 * l - 3.0) / den);
                let second = n.powf(-(2.0 * l - 2.0) / (2.0 * l - 1.0)) / tt;
                first.max(second)
            }
            BoundRegime::LinearGe4 => n.powf(-r + 2.0 + 1.0 / (2.0 * l - 1.0)) / tt,
            BoundRegime::Berge => {
                let num = 2.0 * (r - 1.0) * l * l - r * l;
                let den = 2.0 * (r - 1.0) * l * l - (r + 2.0) * l + 2.0;
                f64::max(tt.powf(-num / den), n.powf(-(l - 1.0) / (l * (2.0 * l - 1.0))) / tt)
            }
        }
    }

    /// `λ = (r-2)/(2ℓ-2)`, the exponent shift of the Berge estimates.
    pub fn lambda(&self) -> f64 {
        (self.r as f64 - 2.0) / (2.0 * self.ell as f64 - 2.0)
    }

    /// Right side for `Δ_j` given `|S|`.
    pub fn bound(&self, j: usize, size: usize) -> f64 {
        self.c * size as f64 * self.polylog() / (self.t * self.scale()) * self.base().powi(j as i32 - 1)
    }

    pub fn with_c(self, c: f64) -> Self {
        BalanceBound { c, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalanceReport {
    pub size: usize,
    pub profile: Vec<u64>,
    /// Bound values at the bound's own `c`.
    pub bounds: Vec<f64>,
    /// `Δ_j / bound_j`, zero when `Δ_j = 0`.
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    /// Smallest `c` for which every `Δ_j` meets the bound.
    pub implied_c: f64,
}

impl BalanceReport {
    pub fn holds(&self) -> bool {
        self.max_ratio <= 1.0
    }
}

pub fn verify_balance(s: &CycleCollection, bound: &BalanceBound) -> BalanceReport {
    let profile = s.delta_profile();
    let size = s.len();
    let unit = bound.with_c(1.0);
    let mut bounds = Vec::with_capacity(profile.len());
    let mut ratios = Vec::with_capacity(profile.len());
    let mut implied_c: f64 = 0.0;
    for (i, &d) in profile.iter().enumerate() {
        let j = i + 1;
        bounds.push(bound.bound(j, size));
        if d == 0 {
            ratios.push(0.0);
            continue;
        }
        ratios.push(d as f64 / bound.bound(j, size));
        implied_c = implied_c.max(d as f64 / unit.bound(j, size));
    }
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    BalanceReport {
        size,
        profile,
        bounds,
        ratios,
        max_ratio,
        implied_c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::CycleCopy;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * b.abs().max(1.0)
    }

    #[test]
    fn thresholds_by_substitution() {
        let n: f64 = 1000.0;
        let a3 = threshold_a(CycleKind::Linear, 3, 2, n.ln(), n);
        assert!(close(a3, n.powf(3.0 / 8.0)));
        let t = 5.0;
        let a4 = threshold_a(CycleKind::Linear, 4, 2, t, n);
        assert!(close(a4, (t / n.ln().powi(2)).powf(3.0 / 8.0) * n.powf(5.0 / 8.0)));
        // at n = e, t = 1 only the n-power survives
        let e = std::f64::consts::E;
        for r in 3..7 {
            assert!(close(threshold_a(CycleKind::Berge, r, 3, 1.0, e), 1.0));
        }
        assert!(close(threshold_a(CycleKind::Linear, 3, 3, 1.0, e), e.powf(10.0 / 23.0)));
        assert!(close(threshold_a(CycleKind::Linear, 5, 3, 1.0, e), e.powf(14.0 / 19.0)));
    }

    #[test]
    fn bases_in_range() {
        for (regime, r) in [
            (BoundRegime::Graph, 2),
            (BoundRegime::Linear3, 3),
            (BoundRegime::LinearGe4, 5),
            (BoundRegime::Berge, 4),
        ] {
            let b = BalanceBound::new(regime, r, 2, 1 << 20, 1e3).base();
            assert!(b > 0.0 && b <= 1.0, "{regime:?} {b}");
        }
        let berge = BalanceBound::new(BoundRegime::Berge, 4, 2, 100, 10.0);
        assert!(close(berge.lambda(), 1.0));
    }

    #[test]
    fn empty_and_single_copy() {
        let bound = BalanceBound::new(BoundRegime::Linear3, 3, 2, 12, 1.5);
        let mut s = CycleCollection::empty(CycleKind::Linear, 3, 4, 10);
        let rep = verify_balance(&s, &bound);
        assert!(rep.ratios.iter().all(|&x| x == 0.0) && rep.holds());
        s.copies.push(CycleCopy {
            kind: CycleKind::Linear,
            edge_ids: vec![0, 1, 2, 3],
            witness: vec![],
        });
        let rep = verify_balance(&s, &bound);
        assert!(rep.ratios.iter().all(|x| x.is_finite() && *x > 0.0));
        let fitted = verify_balance(&s, &bound.with_c(rep.implied_c));
        assert!(close(fitted.max_ratio, 1.0));
    }
}
