use serde::Serialize;

use crate::{Error, Result};

/// The predicted exponent `f_{r,ℓ}(x) = lim log_n ex(G^r_{n,p}, C^r_{2ℓ})`
/// at `p = n^{-r+x}`, as lower and upper envelopes (they differ only for
/// r = 3 on a short interval, and for graphs).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prediction {
    pub r: usize,
    pub ell: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Marker {
    pub label: String,
    pub x: f64,
}

impl Prediction {
    pub fn new(r: usize, ell: usize) -> Result<Self> {
        if r < 2 || ell < 2 {
            return Err(Error::InvalidParameter(format!("prediction needs r >= 2 and ell >= 2, got {r}, {ell}")));
        }
        Ok(Prediction { r, ell })
    }

    fn l(&self) -> f64 {
        self.ell as f64
    }

    /// `1 + 1/(2ℓ-1)`.
    pub fn plateau(&self) -> f64 {
        1.0 + 1.0 / (2.0 * self.l() - 1.0)
    }

    /// Where the r = 3 upper envelope leaves the plateau and where it meets
    /// `x - 1`.
    fn gap(&self) -> (f64, f64) {
        let l = self.l();
        (2.0 + 1.0 / (4.0 * l - 2.0), 2.0 + (2.0 * l - 1.0) / (4.0 * l * l - 5.0 * l + 2.0))
    }

    pub fn lower(&self, x: f64) -> f64 {
        let b = self.plateau();
        if self.r == 2 {
            return x.min(b);
        }
        x.min(b.max(x - 1.0))
    }

    pub fn upper(&self, x: f64) -> f64 {
        let l = self.l();
        match self.r {
            2 => {
                // graph case: plateau until p = n^{-(ℓ-1)/(2ℓ-1)}, then p^{1/ℓ}n^{1+1/ℓ}
                let knee = 1.0 + l / (2.0 * l - 1.0);
                if x <= knee {
                    self.lower(x)
                } else {
                    (x - 2.0) / l + 1.0 + 1.0 / l
                }
            }
            3 => {
                let (a, b) = self.gap();
                if x > a && x < b {
                    2.0 * (l - 1.0) / (l * (4.0 * l - 3.0)) * x + (4.0 * l * l - 5.0 * l + 3.0) / (l * (4.0 * l - 3.0))
                } else {
                    self.lower(x)
                }
            }
            _ => self.lower(x),
        }
    }

    /// x-positions where either envelope bends.
    pub fn breakpoints(&self) -> Vec<f64> {
        let b = self.plateau();
        match self.r {
            2 => vec![b, 1.0 + self.l() / (2.0 * self.l() - 1.0)],
            3 => {
                let (a, c) = self.gap();
                vec![b, a, c]
            }
            _ => vec![b, 1.0 + b],
        }
    }

    /// The thresholds `p_0`, `p_1` of the upper bounds as x-positions,
    /// ignoring polylogarithmic factors.
    pub fn markers(&self) -> Vec<Marker> {
        match self.r {
            2 => vec![],
            3 => {
                let (a, b) = self.gap();
                vec![
                    Marker {
                        label: "p0".into(),
                        x: a,
                    },
                    Marker {
                        label: "p1".into(),
                        x: b,
                    },
                ]
            }
            _ => vec![Marker {
                label: "p0".into(),
                x: 1.0 + self.plateau(),
            }],
        }
    }

    /// Polyline vertices of an envelope on `[0, r]`.
    pub fn polyline(&self, upper: bool) -> Vec<(f64, f64)> {
        let mut xs = vec![0.0];
        xs.extend(self.breakpoints());
        xs.push(self.r as f64);
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs.into_iter()
            .map(|x| (x, if upper { self.upper(x) } else { self.lower(x) }))
            .collect()
    }
}
