use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::supersat::BoundRegime;
use crate::{Error, Result};

/// `t_0 > t_1 > … > t_m` with `t_i = ratio·t_{i-1}` and `m` the first index
/// with `t_m ≤ target`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationSchedule {
    pub t0: f64,
    pub ratio: f64,
    pub target: f64,
    pub ts: Vec<f64>,
}

impl IterationSchedule {
    pub fn geometric(t0: f64, ratio: f64, target: f64) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidParameter(format!("ratio {ratio} outside (0, 1)")));
        }
        if !(target > 0.0 && t0 > 0.0) {
            return Err(Error::InvalidParameter("t_0 and the target must be positive".into()));
        }
        let mut ts = vec![t0];
        let mut t = t0;
        while t > target {
            t *= ratio;
            ts.push(t);
        }
        Ok(IterationSchedule { t0, ratio, target, ts })
    }

    pub fn m(&self) -> usize {
        self.ts.len() - 1
    }
}

/// Edges per unit of t: `n^{r-1}` for linear cycles, `n^{1+1/ℓ}` for graphs
/// and Berge cycles.
pub fn edge_scale(regime: BoundRegime, n: f64, r: usize, ell: usize) -> f64 {
    match regime {
        BoundRegime::Linear3 | BoundRegime::LinearGe4 => n.powi(r as i32 - 1),
        BoundRegime::Graph | BoundRegime::Berge => n.powf(1.0 + 1.0 / ell as f64),
    }
}

/// `exp(-ε/(ln n)^{r-2})`.
pub fn schedule_ratio(n: f64, r: usize, epsilon: f64) -> f64 {
    (-epsilon / n.ln().powi(r as i32 - 2)).exp()
}

/// The schedule of the iterated container construction, starting from the
/// complete r-graph: `t_0 = C(n, r)/scale`.
pub fn schedule(regime: BoundRegime, n: f64, r: usize, ell: usize, t_target: f64, epsilon: f64) -> Result<IterationSchedule> {
    let complete = if n.fract() == 0.0 && n < 1e6 {
        binomial(n as u64, r as u64) as f64
    } else {
        // real n: the falling-factorial form of C(n, r)
        (0..r).map(|i| (n - i as f64) / (i + 1) as f64).product()
    };
    IterationSchedule::geometric(complete / edge_scale(regime, n, r, ell), schedule_ratio(n, r, epsilon), t_target)
}
