//! Workbench for random Turán problems on uniform hypergraph cycles.
//!
//! The crate is organised around the objects the constructions manipulate:
//!
//! * [`hypergraph`]: r-uniform hosts, shadows and codegrees, random
//!   generators, random r-partitions, the `m_r` density and the `.hg` format.
//! * [`cycles`]: linear cycles `C^r_ℓ` and Berge cycles `B^r_k`; backtracking
//!   enumeration, counting, and a brute-force oracle.
//! * [`supersat`]: balanced supersaturation. Near-regular auxiliary graphs,
//!   greedy expansion, the codegree dichotomy partition, shadow extension and
//!   the recursive driver, plus `Δ_j` profiles and their verification.
//! * [`containers`]: the single container step, the geometric iteration
//!   schedule and iterated container families with covering audits.
//! * [`lab`]: exact and heuristic random Turán numbers, the three lower-bound
//!   constructions, free-subgraph counting, parameter sweeps and SVG plots.
//!
//! Every randomised routine takes an explicit `u64` seed and is a pure
//! function of its arguments; see [`rng`].

pub mod combinatorics;
pub mod containers;
pub mod cycles;
mod error;
pub mod hypergraph;
pub mod lab;
pub mod rng;
pub mod supersat;

pub use error::{Error, Result};
pub use hypergraph::{EdgeId, Hypergraph, Partition, Rational, ShadowMap, Vertex};
