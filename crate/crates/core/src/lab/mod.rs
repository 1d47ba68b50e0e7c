//! Random Turán numbers and the experiments around them.
//!
//! [`exact_random_turan`] solves `ex(H, F)` for a fixed host by
//! branch-and-bound over the copies' edge sets and degrades to a certified
//! interval under budget. The lower-bound constructions (deletion, star and
//! subsample-then-delete) are [`construction_deletion`], [`construction_star`] and [`construction_middle`];
//! [`sweep`] runs them over a grid of `(n, x)` with `p = n^{x-r}` and
//! [`emit_plot`] overlays the measured `log_n ex` on the predicted exponent.

mod constructions;
mod count;
mod exact;
mod plot;
mod prediction;
mod sweep;

pub use constructions::*;
pub use count::*;
pub use exact::{exact_random_turan, extend_to_maximal, greedy_turan_lower, ExactBudget, TuranBound};
pub use plot::*;
pub use prediction::*;
pub use sweep::*;
