//! Periodic band matrices, their loop-algebra picture, and classical-type
//! subalgebras cut out by involutions.

mod laurent;
mod periodic;
mod subalgebra;

pub use laurent::{from_loop, to_loop, LaurentMatrix, LaurentPoly};
pub use periodic::{PeriodicBandMatrix, PeriodicType};
pub use subalgebra::{subalgebra_member, subalgebra_project, InvolutionSpec};

use crate::parity::ParityFunction;

/// Checks a pointwise relation between `p` at `i` and at an index within
/// `reach` of `±i`. Far from the window both sides sit in periodic tails, so
/// the relation is periodic there and a finite scan decides it.
fn holds_everywhere(p: &ParityFunction, reach: i64, pred: impl Fn(i64) -> bool) -> bool {
    let radius = p.window_lo().abs().max(p.window_hi().abs()) + 2 * p.tail_period() + reach.abs() + 2;
    (-radius..=radius).all(pred)
}
