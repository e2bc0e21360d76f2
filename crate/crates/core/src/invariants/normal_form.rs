use crate::error::{Error, Result};
use crate::parity::{Parity, ParityFunction, TailRule};
use crate::permutation::FinPermutation;

use super::classify::classify;

/// The normalizing permutation of a function in `Inf`: evens go to even
/// integers and odds to odd integers in order, sides preserved, so that
/// `p_st ∘ σ_p = p`.
pub fn sigma_p(p: &ParityFunction) -> Result<FinPermutation> {
    let class = classify(p).class;
    if !class.is_inf() {
        return Err(Error::WrongClass(format!(
            "sigma_p needs a function in Inf, got {}",
            class.label()
        )));
    }
    let f = |x: i64| -> i64 {
        let odd = p.at(x).is_odd();
        if x >= 0 {
            if odd {
                2 * p.odd_count(0, x) as i64 - 1
            } else {
                2 * p.even_count(1, x) as i64
            }
        } else if odd {
            -(2 * p.odd_count(x, -1) as i64 - 1)
        } else {
            -2 * (p.even_count(x, 0) as i64 - 1)
        }
    };
    let t_left = (p.window_lo() - 1).min(-1);
    let t_right = (p.window_hi() + 1).max(0);
    FinPermutation::from_affine_fn(
        f,
        t_left,
        t_right,
        p.left_tail().period(),
        p.right_tail().period(),
    )
}

/// Whether every constant run of `p` has length at most `c`.
pub fn is_tight(p: &ParityFunction, c: u64) -> bool {
    if matches!(p.left_tail(), TailRule::Constant(_)) || matches!(p.right_tail(), TailRule::Constant(_)) {
        return false;
    }
    let pad = 2 * p.tail_period() + 1;
    let lo = p.window_lo() - pad;
    let hi = p.window_hi().max(p.window_lo()) + pad;
    let mut longest = 0u64;
    let mut run = 0u64;
    let mut prev: Option<Parity> = None;
    for i in lo..=hi {
        let v = p.at(i);
        run = if prev == Some(v) { run + 1 } else { 1 };
        prev = Some(v);
        longest = longest.max(run);
    }
    longest <= c
}
