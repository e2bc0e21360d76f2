#![allow(dead_code)]

use std::sync::Arc;

use proptest::collection::vec;
use proptest::prelude::*;
use superglinf::matrix::SuperMatrix;
use superglinf::parity::{Parity, ParityFunction, TailRule};
use superglinf::permutation::FinPermutation;
use superglinf::sample::Sampler;
use superglinf::scalar::Scalar;

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Scalar::new(n, d))
}

pub fn parity() -> impl Strategy<Value = Parity> {
    any::<bool>().prop_map(|b| Parity::from_bit(b as u8))
}

pub fn word(max: usize) -> impl Strategy<Value = Vec<Parity>> {
    vec(parity(), 1..=max)
}

/// A short explicit window between two periodic tails.
pub fn presentation() -> impl Strategy<Value = ParityFunction> {
    (-6i64..=2, vec(parity(), 0..=6), word(4), word(4)).prop_map(|(lo, window, left, right)| {
        ParityFunction::new(lo, window, TailRule::periodic(left).unwrap(), TailRule::periodic(right).unwrap())
    })
}

pub fn matrix_over(p: Arc<ParityFunction>, max_terms: usize) -> impl Strategy<Value = SuperMatrix> {
    vec((-5i64..=5, -5i64..=5, scalar()), 0..=max_terms).prop_map(move |e| SuperMatrix::from_entries(p.clone(), e))
}

/// Three matrices sharing one random parity function.
pub fn triple() -> impl Strategy<Value = (SuperMatrix, SuperMatrix, SuperMatrix)> {
    presentation().prop_flat_map(|p| {
        let p = Arc::new(p);
        (matrix_over(p.clone(), 5), matrix_over(p.clone(), 5), matrix_over(p, 5))
    })
}

pub fn bounded_permutation() -> impl Strategy<Value = FinPermutation> {
    any::<u64>().prop_map(|seed| Sampler::new(seed).bounded_permutation())
}

pub fn sign(odd: bool) -> Scalar {
    if odd {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}
