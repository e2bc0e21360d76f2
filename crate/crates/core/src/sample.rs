//! Seeded random generators for randomized checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extension::ExtendedElement;
use crate::invariants::classify;
use crate::loops::{PeriodicBandMatrix, PeriodicType};
use crate::matrix::SuperMatrix;
use crate::parity::{Parity, ParityFunction, TailRule};
use crate::permutation::{FinPermutation, TailMap};
use crate::scalar::Scalar;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A nonzero rational with small numerator and denominator.
    pub fn scalar(&mut self) -> Scalar {
        let mut num = self.rng.random_range(-4..=4);
        if num == 0 {
            num = 1;
        }
        Scalar::new(num, self.rng.random_range(1..=3))
    }

    pub fn parity(&mut self) -> Parity {
        Parity::from_bit(self.rng.random_range(0..=1))
    }

    pub fn parity_word(&mut self, len: usize) -> Vec<Parity> {
        (0..len).map(|_| self.parity()).collect()
    }

    /// An eventually periodic function: a short window between periodic tails.
    pub fn presentation(&mut self) -> ParityFunction {
        let lo = self.rng.random_range(-6..=2);
        let len = self.rng.random_range(0..=6);
        let window = self.parity_word(len);
        let mut tail = || {
            let period = self.rng.random_range(1..=4);
            TailRule::periodic(self.parity_word(period)).expect("nonempty word")
        };
        let left = tail();
        let right = tail();
        ParityFunction::new(lo, window, left, right)
    }

    /// A presentation whose class is `Inf`.
    pub fn inf_presentation(&mut self) -> ParityFunction {
        loop {
            let p = self.presentation();
            if classify(&p).class.is_inf() {
                return p;
            }
        }
    }

    /// `terms` random entries with indices in `[lo, hi]`.
    pub fn matrix(&mut self, p: &Arc<ParityFunction>, lo: i64, hi: i64, terms: usize) -> SuperMatrix {
        let mut m = SuperMatrix::zero(p.clone());
        for _ in 0..terms {
            let i = self.rng.random_range(lo..=hi);
            let j = self.rng.random_range(lo..=hi);
            m.add_at(i, j, &self.scalar());
        }
        m
    }

    /// Like [`Sampler::matrix`] but only at positions of grade `degree`.
    pub fn homogeneous_matrix(&mut self, p: &Arc<ParityFunction>, lo: i64, hi: i64, terms: usize, degree: Parity) -> SuperMatrix {
        let mut m = SuperMatrix::zero(p.clone());
        let mut placed = 0;
        let mut attempts = 0;
        while placed < terms && attempts < 100 * (terms + 1) {
            attempts += 1;
            let i = self.rng.random_range(lo..=hi);
            let j = self.rng.random_range(lo..=hi);
            if p.at(i) + p.at(j) == degree {
                m.add_at(i, j, &self.scalar());
                placed += 1;
            }
        }
        m
    }

    pub fn extended(&mut self, p: &Arc<ParityFunction>, lo: i64, hi: i64, terms: usize, degree: Parity) -> ExtendedElement {
        let mat = self.homogeneous_matrix(p, lo, hi, terms, degree);
        let z = if self.rng.random_bool(0.5) { self.scalar() } else { Scalar::zero() };
        ExtendedElement::new(mat, z)
    }

    /// A composite of one to three shifts, transpositions and pair swaps;
    /// always moves points by a bounded amount.
    pub fn bounded_permutation(&mut self) -> FinPermutation {
        let atoms = self.rng.random_range(1..=3);
        let mut sigma = FinPermutation::identity();
        for _ in 0..atoms {
            let atom = match self.rng.random_range(0..3) {
                0 => FinPermutation::shift(self.rng.random_range(-3..=3)),
                1 => {
                    let a = self.rng.random_range(-6..=6);
                    let b = self.rng.random_range(-6..=6);
                    FinPermutation::swap(a, b)
                }
                _ => pair_swap(),
            };
            sigma = sigma.compose(&atom);
        }
        sigma
    }

    /// A periodic matrix with `terms` random cells inside the band.
    pub fn periodic_band(&mut self, k: i64, band: u64, p: &Arc<ParityFunction>, kind: PeriodicType, terms: usize) -> PeriodicBandMatrix {
        let mut x = PeriodicBandMatrix::zero(k, band, p.clone(), kind).expect("caller supplies a compatible parity");
        for _ in 0..terms {
            let r = self.rng.random_range(0..k);
            let j = r + self.rng.random_range(-(band as i64)..=band as i64);
            let v = self.scalar();
            x.set(r, j, v).expect("cell is inside the band");
        }
        x
    }
}

/// `2m ↔ 2m + 1` for every `m`.
fn pair_swap() -> FinPermutation {
    let tail = || TailMap::new(vec![(1, 2), (0, 2)]).expect("nonzero steps");
    FinPermutation::new(BTreeMap::new(), tail(), tail()).expect("pair swap is bijective")
}
