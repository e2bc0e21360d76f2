//! Exact arithmetic for superizations of gl(∞).
//!
//! Matrices are finitely supported over ℚ and graded by a [`parity::ParityFunction`].
//! Everything else builds on that: central extensions, relabelling by
//! permutations of ℤ, invariants of parity functions, super Weyl groups of
//! gl(m|n), and periodic band matrices with their loop and classical forms.

pub mod error;
pub mod extension;
pub mod growth;
pub mod invariants;
pub mod loops;
pub mod matrix;
pub mod parity;
pub mod permutation;
pub mod sample;
pub mod scalar;
pub mod weyl;
