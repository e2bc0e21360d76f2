//! Invariants of parity functions under the permutation groups.

mod classify;
mod equivalence;
mod normal_form;
mod spectrum;

pub use classify::{classify, density, odd_count, Classification, Count, CountInvariants, ParityClass, SidePattern};
pub use equivalence::{equivalent, EquivalenceWitness};
pub use normal_form::{is_tight, sigma_p};
pub use spectrum::{spectrum, Schedule, Side, SpectrumEstimate, SpectrumInput, SpectrumSample};
