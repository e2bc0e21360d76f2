//! Bases of gl(m|n), odd reflections, the linear Weyl group and the
//! universal super Weyl group acting on weight sets through α-strings.

mod cartan;
mod coxeter;
mod weights;
mod word;

pub use cartan::{linear_reflection, linear_weyl_orbit, simple_roots, CartanMatrix, OrbitReport, Root};
pub use coxeter::{check_coxeter, DEFAULT_FLOOR, CoxeterReport, InfiniteEdge, Relation, RelationKind};
pub use weights::{
    alpha_string, apply_word, hook_partitions, order_on, reflect_weight, AlphaString, Weight, WeightSet,
    WeightSetLabel,
};
pub use word::{enumerate_bases, BaseGraph, Letter, ParityWord};
