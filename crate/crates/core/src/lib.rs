//! Mechanical verification of equational proofs in rings without unity.
//!
//! The kernel works in the free Z-rng over a finite alphabet ([`algebra`]),
//! decides degree-bounded two-sided ideal membership with integer witnesses
//! ([`membership`]), and checks `.rpf` proof scripts ([`syntax`], [`checker`]).
//! A small finite ring enumerator ([`models`]) corroborates the results.

pub mod algebra;
pub mod syntax;
pub mod checker;
pub mod membership;
pub mod models;
