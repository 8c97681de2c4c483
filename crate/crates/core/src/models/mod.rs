//! Finite rings of small order: additive groups by invariant factors,
//! multiplications by backtracking over products of additive generators.
//! Rings are not identified up to isomorphism; counts are per group table.

mod crosscheck;
mod group;
mod ring;
mod search;

use thiserror::Error;

pub use crosscheck::{crosscheck, CrosscheckReport, HypothesisSummary, Violation};
pub use group::{enumerate_abelian_groups, AbelianGroupTable};
pub use ring::{eval_axiom, CompiledForm, CompiledStatement, FiniteRing, MAX_VARS};
pub use search::{
    collect_rings, count_rings, find_counterexample, Counterexample, find_ring, search_rings, AxiomSet, SearchMode, SearchResult,
};

/// Largest supported ring order.
pub const MAX_ORDER: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("order {0} is outside 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("`{name}` has {count} variables; at most {MAX_VARS} can be evaluated")]
    TooManyVariables { name: String, count: usize },
    #[error("{0}")]
    Algebra(String),
}
