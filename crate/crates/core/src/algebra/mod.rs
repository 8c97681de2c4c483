//! Exact arithmetic in the free associative Z-algebra without unity.
//!
//! Elements are kept as [`CanonicalForm`]s: integer combinations of nonempty
//! words, ordered degree-lexicographically by generator index.

mod expr;
mod form;
mod word;

pub use expr::{apply_substitution, normalize, Expression, Substitution};
pub use form::{cf_add, cf_mul, cf_scale, CanonicalForm};
pub use word::{Alphabet, Generator, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator names must be nonempty")]
    EmptyGeneratorName,
    #[error("alphabet too large")]
    AlphabetTooLarge,
    #[error("substitution has no binding for `{0}`")]
    UnboundVariable(String),
    #[error("exponent must be at least 1")]
    ZeroExponent,
}

/// Degree of a form (0 for the zero form).
pub fn degree(a: &CanonicalForm) -> usize {
    a.degree()
}
