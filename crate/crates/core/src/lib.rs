//! Finite logical matrices, fibring by functions, and connective sharing.
//!
//! A *logical matrix* pairs a finite algebra with a set of designated truth
//! values; it induces a consequence relation by exhaustive valuation. This
//! crate builds such matrices, combines two of them through a *fibring pair*
//! of translation maps `(λ: A₁ → A₂, μ: A₂ → A₁)`, and decides the questions
//! that make the combination useful in practice:
//!
//! - entailment and tautologyhood in a single matrix ([`matrix`]);
//! - construction of the fibred matrix over the disjoint union of the two
//!   carriers, together with an independent recursive evaluator that must
//!   agree with it ([`fibring`]);
//! - admissibility and compatibility of fibring pairs, and exhaustive
//!   enumeration of the admissible ones ([`fibring`]);
//! - bounded weak/strong conservative-extension checks of the fibred logic
//!   over its components ([`conservativity`]);
//! - whether a fibring makes two connectives indistinguishable, i.e. whether
//!   swapping occurrences of one for the other ever changes designation
//!   ([`identification`]);
//! - clones of term operations and equivalence of matrix presentations
//!   ([`clones`]).
//!
//! A catalogue of classical, paraconsistent, and many-valued reference
//! matrices ships in [`catalog`], and [`verification`] re-derives the worked
//! examples and identities the library is built around. The `matfib` binary
//! exposes all of this on the command line.

pub mod catalog;
pub mod clones;
pub mod closure;
pub mod conservativity;
pub mod fibring;
pub mod formula;
pub mod identification;
pub mod matrix;
pub mod parse;
pub mod render;
pub mod signature;
pub mod verification;

pub use fibring::{
    count_admissible_pairs, enumerate_admissible_pairs, fibre, is_admissible, is_compatible,
    sfv_evaluate, star_lambda, star_mu, FibredMatrix, FibringPair, Side, TaggedValue,
};
pub use formula::Formula;
pub use matrix::{Entailment, Matrix, Valuation};
pub use signature::Signature;

/// Errors reported by every layer of the crate.
///
/// One enum keeps the FFI error-code mapping and the CLI exit-code mapping
/// simple; the variants say which stage rejected the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A formula or spec file failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
    /// A matrix definition is incomplete or inconsistent.
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    /// A fibring pair does not fit the matrices it is used with.
    #[error("invalid fibring pair: {0}")]
    InvalidPair(String),
    /// A formula refers to values, variables, or connectives that do not
    /// exist in the matrix it is evaluated against.
    #[error("evaluation error: {0}")]
    Eval(String),
    /// Arguments violate an operation's precondition.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub(crate) fn matrix(msg: impl Into<String>) -> Self {
        Error::InvalidMatrix(msg.into())
    }
    pub(crate) fn pair(msg: impl Into<String>) -> Self {
        Error::InvalidPair(msg.into())
    }
    pub(crate) fn eval(msg: impl Into<String>) -> Self {
        Error::Eval(msg.into())
    }
    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
