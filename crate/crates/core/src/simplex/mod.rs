//! Finite ordinals and the order-preserving arrows between them.
//!
//! An ordinal `n` is the chain `{0, …, n-1}`. Three arrow kinds live here:
//! [`TotalMap`] (the category Δ), [`PartialMap`] (Δ_par) and [`IntervalMap`]
//! (Δ_Int). [`OpArrow`] stores an arrow `[m] → [n]` of Δᵒᵖ through its
//! underlying Δ-map `n+1 → m+1`.

mod enumerate;
mod maps;
mod notation;
mod op;

use thiserror::Error;

pub use enumerate::{
    binomial, enumerate_hom, enumerate_interval, enumerate_op, enumerate_partial,
    enumerate_total, HomKind,
};
pub use maps::{eta1, mu1, pi1, IntervalMap, PartialMap, TotalMap};
pub use notation::{generator, AnyMap, GeneratorTag};
pub use op::{factorize, recompose, Generator, OpArrow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("image {value} at position {position} is outside the target ordinal {target}")]
    OutOfRange {
        position: usize,
        value: usize,
        target: usize,
    },
    #[error("images decrease at position {position}")]
    NotMonotone { position: usize },
    #[error("no total map {source_size} → 0 exists")]
    EmptyTarget { source_size: usize },
    #[error("interval map {source_size} → {target}: {reason}")]
    NotInterval {
        source_size: usize,
        target: usize,
        reason: &'static str,
    },
    #[error("cannot compose: first arrow ends at {first_target}, second starts at {second_source}")]
    ShapeMismatch {
        first_target: usize,
        second_source: usize,
    },
    #[error("arrow of Δᵒᵖ needs a map between nonempty ordinals, got {source_size} → {target}")]
    EmptyOrdinal { source_size: usize, target: usize },
    #[error("edge arrow i_{j} is undefined at level {n}")]
    EdgeIndex { n: usize, j: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// An arrow of a category whose objects are natural numbers.
///
/// For ordinary maps the objects are ordinal sizes; for [`OpArrow`] they are
/// the levels `[n]`.
pub trait Arrow: Clone + Eq + std::fmt::Debug + std::fmt::Display {
    fn source(&self) -> usize;
    fn target(&self) -> usize;

    /// Identity at object `n`. Panics for objects outside the category
    /// (interval maps need `n >= 2`).
    fn identity(n: usize) -> Self;

    /// `self ∘ first`: apply `first`, then `self`.
    fn compose(&self, first: &Self) -> Result<Self, SimplexError>;
}

/// Arrow kinds closed under the side-by-side tensor of Δ.
pub trait Tensor: Arrow {
    fn tensor(&self, other: &Self) -> Self;
}

pub fn identity<A: Arrow>(n: usize) -> A {
    A::identity(n)
}

pub fn compose<A: Arrow>(second: &A, first: &A) -> Result<A, SimplexError> {
    second.compose(first)
}

pub fn tensor<A: Tensor>(left: &A, right: &A) -> A {
    left.tensor(right)
}
