//! Truncated free graded-commutative algebras with Koszul signs.
//!
//! Odd generators square to zero, even generators are polynomial up to the
//! truncation degree (or up to an optional height relation). Monomials are kept
//! in declaration order; [`Presentation::normalize_product`] carries the sign of
//! reordering.

mod monomial;
mod presentation;
mod vector;

pub use monomial::Monomial;
pub use presentation::{
    GeneratorDecl, HeightRelation, Presentation, PresentationId, SignedMonomial,
    TruncationBound,
};
pub use vector::GradedVector;
