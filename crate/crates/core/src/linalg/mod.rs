//! Exact dense linear algebra over GF(p), Q and GF(p)[x]/(x^m).

pub(crate) mod field;
mod matrix;
mod ring;
mod subspace;

pub use matrix::RingMatrix;
pub use ring::{CoeffRing, Elem, GroundField};
pub use subspace::{quotient_dim, QuotientDim};
