//! Exact computations with N-complexes of free modules and the functor to
//! complexes of representations of the line quiver.

pub mod acyclicity;
pub mod campaign;
pub mod error;
pub mod functor;
pub mod io;
pub mod homotopy;
pub mod linalg;
pub mod ncomplex;
pub mod par;
pub mod quiver;
pub mod random;

pub use error::{Error, Result};
pub use linalg::{CoeffRing, Elem, RingMatrix};
pub use ncomplex::{ChainMapN, NComplex, Support};
