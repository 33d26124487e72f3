//! Representations of the line quiver `1 -> 2 -> ... -> n` by free modules
//! and complexes of them.

mod complex;
mod hat;
mod rep;

pub use complex::{
    random_rep_chain_map, rep_hom_space_dim, rep_homotopy_equivalence, rep_null_homotopy, RepChainMap, RepComplex,
    RepHomotopy,
};
pub use hat::{hat, hat_map};
pub use rep::{LineRep, ProjDecomposition};
