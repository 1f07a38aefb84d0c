//! Finite simplicial complexes, product-cell complexes (deleted products) and
//! their chain complexes over GF(2).

mod cell;
mod chain;
mod simplicial;
pub mod text;

pub use cell::{deleted_product, CellComplex, ProductCell};
pub use chain::{chain_complex, ChainComplex, ToChainComplex};
pub(crate) use simplicial::disjoint;
pub use simplicial::{deleted_join2, deleted_join_shift, simplex_skeleton, Face, SimplicialComplex};
