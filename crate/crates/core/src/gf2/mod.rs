//! Binary linear algebra over GF(2).

mod dense;
pub mod io;
mod rowspace;
mod sparse;
mod vector;

pub use dense::{mat_mul_mod2, rank_mod2, BitMatrix};
pub use rowspace::{in_rowspace, RowSpace};
pub use sparse::{mat_vec_mod2, SparseBitMatrix};
pub use vector::BitVector;
