//! Quasi-cyclic lifting and lifted-product CSS codes.

mod base;
mod css;

pub use base::{conjugate_transpose, lift, tanner_base, QcBaseMatrix};
pub use css::{
    css_validate, degree_summary, lifted_product, lifted_product_bases, CssCode, ValidationReport,
};

use crate::gf2::SparseBitMatrix;

/// `(m-1) x m` parity-check matrix of the length-`m` repetition code.
pub fn repetition_check(len: usize) -> SparseBitMatrix {
    let rows = len.saturating_sub(1);
    SparseBitMatrix::new(rows, len, (0..rows).map(|i| vec![i, i + 1]).collect())
        .expect("repetition check within bounds")
}

/// Hypergraph product of two classical parity-check matrices.
pub fn hypergraph_product(a: &SparseBitMatrix, b: &SparseBitMatrix) -> crate::Result<CssCode> {
    lifted_product(&QcBaseMatrix::from_binary(a), &QcBaseMatrix::from_binary(b))
}

/// The [[13,1,3]] hypergraph product of the length-3 repetition code with itself.
pub fn hgp_rep3() -> CssCode {
    let h = repetition_check(3);
    let mut code = hypergraph_product(&h, &h).expect("rep-3 HGP builds");
    code.name = "hgp_rep3".into();
    code.with_distance(3)
}

/// The [[1054,140,20]] lifted product of the Tanner base with itself.
pub fn lp_tanner() -> CssCode {
    let t = tanner_base();
    let mut code = lifted_product(&t, &t).expect("Tanner LP builds");
    code.name = "lp_tanner".into();
    code.with_distance(20)
}
