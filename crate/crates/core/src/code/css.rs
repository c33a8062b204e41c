use crate::error::{Error, Result};
use crate::gf2::{mat_mul_mod2, SparseBitMatrix};

use super::base::QcBaseMatrix;

/// CSS stabilizer code given by the pair `(H_X, H_Z)`.
#[derive(Clone, Debug)]
pub struct CssCode {
    pub name: String,
    pub h_x: SparseBitMatrix,
    pub h_z: SparseBitMatrix,
    pub n: usize,
    pub k: usize,
    pub d_label: Option<usize>,
}

impl CssCode {
    /// Checks column counts and computes `k = n - rank(H_X) - rank(H_Z)`.
    ///
    /// Commutation is not enforced here; see [`css_validate`].
    pub fn new(name: impl Into<String>, h_x: SparseBitMatrix, h_z: SparseBitMatrix) -> Result<Self> {
        if h_x.cols() != h_z.cols() {
            return Err(Error::Dimension {
                op: "css code columns",
                expected: h_x.cols(),
                got: h_z.cols(),
            });
        }
        let n = h_x.cols();
        let rank = h_x.rank() + h_z.rank();
        // rank > n only happens for non-commuting pairs
        let k = n.saturating_sub(rank);
        Ok(Self {
            name: name.into(),
            h_x,
            h_z,
            n,
            k,
            d_label: None,
        })
    }

    pub fn with_distance(mut self, d: usize) -> Self {
        self.d_label = Some(d);
        self
    }
}

/// Lifted product of two quasi-cyclic base matrices with a shared circulant size.
///
/// `H_X = [A ⊗ I | I ⊗ B*]`, `H_Z = [I ⊗ B | A* ⊗ I]`, both lifted. With `L = 1`
/// this is the hypergraph product.
pub fn lifted_product(a: &QcBaseMatrix, b: &QcBaseMatrix) -> Result<CssCode> {
    let (hx, hz) = lifted_product_bases(a, b)?;
    let mut code = CssCode::new("", hx.lift(), hz.lift())?;
    code.name = format!("lp_n{}_k{}", code.n, code.k);
    Ok(code)
}

/// The unlifted `(H_X, H_Z)` base matrices of the lifted product.
pub fn lifted_product_bases(
    a: &QcBaseMatrix,
    b: &QcBaseMatrix,
) -> Result<(QcBaseMatrix, QcBaseMatrix)> {
    if a.lift_size() != b.lift_size() {
        return Err(Error::LiftSizeMismatch(a.lift_size(), b.lift_size()));
    }
    let l = a.lift_size();
    let (ma, na, mb, nb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let a_star = a.conjugate_transpose();
    let b_star = b.conjugate_transpose();
    let hx = a
        .kron(&QcBaseMatrix::identity(nb, l))?
        .hstack(&QcBaseMatrix::identity(ma, l).kron(&b_star)?)?;
    let hz = QcBaseMatrix::identity(na, l)
        .kron(b)?
        .hstack(&a_star.kron(&QcBaseMatrix::identity(mb, l))?)?;
    Ok((hx, hz))
}

/// Result of checking a CSS pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub commutes: bool,
    /// `(x_row, z_row)` pairs whose supports overlap on an odd number of qubits.
    pub offending_pairs: Vec<(usize, usize)>,
    pub n: usize,
    pub k: usize,
    pub rank_x: usize,
    pub rank_z: usize,
    pub hx_row_degrees: Vec<usize>,
    pub hx_col_degrees: Vec<usize>,
    pub hz_row_degrees: Vec<usize>,
    pub hz_col_degrees: Vec<usize>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.commutes
    }
}

/// Summarizes a degree list as `min..=max`, or a single value when regular.
pub fn degree_summary(degrees: &[usize]) -> String {
    match (degrees.iter().min(), degrees.iter().max()) {
        (Some(lo), Some(hi)) if lo == hi => format!("{lo}"),
        (Some(lo), Some(hi)) => format!("{lo}..={hi}"),
        _ => "-".to_string(),
    }
}

pub fn css_validate(code: &CssCode) -> ValidationReport {
    let hx = code.h_x.to_dense();
    let hz = code.h_z.to_dense();
    let (offending_pairs, n) = if hx.cols() == hz.cols() {
        let product = mat_mul_mod2(&hx, &hz.transpose()).expect("conformable by column check");
        let mut pairs = Vec::new();
        for i in 0..product.rows() {
            for j in product.row(i).iter_ones() {
                pairs.push((i, j));
            }
        }
        (pairs, hx.cols())
    } else {
        (vec![(usize::MAX, usize::MAX)], hx.cols().max(hz.cols()))
    };
    let rank_x = hx.rank();
    let rank_z = hz.rank();
    ValidationReport {
        commutes: offending_pairs.is_empty(),
        offending_pairs,
        n,
        k: n.saturating_sub(rank_x + rank_z),
        rank_x,
        rank_z,
        hx_row_degrees: code.h_x.row_degrees(),
        hx_col_degrees: code.h_x.col_degrees(),
        hz_row_degrees: code.h_z.row_degrees(),
        hz_col_degrees: code.h_z.col_degrees(),
    }
}
