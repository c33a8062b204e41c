use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::SparseBitMatrix;

/// Quasi-cyclic base matrix with monomial-or-zero entries over the ring of `L x L` circulants.
///
/// `Some(e)` is the circulant permutation shifting by `e`; `None` is the all-zero block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BaseFile", into = "BaseFile")]
pub struct QcBaseMatrix {
    rows: usize,
    cols: usize,
    lift_size: usize,
    entries: Vec<Option<usize>>,
}

/// On-disk JSON layout; `-1` marks an absent block.
#[derive(Serialize, Deserialize)]
struct BaseFile {
    #[serde(rename = "L")]
    lift_size: usize,
    rows: usize,
    cols: usize,
    exponents: Vec<Vec<i64>>,
}

impl TryFrom<BaseFile> for QcBaseMatrix {
    type Error = Error;

    fn try_from(f: BaseFile) -> Result<Self> {
        if f.exponents.len() != f.rows {
            return Err(Error::InvalidBase(format!(
                "expected {} exponent rows, got {}",
                f.rows,
                f.exponents.len()
            )));
        }
        let mut grid = Vec::with_capacity(f.rows);
        for (i, row) in f.exponents.iter().enumerate() {
            if row.len() != f.cols {
                return Err(Error::InvalidBase(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    f.cols
                )));
            }
            let mut cells = Vec::with_capacity(f.cols);
            for &e in row {
                cells.push(match e {
                    -1 => None,
                    e if e >= 0 => Some(e as usize),
                    e => return Err(Error::InvalidBase(format!("negative exponent {e}"))),
                });
            }
            grid.push(cells);
        }
        QcBaseMatrix::new(f.lift_size, grid)
    }
}

impl From<QcBaseMatrix> for BaseFile {
    fn from(b: QcBaseMatrix) -> Self {
        BaseFile {
            lift_size: b.lift_size,
            rows: b.rows,
            cols: b.cols,
            exponents: (0..b.rows)
                .map(|i| {
                    (0..b.cols)
                        .map(|j| b.get(i, j).map_or(-1, |e| e as i64))
                        .collect()
                })
                .collect(),
        }
    }
}

impl QcBaseMatrix {
    pub fn new(lift_size: usize, grid: Vec<Vec<Option<usize>>>) -> Result<Self> {
        if lift_size == 0 {
            return Err(Error::InvalidBase("circulant size must be positive".into()));
        }
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows * cols);
        for (i, row) in grid.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidBase(format!("ragged row {i}")));
            }
            for e in row {
                if let Some(e) = e {
                    if e >= lift_size {
                        return Err(Error::InvalidBase(format!(
                            "exponent {e} not below circulant size {lift_size}"
                        )));
                    }
                }
                entries.push(e);
            }
        }
        Ok(Self {
            rows,
            cols,
            lift_size,
            entries,
        })
    }

    /// Base matrix with every entry the identity circulant (exponent 0).
    pub fn all_identity(rows: usize, cols: usize, lift_size: usize) -> Self {
        Self {
            rows,
            cols,
            lift_size,
            entries: vec![Some(0); rows * cols],
        }
    }

    /// `L = 1` base matrix reproducing a binary matrix: ones become exponent 0.
    pub fn from_binary(m: &SparseBitMatrix) -> Self {
        let mut entries = vec![None; m.rows() * m.cols()];
        for (i, row) in m.iter_rows().enumerate() {
            for &j in row {
                entries[i * m.cols() + j] = Some(0);
            }
        }
        Self {
            rows: m.rows(),
            cols: m.cols(),
            lift_size: 1,
            entries,
        }
    }

    pub(crate) fn zeros(rows: usize, cols: usize, lift_size: usize) -> Self {
        Self {
            rows,
            cols,
            lift_size,
            entries: vec![None; rows * cols],
        }
    }

    pub(crate) fn identity(size: usize, lift_size: usize) -> Self {
        let mut m = Self::zeros(size, size, lift_size);
        for i in 0..size {
            m.set(i, i, Some(0));
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn lift_size(&self) -> usize {
        self.lift_size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        assert!(i < self.rows && j < self.cols, "base index ({i},{j}) out of range");
        self.entries[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, e: Option<usize>) {
        debug_assert!(e.is_none_or(|e| e < self.lift_size));
        self.entries[i * self.cols + j] = e;
    }

    /// Transposes the grid and negates every exponent mod `L`.
    pub fn conjugate_transpose(&self) -> QcBaseMatrix {
        let l = self.lift_size;
        let mut out = Self::zeros(self.cols, self.rows, l);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).map(|e| (l - e) % l));
            }
        }
        out
    }

    /// Kronecker product over the monomial ring: exponents add mod `L`, zero absorbs.
    pub fn kron(&self, other: &QcBaseMatrix) -> Result<QcBaseMatrix> {
        if self.lift_size != other.lift_size {
            return Err(Error::LiftSizeMismatch(self.lift_size, other.lift_size));
        }
        let l = self.lift_size;
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols, l);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let Some(a) = self.get(i1, j1) else { continue };
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        if let Some(b) = other.get(i2, j2) {
                            out.set(i1 * other.rows + i2, j1 * other.cols + j2, Some((a + b) % l));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &QcBaseMatrix) -> Result<QcBaseMatrix> {
        if self.lift_size != other.lift_size {
            return Err(Error::LiftSizeMismatch(self.lift_size, other.lift_size));
        }
        if self.rows != other.rows {
            return Err(Error::Dimension {
                op: "hstack",
                expected: self.rows,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols, self.lift_size);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Product of monomial matrices. Fails if two nonzero terms land on one cell,
    /// since the result would leave the monomial-or-zero entry class.
    pub fn monomial_mul(&self, other: &QcBaseMatrix) -> Result<QcBaseMatrix> {
        if self.lift_size != other.lift_size {
            return Err(Error::LiftSizeMismatch(self.lift_size, other.lift_size));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension {
                op: "monomial_mul",
                expected: self.cols,
                got: other.rows,
            });
        }
        let l = self.lift_size;
        let mut out = Self::zeros(self.rows, other.cols, l);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = None;
                for k in 0..self.cols {
                    if let (Some(a), Some(b)) = (self.get(i, k), other.get(k, j)) {
                        if acc.is_some() {
                            return Err(Error::InvalidBase(format!(
                                "product entry ({i},{j}) is not a monomial"
                            )));
                        }
                        acc = Some((a + b) % l);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Expands each entry into its `L x L` circulant block.
    pub fn lift(&self) -> SparseBitMatrix {
        lift(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("base matrix serializes")
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Circulant lifting: exponent `e` at base cell `(r, c)` puts a one at
/// `(r*L + (k + e) mod L, c*L + k)` for each `k`, i.e. column `k` of the block maps to row `k + e`.
pub fn lift(base: &QcBaseMatrix) -> SparseBitMatrix {
    let l = base.lift_size;
    let mut support = vec![Vec::new(); base.rows * l];
    for r in 0..base.rows {
        for c in 0..base.cols {
            if let Some(e) = base.get(r, c) {
                for k in 0..l {
                    support[r * l + (k + e) % l].push(c * l + k);
                }
            }
        }
    }
    SparseBitMatrix::new(base.rows * l, base.cols * l, support).expect("lift within bounds")
}

pub fn conjugate_transpose(base: &QcBaseMatrix) -> QcBaseMatrix {
    base.conjugate_transpose()
}

/// 3x5 base of the [155, 64] Tanner code, `L = 31`, exponent `(i, j) = 5^i * 2^j mod 31`.
pub fn tanner_base() -> QcBaseMatrix {
    const L: usize = 31;
    let grid = (0..3u32)
        .map(|i| {
            (0..5u32)
                .map(|j| Some((5usize.pow(i) * 2usize.pow(j)) % L))
                .collect()
        })
        .collect();
    QcBaseMatrix::new(L, grid).expect("valid Tanner base")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitVector;

    #[test]
    fn lift_identity_and_shift() {
        let b0 = QcBaseMatrix::new(3, vec![vec![Some(0)]]).unwrap();
        assert_eq!(lift(&b0), SparseBitMatrix::identity(3));
        let b1 = QcBaseMatrix::new(3, vec![vec![Some(1)]]).unwrap();
        let h = lift(&b1);
        for j in 0..3 {
            let col = h.mul_vec(&BitVector::from_support(3, &[j])).unwrap();
            assert_eq!(col.support(), vec![(j + 1) % 3]);
        }
    }

    #[test]
    fn lift_blocks_are_permutations() {
        let h = lift(&tanner_base());
        assert_eq!((h.rows(), h.cols()), (93, 155));
        assert!(h.row_degrees().iter().all(|&d| d == 5));
        assert!(h.col_degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn conjugate_transpose_examples() {
        let b = QcBaseMatrix::new(1, vec![vec![Some(0)]]).unwrap();
        assert_eq!(b.conjugate_transpose(), b);
        let b = QcBaseMatrix::new(5, vec![vec![Some(1), None]]).unwrap();
        let c = b.conjugate_transpose();
        assert_eq!((c.rows(), c.cols()), (2, 1));
        assert_eq!(c.get(0, 0), Some(4));
        assert_eq!(c.get(1, 0), None);
        assert_eq!(c.conjugate_transpose(), b);
    }

    #[test]
    fn tanner_exponents() {
        let t = tanner_base();
        assert_eq!(t.get(0, 0), Some(1));
        assert_eq!(t.get(2, 4), Some(28));
        let rows: Vec<Vec<usize>> = (0..3)
            .map(|i| (0..5).map(|j| t.get(i, j).unwrap()).collect())
            .collect();
        assert_eq!(
            rows,
            vec![
                vec![1, 2, 4, 8, 16],
                vec![5, 10, 20, 9, 18],
                vec![25, 19, 7, 14, 28]
            ]
        );
    }

    #[test]
    fn json_round_trip_and_zero_marker() {
        let text = r#"{"L":5,"rows":1,"cols":2,"exponents":[[3,-1]]}"#;
        let b = QcBaseMatrix::from_json(text).unwrap();
        assert_eq!(b.get(0, 0), Some(3));
        assert_eq!(b.get(0, 1), None);
        assert_eq!(b.to_json(), text);
    }

    #[test]
    fn json_rejects_invalid() {
        assert!(QcBaseMatrix::from_json(r#"{"L":5,"rows":1,"cols":1,"exponents":[[5]]}"#).is_err());
        assert!(QcBaseMatrix::from_json(r#"{"L":5,"rows":1,"cols":2,"exponents":[[1]]}"#).is_err());
        assert!(QcBaseMatrix::from_json(r#"{"L":5,"rows":2,"cols":1,"exponents":[[1]]}"#).is_err());
        assert!(QcBaseMatrix::from_json(r#"{"L":5,"rows":1,"cols":1,"exponents":[[-2]]}"#).is_err());
        assert!(QcBaseMatrix::from_json(r#"{"L":0,"rows":1,"cols":1,"exponents":[[-1]]}"#).is_err());
    }
}
