use super::dense::BitMatrix;
use super::vector::BitVector;
use crate::error::{check_dim, Error, Result};

/// Row-adjacency GF(2) matrix: each row lists its nonzero column indices in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseBitMatrix {
    rows: usize,
    cols: usize,
    row_support: Vec<Vec<usize>>,
}

impl SparseBitMatrix {
    /// Builds a matrix from per-row supports. Indices are sorted; duplicates cancel mod 2.
    pub fn new(rows: usize, cols: usize, mut row_support: Vec<Vec<usize>>) -> Result<Self> {
        check_dim("sparse rows", rows, row_support.len())?;
        for row in &mut row_support {
            row.sort_unstable();
            let mut dedup: Vec<usize> = Vec::with_capacity(row.len());
            for &c in row.iter() {
                if c >= cols {
                    return Err(Error::Dimension {
                        op: "sparse column index",
                        expected: cols,
                        got: c,
                    });
                }
                if dedup.last() == Some(&c) {
                    dedup.pop();
                } else {
                    dedup.push(c);
                }
            }
            *row = dedup;
        }
        Ok(Self {
            rows,
            cols,
            row_support,
        })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            rows: size,
            cols: size,
            row_support: (0..size).map(|i| vec![i]).collect(),
        }
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
    pub fn row_support(&self, i: usize) -> &[usize] {
        &self.row_support[i]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[usize]> {
        self.row_support.iter().map(Vec::as_slice)
    }

    pub fn nnz(&self) -> usize {
        self.row_support.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row_support[i].binary_search(&j).is_ok()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.row_support.iter().map(Vec::len).collect()
    }

    pub fn col_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.cols];
        for row in &self.row_support {
            for &c in row {
                deg[c] += 1;
            }
        }
        deg
    }

    pub fn transpose(&self) -> SparseBitMatrix {
        let mut support = vec![Vec::new(); self.cols];
        for (i, row) in self.row_support.iter().enumerate() {
            for &c in row {
                support[c].push(i);
            }
        }
        SparseBitMatrix {
            rows: self.cols,
            cols: self.rows,
            row_support: support,
        }
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for (i, row) in self.row_support.iter().enumerate() {
            if row.binary_search(&j).is_ok() {
                v.set(i, true);
            }
        }
        v
    }

    pub fn row_vector(&self, i: usize) -> BitVector {
        BitVector::from_support(self.cols, &self.row_support[i])
    }

    pub fn to_dense(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.row_support.iter().enumerate() {
            for &c in row {
                m.set(i, c, true);
            }
        }
        m
    }

    pub fn from_dense(m: &BitMatrix) -> SparseBitMatrix {
        SparseBitMatrix {
            rows: m.rows(),
            cols: m.cols(),
            row_support: (0..m.rows()).map(|i| m.row(i).support()).collect(),
        }
    }

    /// Syndrome-style product `self * x` over GF(2).
    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector> {
        mat_vec_mod2(self, x)
    }

    pub fn rank(&self) -> usize {
        self.to_dense().rank()
    }
}

pub fn mat_vec_mod2(h: &SparseBitMatrix, x: &BitVector) -> Result<BitVector> {
    check_dim("mat_vec_mod2", h.cols, x.len())?;
    let mut out = BitVector::zeros(h.rows);
    for (i, row) in h.row_support.iter().enumerate() {
        let parity = row.iter().fold(false, |acc, &c| acc ^ x.get(c));
        if parity {
            out.set(i, true);
        }
    }
    Ok(out)
}
