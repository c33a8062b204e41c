use super::vector::{words_for, BitVector, WORD_BITS};
use crate::error::{check_dim, Result};

/// Dense GF(2) matrix, row-major with each row packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from a row-major grid of booleans; all rows must share one length.
    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &b) in row.iter().enumerate() {
                if b {
                    m.set(i, j, true);
                }
            }
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
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        (self.words[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let w = &mut self.words[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix with `v` appended as a final row.
    pub fn with_row(&self, v: &BitVector) -> Result<BitMatrix> {
        check_dim("with_row", self.cols, v.len())?;
        let mut words = self.words.clone();
        words.extend_from_slice(v.words());
        Ok(BitMatrix {
            rows: self.rows + 1,
            cols: self.cols,
            stride: self.stride,
            words,
        })
    }

    /// Product `self * v` over GF(2).
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        check_dim("mat_vec_mod2", self.cols, v.len())?;
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Matrix product `self * other` over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        mat_mul_mod2(self, other)
    }

    /// Rank over GF(2). Works on a private copy.
    pub fn rank(&self) -> usize {
        rank_mod2(self)
    }

    /// Reduces the rows in place to row echelon form and returns the rank.
    pub(crate) fn eliminate(&mut self) -> usize {
        let mut rank = 0;
        let stride = self.stride;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let wi = col / WORD_BITS;
            let mask = 1u64 << (col % WORD_BITS);
            let Some(pivot) = (rank..self.rows).find(|&r| self.words[r * stride + wi] & mask != 0)
            else {
                continue;
            };
            if pivot != rank {
                for w in 0..stride {
                    self.words.swap(pivot * stride + w, rank * stride + w);
                }
            }
            let (head, tail) = self.words.split_at_mut((rank + 1) * stride);
            let pivot_row = &head[rank * stride..];
            for row in tail.chunks_exact_mut(stride) {
                if row[wi] & mask != 0 {
                    for (a, b) in row[wi..].iter_mut().zip(&pivot_row[wi..]) {
                        *a ^= *b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

pub fn mat_mul_mod2(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    check_dim("mat_mul_mod2", a.cols, b.rows)?;
    let mut out = BitMatrix::zeros(a.rows, b.cols);
    let stride = out.stride;
    for i in 0..a.rows {
        let dst = i * stride;
        for k in a.row(i).iter_ones() {
            let src = b.row_words(k);
            for (d, s) in out.words[dst..dst + stride].iter_mut().zip(src) {
                *d ^= *s;
            }
        }
    }
    Ok(out)
}

pub fn rank_mod2(m: &BitMatrix) -> usize {
    m.clone().eliminate()
}
