use super::dense::BitMatrix;
use super::vector::{BitVector, WORD_BITS};
use crate::error::{check_dim, Result};

/// Reduced echelon basis of a matrix row space, for repeated membership queries.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    // (pivot column, packed row) pairs; pivots strictly increasing
    basis: Vec<(usize, Vec<u64>)>,
}

impl RowSpace {
    pub fn new(m: &BitMatrix) -> Self {
        let mut reduced = m.clone();
        let rank = reduced.eliminate();
        let basis = (0..rank)
            .map(|r| {
                let words = reduced.row_words(r).to_vec();
                let pivot = first_one(&words).expect("nonzero echelon row");
                (pivot, words)
            })
            .collect();
        Self {
            cols: m.cols(),
            basis,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        check_dim("in_rowspace", self.cols, v.len())?;
        if v.is_zero() {
            return Ok(true);
        }
        let mut w = v.words().to_vec();
        for (pivot, row) in &self.basis {
            let wi = pivot / WORD_BITS;
            if (w[wi] >> (pivot % WORD_BITS)) & 1 == 1 {
                for (a, b) in w[wi..].iter_mut().zip(&row[wi..]) {
                    *a ^= *b;
                }
            }
        }
        Ok(w.iter().all(|&x| x == 0))
    }
}

fn first_one(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
}

/// True iff `v` is a GF(2) combination of the rows of `m`.
pub fn in_rowspace(m: &BitMatrix, v: &BitVector) -> Result<bool> {
    check_dim("in_rowspace", m.cols(), v.len())?;
    Ok(m.with_row(v)?.rank() == m.rank())
}
