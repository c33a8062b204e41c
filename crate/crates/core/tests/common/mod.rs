#![allow(dead_code)]

use qsynd::{BitVector, SparseBitMatrix};

/// Entry-by-entry parity of `h * x`, straight from the definition.
pub fn naive_mat_vec(h: &SparseBitMatrix, x: &BitVector) -> Vec<bool> {
    (0..h.rows())
        .map(|i| {
            let mut acc = 0u8;
            for j in 0..h.cols() {
                if h.get(i, j) && x.get(j) {
                    acc ^= 1;
                }
            }
            acc == 1
        })
        .collect()
}

/// Every GF(2) combination of the rows of `h`, as bool vectors. Only for tiny matrices.
pub fn enumerate_span(h: &SparseBitMatrix) -> std::collections::HashSet<Vec<bool>> {
    let rows: Vec<Vec<bool>> = (0..h.rows())
        .map(|i| (0..h.cols()).map(|j| h.get(i, j)).collect())
        .collect();
    assert!(rows.len() <= 16, "span enumeration limited to 2^16 combinations");
    let mut out = std::collections::HashSet::new();
    for mask in 0u32..(1 << rows.len()) {
        let mut v = vec![false; h.cols()];
        for (r, row) in rows.iter().enumerate() {
            if mask >> r & 1 == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= *b;
                }
            }
        }
        out.insert(v);
    }
    out
}

/// All subsets of `0..n` with at most `w` elements.
pub fn low_weight_supports(n: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    if w >= 1 {
        out.extend((0..n).map(|i| vec![i]));
    }
    if w >= 2 {
        for i in 0..n {
            for j in i + 1..n {
                out.push(vec![i, j]);
            }
        }
    }
    assert!(w <= 2);
    out
}
