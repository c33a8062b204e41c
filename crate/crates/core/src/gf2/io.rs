//! Plain-text matrix formats.
//!
//! Sparse ("alist-style"), 1-based column indices:
//!
//! ```text
//! <rows> <cols>
//! <deg row 0> <deg row 1> ...
//! <cols of row 0, space separated>
//! <cols of row 1>
//! ...
//! ```
//!
//! Dense: one line per row, each a string of `0`/`1` characters.

use std::fmt::Write as _;
use std::path::Path;

use super::dense::BitMatrix;
use super::sparse::SparseBitMatrix;
use crate::error::{Error, Result};

fn join<I: IntoIterator<Item = usize>>(it: I) -> String {
    it.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn to_alist(m: &SparseBitMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", m.rows(), m.cols()).unwrap();
    writeln!(out, "{}", join(m.row_degrees())).unwrap();
    for row in m.iter_rows() {
        writeln!(out, "{}", join(row.iter().map(|c| c + 1))).unwrap();
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_nums(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| parse_err(line_no, format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

pub fn from_alist(text: &str) -> Result<SparseBitMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let dims = parse_nums(ln, header)?;
    let [rows, cols] = dims[..] else {
        return Err(parse_err(ln, "expected `<rows> <cols>`"));
    };
    let degrees = match lines.next() {
        Some((ln, l)) => {
            let d = parse_nums(ln, l)?;
            if d.len() != rows {
                return Err(parse_err(ln, format!("expected {rows} row degrees, got {}", d.len())));
            }
            d
        }
        None if rows == 0 => Vec::new(),
        None => return Err(parse_err(2, "missing row degree line")),
    };
    let mut support = Vec::with_capacity(rows);
    for (i, &deg) in degrees.iter().enumerate() {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| parse_err(3 + i, format!("missing support line for row {i}")))?;
        let idx = parse_nums(ln, l)?;
        if idx.len() != deg {
            return Err(parse_err(ln, format!("row {i}: degree {deg} but {} indices", idx.len())));
        }
        let mut row = Vec::with_capacity(deg);
        for c in idx {
            if c == 0 || c > cols {
                return Err(parse_err(ln, format!("column index {c} outside 1..={cols}")));
            }
            row.push(c - 1);
        }
        let mut sorted = row.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != row.len() {
            return Err(parse_err(ln, format!("row {i}: repeated column index")));
        }
        support.push(sorted);
    }
    if let Some((ln, l)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(parse_err(ln, format!("trailing content {l:?}")));
    }
    SparseBitMatrix::new(rows, cols, support)
}

pub fn to_dense_text(m: &BitMatrix) -> String {
    let mut out = String::with_capacity(m.rows() * (m.cols() + 1));
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.push(if m.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn from_dense_text(text: &str) -> Result<BitMatrix> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let row = line
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(parse_err(i + 1, format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if first != row.len() {
                return Err(parse_err(i + 1, format!("row length {} differs from {first}", row.len())));
            }
        }
        rows.push(row);
    }
    Ok(BitMatrix::from_rows(&rows))
}

pub fn read_alist(path: impl AsRef<Path>) -> Result<SparseBitMatrix> {
    from_alist(&std::fs::read_to_string(path)?)
}

pub fn write_alist(path: impl AsRef<Path>, m: &SparseBitMatrix) -> Result<()> {
    std::fs::write(path, to_alist(m))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alist_exact_bytes() {
        let m = SparseBitMatrix::new(2, 3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(to_alist(&m), "2 3\n2 2\n1 2\n2 3\n");
        assert_eq!(from_alist("2 3\n2 2\n1 2\n2 3\n").unwrap(), m);
    }

    #[test]
    fn alist_empty_row() {
        let m = SparseBitMatrix::new(2, 2, vec![vec![], vec![1]]).unwrap();
        let text = to_alist(&m);
        assert_eq!(text, "2 2\n0 1\n\n2\n");
        assert_eq!(from_alist(&text).unwrap(), m);
    }

    #[test]
    fn alist_rejects_bad_index() {
        assert!(from_alist("1 2\n1\n3\n").is_err());
        assert!(from_alist("1 2\n1\n0\n").is_err());
        assert!(from_alist("1 2\n2\n1\n").is_err());
        assert!(from_alist("2 2\n1\n1\n").is_err());
    }

    #[test]
    fn dense_exact_bytes() {
        let m = BitMatrix::from_rows(&[vec![true, false], vec![false, true]]);
        assert_eq!(to_dense_text(&m), "10\n01\n");
        assert_eq!(from_dense_text("10\n01\n").unwrap(), m);
        assert!(from_dense_text("10\n0\n").is_err());
        assert!(from_dense_text("1x\n").is_err());
    }
}
