//! Dense integer matrices and the 4ti2 plain-text matrix format.
//!
//! The format is a header line `<rows> <cols>` followed by the entries,
//! whitespace separated, one matrix row per line. Bases are written with one
//! element per row.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::vector::IntVec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("ragged matrix rows"));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors, all of length `height`.
    pub fn from_columns(height: usize, columns: &[IntVec]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != height) {
            return Err(Error::domain("columns of differing lengths"));
        }
        let mut m = IntMatrix::zeros(height, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..height {
                m.set(i, j, c[i]);
            }
        }
        Ok(m)
    }

    pub fn from_vectors(width: usize, rows: &[IntVec]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::domain("rows of differing lengths"));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols: width,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| IntVec::from(self.row(i))).collect()
    }

    pub fn column(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self.get(i, j)).collect::<Vec<_>>().into()
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    /// `self · v` with overflow detection.
    pub fn mul_vec(&self, v: &[i64]) -> Result<IntVec> {
        if v.len() != self.cols {
            return Err(Error::domain(format!(
                "vector of length {} against matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &x)| {
                    a.checked_mul(x)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow("matrix-vector product"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(IntVec::new)
    }

    /// Places `blocks` on a grid: `grid[bi][bj]` is `Some(matrix)` or a zero block.
    /// Block heights/widths come from `row_heights` / `col_widths`.
    pub fn block(
        row_heights: &[usize],
        col_widths: &[usize],
        grid: &[Vec<Option<&IntMatrix>>],
    ) -> Result<IntMatrix> {
        let rows = row_heights.iter().sum();
        let cols = col_widths.iter().sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, &h) in row_heights.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &w) in col_widths.iter().enumerate() {
                if let Some(b) = grid[bi][bj] {
                    if b.rows != h || b.cols != w {
                        return Err(Error::domain("block dimension mismatch"));
                    }
                    for i in 0..h {
                        for j in 0..w {
                            out.set(r0 + i, c0 + j, b.get(i, j));
                        }
                    }
                }
                c0 += w;
            }
            r0 += h;
        }
        Ok(out)
    }

    /// Parses 4ti2 matrix text.
    pub fn parse_4ti2(text: &str) -> Result<IntMatrix> {
        let mut tokens = text
            .lines()
            .enumerate()
            .flat_map(|(ln, line)| line.split_whitespace().map(move |t| (ln + 1, t)));
        let last_line = text.lines().count().max(1);

        let mut header = |what: &str| -> Result<usize> {
            let (ln, tok) = tokens.next().ok_or_else(|| Error::Parse {
                line: last_line,
                msg: format!("missing {what} in header"),
            })?;
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: ln,
                msg: format!("invalid {what} `{tok}`"),
            })
        };
        let rows = header("row count")?;
        let cols = header("column count")?;

        let expected = rows.checked_mul(cols).ok_or(Error::Parse {
            line: 1,
            msg: "matrix dimensions too large".into(),
        })?;
        let mut data = Vec::with_capacity(expected);
        for k in 0..expected {
            let (ln, tok) = tokens.next().ok_or_else(|| Error::Parse {
                line: last_line,
                msg: format!("expected {expected} entries, found {k}"),
            })?;
            let v = tok.parse::<i64>().map_err(|_| Error::Parse {
                line: ln,
                msg: format!("non-integer token `{tok}`"),
            })?;
            data.push(v);
        }
        if let Some((ln, tok)) = tokens.next() {
            return Err(Error::Parse {
                line: ln,
                msg: format!("trailing token `{tok}` after {expected} entries"),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Emits canonical 4ti2 text: header, then one line per row, single spaces.
    pub fn to_4ti2(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let mut first = true;
            for x in self.row(i) {
                if !first {
                    s.push(' ');
                }
                first = false;
                write!(s, "{x}").unwrap();
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_row_vector() {
        let m = IntMatrix::parse_4ti2("1 3\n2 3 11\n").unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 3));
        assert_eq!(m.row(0), &[2, 3, 11]);
    }

    #[test]
    fn parse_two_row_example() {
        let m = IntMatrix::parse_4ti2("2 5\n2 0 2 1 3\n2 2 0 3 3\n").unwrap();
        assert_eq!(m.column(4), IntVec::from([3, 3]));
        assert_eq!(m.column(1), IntVec::from([0, 2]));
    }

    #[test]
    fn count_mismatch_is_rejected() {
        let err = IntMatrix::parse_4ti2("2 2\n1 2\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("expected 4 entries, found 2"), "{msg}");
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn garbage_is_rejected_with_line() {
        let err = IntMatrix::parse_4ti2("1 2\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = IntMatrix::parse_4ti2("1 2\n1 2\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(IntMatrix::parse_4ti2("").is_err());
        assert!(IntMatrix::parse_4ti2("-1 2\n").is_err());
    }

    #[test]
    fn emit_is_canonical() {
        let m = IntMatrix::parse_4ti2("2  3\n 1 -2 3\n\n4 5 -6").unwrap();
        assert_eq!(m.to_4ti2(), "2 3\n1 -2 3\n4 5 -6\n");
        assert_eq!(IntMatrix::parse_4ti2(&m.to_4ti2()).unwrap(), m);
        assert_eq!(IntMatrix::zeros(0, 3).to_4ti2(), "0 3\n");
    }
}
