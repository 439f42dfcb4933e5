//! Dense integer matrices with checked arithmetic.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use crate::error::{FlagkError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(FlagkError::Domain("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    /// Builds a matrix from its columns, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
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

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[i64]>::to_vec).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(FlagkError::Composition(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out
                        .get(i, j)
                        .checked_add(a.checked_mul(other.get(l, j)).expect("entry overflow"))
                        .expect("entry overflow");
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    fn zip_with(&self, other: &IntMatrix, f: impl Fn(i64, i64) -> Option<i64>) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(FlagkError::Composition(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(*a, *b).expect("entry overflow"))
                .collect(),
        })
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, i64::checked_sub)
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|v| v.checked_mul(c).expect("entry overflow"))
                .collect(),
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| self.get(i, i) == 1 && (i + 1..self.cols).all(|j| self.get(i, j) == 0))
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.transpose().is_lower_unitriangular()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> i64 {
        self.diagonal().iter().sum()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigRational>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|v| BigRational::from_integer(v.into())).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][col].clone();
            for r in 0..self.rows {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] / &pivot;
                    let pivot_row = m[rank].clone();
                    for (v, p) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                        *v -= &f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(FlagkError::Domain("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return Ok(BigInt::one());
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// True when every row and column has exactly one nonzero entry, and it is `+-1`.
    pub fn is_signed_permutation(&self) -> bool {
        let unit = |v: i64| v.abs() == 1;
        self.is_square()
            && (0..self.rows).all(|i| {
                let nz: Vec<i64> = (0..self.cols).map(|j| self.get(i, j)).filter(|v| *v != 0).collect();
                nz.len() == 1 && unit(nz[0])
            })
            && (0..self.cols).all(|j| (0..self.rows).filter(|&i| self.get(i, j) != 0).count() == 1)
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn arithmetic() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.mul(&IntMatrix::identity(2)).unwrap(), a);
        assert_eq!(a.mul(&a).unwrap(), m(&[&[7, 10], &[15, 22]]));
        assert_eq!(a.det().unwrap(), BigInt::from(-2));
        assert_eq!(a.rank(), 2);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(
            m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).det().unwrap(),
            BigInt::from(-1)
        );
        assert!(m(&[&[0, -1], &[1, 0]]).is_signed_permutation());
        assert!(!m(&[&[1, 1], &[0, 1]]).is_signed_permutation());
        assert!(m(&[&[1, 0], &[2, 1]]).is_lower_unitriangular());
        assert_eq!(m(&[&[1, 0], &[2, 1]]).to_string(), "[[1,0],[2,1]]");
        assert!(IntMatrix::zeros(2, 3).mul(&IntMatrix::zeros(2, 3)).is_err());
        assert_eq!(IntMatrix::zeros(0, 0).det().unwrap(), BigInt::one());
    }
}
