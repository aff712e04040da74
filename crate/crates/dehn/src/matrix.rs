//! Dense integer matrices with exact arithmetic.
//!
//! Everything here is `BigInt`-valued: determinants via the fraction-free
//! Bareiss scheme, Smith normal form with full transform tracking, and
//! inversion of unimodular matrices. No floating point, no modular tricks,
//! so results are exact at any size.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Index, Mul};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: BigInt },
}

/// A row-major `rows x cols` matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(height * width);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != width {
                return Err(MatrixError::Ragged {
                    row: i,
                    expected: width,
                    found: row.len(),
                });
            }
            data.extend(row.into_iter().map(Into::into));
        }
        Ok(IntMatrix {
            rows: height,
            cols: width,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.cols + j] = value;
    }

    /// The main diagonal, `min(rows, cols)` entries.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    // Exact by the Bareiss identity: prev divides the numerator.
                    let num = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                    m.set(i, j, num / &prev);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    /// Smith normal form `U * self * V = D` with unimodular `U`, `V` and a
    /// nonnegative diagonal `D` in which each entry divides the next.
    pub fn smith_normal_form(&self) -> SmithDecomposition {
        let mut a = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let steps = self.rows.min(self.cols);

        for t in 0..steps {
            if !position_pivot(&mut a, &mut u, &mut v, t) {
                break;
            }
            'reduce: loop {
                for i in t + 1..a.rows {
                    if a.get(i, t).is_zero() {
                        continue;
                    }
                    let q = a.get(i, t).div_floor(a.get(t, t));
                    let neg_q = -q;
                    a.add_row_multiple(i, t, &neg_q);
                    u.add_row_multiple(i, t, &neg_q);
                    if !a.get(i, t).is_zero() {
                        // The remainder beats the pivot in magnitude.
                        a.swap_rows(t, i);
                        u.swap_rows(t, i);
                        continue 'reduce;
                    }
                }
                for j in t + 1..a.cols {
                    if a.get(t, j).is_zero() {
                        continue;
                    }
                    let q = a.get(t, j).div_floor(a.get(t, t));
                    let neg_q = -q;
                    a.add_col_multiple(j, t, &neg_q);
                    v.add_col_multiple(j, t, &neg_q);
                    if !a.get(t, j).is_zero() {
                        a.swap_cols(t, j);
                        v.swap_cols(t, j);
                        continue 'reduce;
                    }
                }
                // Row and column are clear; force the pivot to divide the
                // remaining block so the diagonal forms a divisor chain.
                for i in t + 1..a.rows {
                    for j in t + 1..a.cols {
                        if !(a.get(i, j) % a.get(t, t)).is_zero() {
                            let one = BigInt::one();
                            a.add_row_multiple(t, i, &one);
                            u.add_row_multiple(t, i, &one);
                            continue 'reduce;
                        }
                    }
                }
                break;
            }
        }

        for t in 0..steps {
            if a.get(t, t).is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
        }

        SmithDecomposition { u, d: a, v }
    }

    /// Inverts a square matrix of determinant plus or minus one.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, MatrixError> {
        let det = self.determinant()?;
        if !det.abs().is_one() {
            return Err(MatrixError::NotUnimodular { det });
        }
        // U A V = I, so A^{-1} = V U.
        let snf = self.smith_normal_form();
        debug_assert!(snf.d.is_identity());
        Ok(&snf.v * &snf.u)
    }
}

/// The factorization `u * a * v = d` produced by `smith_normal_form`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `d`: the invariant factors, padded with zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }
}

/// Moves an entry of minimal nonzero magnitude in the trailing block to
/// `(t, t)`. Returns false when the block is all zero.
fn position_pivot(a: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            if a.get(i, j).is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a.get(i, j).abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    let Some((i, j)) = best else { return false };
    a.swap_rows(t, i);
    u.swap_rows(t, i);
    a.swap_cols(t, j);
    v.swap_cols(t, j);
    true
}

impl IntMatrix {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for col in 0..self.cols {
            let term = k * self.get(src, col);
            self.data[dst * self.cols + col] += term;
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in 0..self.rows {
            let term = k * self.get(row, src);
            self.data[row * self.cols + dst] += term;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for col in 0..self.cols {
            let idx = i * self.cols + col;
            let value = std::mem::take(&mut self.data[idx]);
            self.data[idx] = -value;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        self.get(i, j)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        IntMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum()
        })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
