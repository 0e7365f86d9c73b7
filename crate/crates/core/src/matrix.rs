//! Dense matrices of arbitrary-precision integers.
//!
//! `IntMatrix` is the carrier for every matrix in this crate: regular
//! representations, Gram matrices, adjugates, skew forms, and transition
//! matrices. The kernel routines are exact — the determinant uses
//! fraction-free (Bareiss) elimination, the pfaffian a signed expansion
//! along the first row — so no rational or floating intermediates appear
//! anywhere.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric at ({row},{col})")]
    NotSkewSymmetric { row: usize, col: usize },
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
}

/// Dense row-major matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from row slices; panics if the rows are ragged or empty.
    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().collect(),
        }
    }

    /// Convenience constructor for literals in tests and fixtures.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .flat_map(|r| r.iter().map(|&x| BigInt::from(x)))
                .collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            &self[(i, j)] + &other[(i, j)]
        }))
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            &self[(i, j)] - &other[(i, j)]
        }))
    }

    pub fn neg(&self) -> IntMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
    }

    pub fn scalar_mul(&self, c: &BigInt) -> IntMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| c * &self[(i, j)])
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix–vector product `M v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, MatrixError> {
        if self.cols != v.len() {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<BigInt>()
            })
            .collect())
    }

    fn check_same_shape(&self, other: &IntMatrix) -> Result<(), MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    /// Principal submatrix keeping the rows and columns listed in `idx`.
    pub fn principal_submatrix(&self, idx: &[usize]) -> IntMatrix {
        Self::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    /// Submatrix with row `r` and column `c` removed.
    fn minor(&self, r: usize, c: usize) -> IntMatrix {
        let n = self.rows;
        Self::from_fn(n - 1, n - 1, |i, j| {
            let ii = if i < r { i } else { i + 1 };
            let jj = if j < c { j } else { j + 1 };
            self[(ii, jj)].clone()
        })
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> Result<BigInt, MatrixError> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| self[(i, i)].clone()).sum())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Pivot selection takes the first nonzero entry in the column; a row
    /// swap flips the sign. Every division in the elimination is exact.
    pub fn det(&self) -> Result<BigInt, MatrixError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !m[(r, k)].is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                    m[(i, j)] = num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        let det = m[(n - 1, n - 1)].clone();
        Ok(if negate { -det } else { det })
    }

    /// Adjugate: the transpose of the cofactor matrix, satisfying
    /// `M·adj(M) = adj(M)·M = det(M)·I`. For 1x1 input the adjugate is the
    /// 1x1 identity (empty-minor convention).
    pub fn adjugate(&self) -> Result<IntMatrix, MatrixError> {
        let n = self.require_square()?;
        if n == 0 {
            return Err(MatrixError::NotSquare { rows: 0, cols: 0 });
        }
        if n == 1 {
            return Ok(IntMatrix::identity(1));
        }
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let cof = self.minor(j, i).det()?;
                adj[(i, j)] = if (i + j) % 2 == 0 { cof } else { -cof };
            }
        }
        Ok(adj)
    }

    /// Pfaffian of a skew-symmetric matrix, by expansion along the first
    /// row with memoization on the surviving index set.
    ///
    /// Odd dimension returns 0 (matching `det = 0`); the sign convention is
    /// fixed by `pf([[0,1],[-1,0]]) = 1`.
    pub fn pfaffian(&self) -> Result<BigInt, MatrixError> {
        let n = self.require_square()?;
        for i in 0..n {
            for j in 0..=i {
                if self[(i, j)] != -&self[(j, i)] {
                    return Err(MatrixError::NotSkewSymmetric { row: i, col: j });
                }
            }
        }
        if n % 2 == 1 {
            return Ok(BigInt::zero());
        }
        if n == 0 {
            return Ok(BigInt::one());
        }
        assert!(n <= 64, "pfaffian index sets are tracked in a u64 bitmask");
        let mut memo: HashMap<u64, BigInt> = HashMap::new();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(self.pf_rec(full, &mut memo))
    }

    fn pf_rec(&self, mask: u64, memo: &mut HashMap<u64, BigInt>) -> BigInt {
        if mask == 0 {
            return BigInt::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << i);
        let mut sum = BigInt::zero();
        let mut positive = true;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let a = &self[(i, j)];
            if !a.is_zero() {
                let sub = self.pf_rec(rest & !(1u64 << j), memo);
                let term = a * sub;
                if positive {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            positive = !positive;
        }
        memo.insert(mask, sum.clone());
        sum
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

// Debug delegates to Display so assertion failures print readable rows.
impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Least non-negative residue of `x` modulo 4.
pub fn mod4(x: &BigInt) -> u8 {
    let r: BigInt = x % 4;
    let r = if r.is_negative() { r + 4 } else { r };
    u8::try_from(r).expect("residue fits in u8")
}
