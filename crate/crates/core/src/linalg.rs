//! Small dense matrices and exact/float rank computations.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::{Rational, Scalar, Tolerance};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; `None` if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Option<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return None;
        }
        Some(Matrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
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

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        Self::from_fn(a.rows + b.rows, a.cols + b.cols, |i, j| {
            if i < a.rows && j < a.cols {
                a[(i, j)].clone()
            } else if i >= a.rows && j >= a.cols {
                b[(i - a.rows, j - a.cols)].clone()
            } else {
                S::zero()
            }
        })
    }

    /// Square sub-block starting at `(start, start)`.
    pub fn sub_block(&self, start: usize, size: usize) -> Self {
        Self::from_fn(size, size, |i, j| self[(start + i, start + j)].clone())
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        crate::scalar::max_magnitude(&self.data)
    }

    pub fn is_zero(&self, tol: Tolerance) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    pub fn is_symmetric(&self, tol: Tolerance) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..i).all(|j| (self[(i, j)].clone() - self[(j, i)].clone()).is_negligible(tol))
            })
    }

    pub fn is_identity(&self, tol: Tolerance) -> bool {
        self.is_square() && self.sub(&Self::identity(self.rows)).is_zero(tol)
    }

    /// Positive definiteness of a symmetric matrix: Gaussian elimination
    /// without pivoting, every pivot must be positive.
    pub fn is_positive_definite(&self, tol: Tolerance) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let mut a = self.clone();
        for k in 0..n {
            let p = a[(k, k)].clone();
            if p.signum_tol(tol) <= 0 {
                return false;
            }
            for i in k + 1..n {
                let f = a[(i, k)].clone() / p.clone();
                for j in k..n {
                    let v = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                    a[(i, j)] = v;
                }
            }
        }
        true
    }

    /// Solves `self * x = b` for square `self`, `None` when singular under
    /// `tol`. Pivots on the entry of largest magnitude.
    pub fn solve(&self, b: &[S], tol: Tolerance) -> Option<Vec<S>> {
        if !self.is_square() || b.len() != self.rows {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).max_by(|&x, &y| {
                a[x][col]
                    .magnitude()
                    .partial_cmp(&a[y][col].magnitude())
                    .unwrap_or(core::cmp::Ordering::Equal)
            })?;
            if a[pivot][col].is_negligible(tol) {
                return None;
            }
            a.swap(col, pivot);
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone() / a[col][col].clone();
                for c in col..=n {
                    let v = a[r][c].clone() - f.clone() * a[col][c].clone();
                    a[r][c] = v;
                }
            }
        }
        Some((0..n).map(|i| a[i][n].clone() / a[i][i].clone()).collect())
    }

    /// Rank and a kernel basis, computed with the strategy of the scalar mode.
    pub fn kernel(&self, tol: Tolerance) -> Kernel<S> {
        S::kernel_of(self, tol)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;

    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(S::zero(), |acc, k| {
                acc + self[(i, k)].clone() * rhs[(k, j)].clone()
            })
        })
    }
}

/// Rank of a matrix together with a basis of its null space.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel<S> {
    pub rank: usize,
    pub basis: Vec<Vec<S>>,
}

impl<S> Kernel<S> {
    pub fn nullity(&self) -> usize {
        self.basis.len()
    }
}

/// Mode-specific rank strategy.
pub trait KernelMethod: Sized {
    fn kernel_of(m: &Matrix<Self>, tol: Tolerance) -> Kernel<Self>;
}

impl KernelMethod for Rational {
    fn kernel_of(m: &Matrix<Self>, _tol: Tolerance) -> Kernel<Self> {
        let rank = bareiss_rank(m);
        let basis = rref_kernel(m);
        debug_assert_eq!(rank + basis.len(), m.cols());
        Kernel { rank, basis }
    }
}

impl KernelMethod for f64 {
    fn kernel_of(m: &Matrix<Self>, tol: Tolerance) -> Kernel<Self> {
        let (sigma, v) = jacobi_svd(m);
        let top = sigma.iter().copied().fold(0.0, f64::max);
        let threshold = tol.value() * top;
        let mut basis = Vec::new();
        let mut rank = 0;
        for (j, s) in sigma.iter().enumerate() {
            if top > 0.0 && *s > threshold {
                rank += 1;
            } else {
                basis.push(v.column(j));
            }
        }
        Kernel { rank, basis }
    }
}

/// Rank by fraction-free (Bareiss) elimination on the integer matrix
/// obtained by clearing each row's denominators.
pub fn bareiss_rank(m: &Matrix<Rational>) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                // Sylvester's identity guarantees exact division.
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Null space basis from the reduced row echelon form over the rationals.
pub fn rref_kernel(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            let tmp = a[(r, j)].clone();
            a[(r, j)] = a[(p, j)].clone();
            a[(p, j)] = tmp;
        }
        let inv = Rational::one() / a[(r, c)].clone();
        for j in 0..cols {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for j in 0..cols {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[(row, free)].clone();
            }
            v
        })
        .collect()
}

/// One-sided Jacobi SVD. Returns the singular values and the right
/// singular vectors (as columns of `V`).
pub fn jacobi_svd(m: &Matrix<f64>) -> (Vec<f64>, Matrix<f64>) {
    let n = m.cols();
    let mut u = m.clone();
    let mut v = Matrix::<f64>::identity(n);
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..u.rows() {
                    alpha += u[(i, p)] * u[(i, p)];
                    beta += u[(i, q)] * u[(i, q)];
                    gamma += u[(i, p)] * u[(i, q)];
                }
                if gamma == 0.0 {
                    continue;
                }
                off = off.max(libm::fabs(gamma) / libm::sqrt(alpha * beta).max(f64::MIN_POSITIVE));
                let zeta = (beta - alpha) / (2.0 * gamma);
                let sign = if zeta < 0.0 { -1.0 } else { 1.0 };
                let t = sign / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for i in 0..u.rows() {
                    let (a, b) = (u[(i, p)], u[(i, q)]);
                    u[(i, p)] = c * a - s * b;
                    u[(i, q)] = s * a + c * b;
                }
                for i in 0..n {
                    let (a, b) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = c * a - s * b;
                    v[(i, q)] = s * a + c * b;
                }
            }
        }
        if off < 1e-15 {
            break;
        }
    }
    let sigma = (0..n)
        .map(|j| libm::sqrt((0..u.rows()).map(|i| u[(i, j)] * u[(i, j)]).sum::<f64>()))
        .collect();
    (sigma, v)
}
