//! Dense matrices over [`Scalar`].
//!
//! Determinants use fraction-free Bareiss elimination in the exact backend
//! and partially-pivoted LU in the float backend. Echelon forms are exact
//! over the exact backend and tolerance-pivoted over floats; they back the
//! rank, kernel, and canonical-flag computations elsewhere in the crate.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::fmath;
use crate::scalar::{Backend, Scalar, Tolerance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("duplicate index in selection")]
    DuplicateIndex,
    #[error("row and column selections have different lengths")]
    LengthMismatch,
    #[error("empty index selection")]
    EmptySelection,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("linear system is underdetermined")]
    Underdetermined,
}

/// Dense row-major matrix; all entries share one backend.
#[derive(Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        let m = Mat { rows, cols, data };
        m.assert_uniform_backend();
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Mat, MatError> {
        let r = rows.len();
        if r == 0 {
            return Err(MatError::Shape("no rows".into()));
        }
        let c = rows[0].len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(MatError::Shape("ragged or empty rows".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        let m = Mat { rows: r, cols: c, data };
        m.assert_uniform_backend();
        Ok(m)
    }

    /// Integer literal matrix, mainly for tests and fixed constructions.
    pub fn from_int_rows(rows: &[&[i64]], backend: Backend) -> Mat {
        Mat::from_fn(rows.len(), rows[0].len(), |i, j| {
            Scalar::int(rows[i][j], backend)
        })
    }

    pub fn zeros(rows: usize, cols: usize, backend: Backend) -> Mat {
        Mat::from_fn(rows, cols, |_, _| Scalar::zero(backend))
    }

    pub fn identity(n: usize, backend: Backend) -> Mat {
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                Scalar::one(backend)
            } else {
                Scalar::zero(backend)
            }
        })
    }

    fn assert_uniform_backend(&self) {
        let b = self.data[0].backend();
        assert!(
            self.data.iter().all(|s| s.backend() == b),
            "matrix entries mix backends"
        );
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn backend(&self) -> Backend {
        self.data[0].backend()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        assert!(v.backend() == self.backend(), "backend mismatch in set");
        self.data[i * self.cols + j] = v;
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| f(self.at(i, j)))
    }

    pub fn to_float_backend(&self) -> Mat {
        self.map(|s| s.to_float_backend())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        self.map(|x| x * s)
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Columns `cols` in the given order, as a new matrix.
    pub fn select_cols(&self, cols: &[usize]) -> Result<Mat, MatError> {
        if cols.is_empty() {
            return Err(MatError::EmptySelection);
        }
        if cols.iter().any(|&j| j >= self.cols) {
            return Err(MatError::IndexOutOfRange);
        }
        Ok(Mat::from_fn(self.rows, cols.len(), |i, j| {
            self.at(i, cols[j]).clone()
        }))
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat, MatError> {
        if self.rows != other.rows {
            return Err(MatError::Shape("hstack row mismatch".into()));
        }
        Ok(Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        }))
    }

    /// Assembles a matrix from a rectangular grid of blocks.
    pub fn from_blocks(grid: &[Vec<&Mat>]) -> Mat {
        assert!(!grid.is_empty() && !grid[0].is_empty(), "empty block grid");
        let block_rows: Vec<usize> = grid.iter().map(|r| r[0].rows()).collect();
        let block_cols: Vec<usize> = grid[0].iter().map(|b| b.cols()).collect();
        for (bi, row) in grid.iter().enumerate() {
            assert_eq!(row.len(), block_cols.len(), "ragged block grid");
            for (bj, b) in row.iter().enumerate() {
                assert!(
                    b.rows() == block_rows[bi] && b.cols() == block_cols[bj],
                    "block ({bi},{bj}) has inconsistent shape"
                );
            }
        }
        let total_r: usize = block_rows.iter().sum();
        let total_c: usize = block_cols.iter().sum();
        Mat::from_fn(total_r, total_c, |i, j| {
            let mut bi = 0;
            let mut ri = i;
            while ri >= block_rows[bi] {
                ri -= block_rows[bi];
                bi += 1;
            }
            let mut bj = 0;
            let mut cj = j;
            while cj >= block_cols[bj] {
                cj -= block_cols[bj];
                bj += 1;
            }
            grid[bi][bj].at(ri, cj).clone()
        })
    }

    pub fn frobenius_f64(&self) -> f64 {
        fmath::sqrt(
            self.data
                .iter()
                .map(|s| {
                    let v = s.to_f64();
                    v * v
                })
                .sum(),
        )
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.data
            .iter()
            .map(|s| s.magnitude())
            .fold(0.0, fmath::max)
    }

    pub fn approx_eq(&self, other: &Mat, tol: &Tolerance) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    /// The submatrix with the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Mat, MatError> {
        if rows.is_empty() || cols.is_empty() {
            return Err(MatError::EmptySelection);
        }
        if rows.iter().any(|&i| i >= self.rows) || cols.iter().any(|&j| j >= self.cols) {
            return Err(MatError::IndexOutOfRange);
        }
        Ok(Mat::from_fn(rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        }))
    }

    /// Determinant of the `k x k` submatrix selected by `rows` and `cols`
    /// (order-sensitive: swapping two indices flips the sign).
    pub fn det_submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Scalar, MatError> {
        if rows.len() != cols.len() {
            return Err(MatError::LengthMismatch);
        }
        if has_duplicates(rows) || has_duplicates(cols) {
            return Err(MatError::DuplicateIndex);
        }
        self.submatrix(rows, cols)?.det()
    }

    pub fn det(&self) -> Result<Scalar, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare);
        }
        match self.backend() {
            Backend::Exact => Ok(self.det_bareiss()),
            Backend::Float => Ok(self.det_lu()),
        }
    }

    /// Fraction-free Bareiss elimination; every division is exact.
    fn det_bareiss(&self) -> Scalar {
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign = 1i32;
        let mut prev = Scalar::one(Backend::Exact);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Scalar::zero(Backend::Exact),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = &num / &prev;
                }
                a[i][k] = Scalar::zero(Backend::Exact);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    fn det_lu(&self) -> Scalar {
        let n = self.rows;
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).to_f64()).collect())
            .collect();
        let mut det = 1.0f64;
        for k in 0..n {
            let (pivot_row, pivot_mag) = (k..n)
                .map(|r| (r, fmath::abs(a[r][k])))
                .fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            if pivot_mag == 0.0 {
                return Scalar::Float(0.0);
            }
            if pivot_row != k {
                a.swap(k, pivot_row);
                det = -det;
            }
            det *= a[k][k];
            for i in k + 1..n {
                let factor = a[i][k] / a[k][k];
                for j in k..n {
                    a[i][j] -= factor * a[k][j];
                }
            }
        }
        Scalar::Float(det)
    }

    /// Sum of the finite exponential series; errors if the argument is not
    /// nilpotent within dimension-many powers.
    pub fn nilpotent_exp(&self) -> Result<Mat, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare);
        }
        let n = self.rows;
        let backend = self.backend();
        let mut acc = Mat::identity(n, backend);
        let mut term = Mat::identity(n, backend);
        for k in 1..=n {
            term = &term * self;
            term = term.scale(&Scalar::ratio(1, k as i64, backend));
            if term.is_zero() {
                return Ok(acc);
            }
            acc = &acc + &term;
        }
        Err(MatError::NotNilpotent)
    }

    fn float_zero_threshold(&self, tol: &Tolerance) -> f64 {
        fmath::max(tol.abs, tol.rel * self.max_abs_f64())
    }

    /// Row-reduced echelon form. Returns the reduced matrix and the pivot
    /// column of each step. Exact over the exact backend; float entries are
    /// treated as zero below a tolerance derived from the input's scale.
    pub fn rref(&self, tol: &Tolerance) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let eps = match self.backend() {
            Backend::Exact => 0.0,
            Backend::Float => self.float_zero_threshold(tol),
        };
        let treat_zero = |s: &Scalar| -> bool {
            match s.backend() {
                Backend::Exact => s.is_zero(),
                Backend::Float => s.magnitude() <= eps,
            }
        };
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // pick the largest-magnitude candidate for floats, the first
            // nonzero for exact entries
            let pivot = match m.backend() {
                Backend::Exact => (row..m.rows).find(|&r| !treat_zero(m.at(r, col))),
                Backend::Float => {
                    let (r, mag) = (row..m.rows)
                        .map(|r| (r, m.at(r, col).magnitude()))
                        .fold((row, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
                    if mag > eps {
                        Some(r)
                    } else {
                        None
                    }
                }
            };
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..m.cols {
                    let a = m.at(p, j).clone();
                    let b = m.at(row, j).clone();
                    m.set(p, j, b);
                    m.set(row, j, a);
                }
            }
            let inv = m.at(row, col).recip().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.at(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !treat_zero(m.at(r, col)) {
                    let factor = m.at(r, col).clone();
                    for j in 0..m.cols {
                        let v = m.at(r, j) - &(&factor * m.at(row, j));
                        m.set(r, j, v);
                    }
                }
            }
            // clean residual dust in the pivot column
            for r in 0..m.rows {
                if r != row {
                    m.set(r, col, Scalar::zero(m.backend()));
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, tol: &Tolerance) -> usize {
        self.rref(tol).1.len()
    }

    /// Canonical basis of the column span: the reduced column echelon form,
    /// columns ordered by pivot row. Two matrices have equal column spans
    /// iff their canonical bases are equal (exact backend).
    pub fn column_echelon(&self, tol: &Tolerance) -> Mat {
        self.column_echelon_with_pivots(tol).0
    }

    /// As [`Mat::column_echelon`], also returning the pivot row of each
    /// column, decided with the same zero threshold as the reduction.
    pub fn column_echelon_with_pivots(&self, tol: &Tolerance) -> (Mat, Vec<usize>) {
        let (r, pivots) = self.transpose().rref(tol);
        let k = pivots.len();
        assert!(k > 0, "column span of a zero matrix");
        (Mat::from_fn(self.rows, k, |i, j| r.at(j, i).clone()), pivots)
    }

    /// Kernel basis, as columns. Empty kernel yields a `cols x 0`-shaped
    /// result represented as `None`.
    pub fn kernel(&self, tol: &Tolerance) -> Option<Mat> {
        let (r, pivots) = self.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        if free.is_empty() {
            return None;
        }
        let backend = self.backend();
        Some(Mat::from_fn(self.cols, free.len(), |i, j| {
            let fc = free[j];
            if i == fc {
                Scalar::one(backend)
            } else if let Some(pi) = pivots.iter().position(|&p| p == i) {
                -r.at(pi, fc)
            } else {
                Scalar::zero(backend)
            }
        }))
    }

    /// Solves `self * x = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &Mat) -> Result<Mat, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare);
        }
        if rhs.rows != self.rows {
            return Err(MatError::Shape("solve rhs row mismatch".into()));
        }
        let aug = self.hstack(rhs)?;
        let (r, pivots) = aug.rref(&Tolerance::default());
        if pivots.len() < self.rows || pivots.iter().any(|&p| p >= self.cols) {
            return Err(MatError::Singular);
        }
        Ok(Mat::from_fn(self.cols, rhs.cols, |i, j| {
            r.at(i, self.cols + j).clone()
        }))
    }

    pub fn inverse(&self) -> Result<Mat, MatError> {
        let id = Mat::identity(self.rows, self.backend());
        self.solve(&id)
    }

    /// Solves the possibly rectangular system `self * x = rhs`, requiring a
    /// unique solution.
    pub fn solve_exactly_determined(&self, rhs: &Mat) -> Result<Mat, MatError> {
        if rhs.rows != self.rows {
            return Err(MatError::Shape("solve rhs row mismatch".into()));
        }
        let aug = self.hstack(rhs)?;
        let (r, pivots) = aug.rref(&Tolerance::default());
        let lead: Vec<usize> = pivots.iter().copied().filter(|&p| p < self.cols).collect();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(MatError::Inconsistent);
        }
        if lead.len() < self.cols {
            return Err(MatError::Underdetermined);
        }
        Ok(Mat::from_fn(self.cols, rhs.cols, |i, j| {
            r.at(i, self.cols + j).clone()
        }))
    }
}

fn has_duplicates(xs: &[usize]) -> bool {
    let mut seen = xs.to_vec();
    seen.sort_unstable();
    seen.windows(2).any(|w| w[0] == w[1])
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?}  ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix addition shape mismatch"
        );
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + rhs.at(i, j))
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix subtraction shape mismatch"
        );
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - rhs.at(i, j))
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert!(
            self.cols == rhs.rows,
            "matrix multiplication shape mismatch: {}x{} * {}x{}",
            self.rows,
            self.cols,
            rhs.rows,
            rhs.cols
        );
        let backend = self.backend();
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Scalar::zero(backend);
            for k in 0..self.cols {
                if self.at(i, k).is_zero() || rhs.at(k, j).is_zero() {
                    continue;
                }
                acc = &acc + &(self.at(i, k) * rhs.at(k, j));
            }
            acc
        })
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.map(|s| -s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ext;
    use proptest::prelude::*;

    fn exact(rows: &[&[i64]]) -> Mat {
        Mat::from_int_rows(rows, Backend::Exact)
    }

    /// Laplace cofactor expansion, kept deliberately independent of the
    /// Bareiss and LU paths.
    fn det_laplace(m: &Mat) -> Scalar {
        let n = m.rows();
        if n == 1 {
            return m.at(0, 0).clone();
        }
        let mut acc = Scalar::zero(m.backend());
        for j in 0..n {
            if m.at(0, j).is_zero() {
                continue;
            }
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = det_laplace(&m.submatrix(&rows, &cols).unwrap());
            let signed = if j % 2 == 0 {
                m.at(0, j) * &minor
            } else {
                -&(m.at(0, j) * &minor)
            };
            acc = &acc + &signed;
        }
        acc
    }

    #[test]
    fn det_submatrix_identity_cases() {
        let id = Mat::identity(4, Backend::Exact);
        // principal 2x2 minor of the identity
        assert_eq!(
            id.det_submatrix(&[0, 1], &[0, 1]).unwrap(),
            Scalar::int(1, Backend::Exact)
        );
        // off-diagonal 1x1 minor
        assert_eq!(
            id.det_submatrix(&[0], &[3]).unwrap(),
            Scalar::int(0, Backend::Exact)
        );
    }

    #[test]
    fn det_2x2_cofactor_value() {
        let m = exact(&[&[1, 2], &[3, 4]]);
        assert_eq!(
            m.det_submatrix(&[0, 1], &[0, 1]).unwrap(),
            Scalar::int(-2, Backend::Exact)
        );
    }

    #[test]
    fn det_submatrix_error_paths() {
        let m = exact(&[&[1, 2], &[3, 4]]);
        assert_eq!(
            m.det_submatrix(&[0, 1], &[0]).unwrap_err(),
            MatError::LengthMismatch
        );
        assert_eq!(
            m.det_submatrix(&[0, 0], &[0, 1]).unwrap_err(),
            MatError::DuplicateIndex
        );
        assert_eq!(
            m.det_submatrix(&[0, 2], &[0, 1]).unwrap_err(),
            MatError::IndexOutOfRange
        );
        assert_eq!(m.det_submatrix(&[], &[]).unwrap_err(), MatError::EmptySelection);
    }

    #[test]
    fn column_order_flips_sign() {
        let m = exact(&[&[1, 2], &[3, 4]]);
        let d1 = m.det_submatrix(&[0, 1], &[0, 1]).unwrap();
        let d2 = m.det_submatrix(&[0, 1], &[1, 0]).unwrap();
        assert_eq!(d1, -&d2);
    }

    #[test]
    fn nilpotent_exp_zero_is_identity() {
        let z = Mat::zeros(4, 4, Backend::Exact);
        assert_eq!(z.nilpotent_exp().unwrap(), Mat::identity(4, Backend::Exact));
    }

    #[test]
    fn nilpotent_exp_single_superdiagonal_block() {
        // 4x4 with one superdiagonal 2x2 block: square is zero, so
        // exp(N) = I + N.
        let mut n = Mat::zeros(4, 4, Backend::Exact);
        n.set(0, 2, Scalar::int(3, Backend::Exact));
        n.set(1, 3, Scalar::int(-5, Backend::Exact));
        let e = n.nilpotent_exp().unwrap();
        assert_eq!(e, &Mat::identity(4, Backend::Exact) + &n);
    }

    #[test]
    fn nilpotent_exp_6x6_quadratic_cross_terms() {
        // Two superdiagonal blocks A (rows 0-1) and B (rows 2-3); the cube
        // vanishes and the (0,2) block of exp is AB/2.
        let mut n = Mat::zeros(6, 6, Backend::Exact);
        let a = exact(&[&[1, 2], &[0, 1]]);
        let b = exact(&[&[3, 0], &[1, 1]]);
        for i in 0..2 {
            for j in 0..2 {
                n.set(i, 2 + j, a.at(i, j).clone());
                n.set(2 + i, 4 + j, b.at(i, j).clone());
            }
        }
        let e = n.nilpotent_exp().unwrap();
        let ab = &a * &b;
        for i in 0..2 {
            for j in 0..2 {
                let expected = ab.at(i, j) * &Scalar::ratio(1, 2, Backend::Exact);
                assert_eq!(e.at(i, 4 + j), &expected);
            }
        }
    }

    #[test]
    fn nilpotent_exp_rejects_non_nilpotent() {
        let m = Mat::identity(3, Backend::Exact);
        assert_eq!(m.nilpotent_exp().unwrap_err(), MatError::NotNilpotent);
    }

    #[test]
    fn solve_and_inverse_exact() {
        let m = exact(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2, Backend::Exact));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = exact(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel(&Tolerance::default()).unwrap();
        assert_eq!(k.cols(), 2);
        let prod = &m * &k;
        assert!(prod.is_zero());
    }

    #[test]
    fn column_echelon_is_span_canonical() {
        let tol = Tolerance::default();
        let a = exact(&[&[1, 0], &[0, 1], &[1, 1]]);
        // same span, different basis
        let b = exact(&[&[1, 1], &[1, 2], &[2, 3]]);
        assert_eq!(a.column_echelon(&tol), b.column_echelon(&tol));
        let c = exact(&[&[1, 0], &[0, 1], &[1, 2]]);
        assert_ne!(a.column_echelon(&tol), c.column_echelon(&tol));
    }

    #[test]
    fn exact_det_with_radical_entries() {
        let s2 = Scalar::Exact(Ext::parse("sqrt(2)").unwrap());
        let m = Mat::from_rows(vec![
            vec![s2.clone(), Scalar::int(1, Backend::Exact)],
            vec![Scalar::int(1, Backend::Exact), s2.clone()],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), Scalar::int(1, Backend::Exact));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bareiss_matches_laplace_on_random_exact(
            entries in proptest::collection::vec(-10i64..=10, 16),
        ) {
            let m = Mat::from_fn(4, 4, |i, j| Scalar::int(entries[4 * i + j], Backend::Exact));
            prop_assert_eq!(m.det().unwrap(), det_laplace(&m));
        }

        #[test]
        fn float_det_matches_exact_within_tolerance(
            entries in proptest::collection::vec(-10i64..=10, 25),
        ) {
            let m = Mat::from_fn(5, 5, |i, j| Scalar::int(entries[5 * i + j], Backend::Exact));
            let exact_det = m.det().unwrap().to_f64();
            let float_det = m.to_float_backend().det().unwrap().to_f64();
            let scale = exact_det.abs().max(float_det.abs()).max(1.0);
            prop_assert!((exact_det - float_det).abs() <= 1e-9 * scale);
        }

        #[test]
        fn nilpotent_exp_inverse_property(
            entries in proptest::collection::vec(-5i64..=5, 15),
        ) {
            // random strictly upper triangular 6x6 (15 free entries)
            let mut idx = 0;
            let n = Mat::from_fn(6, 6, |i, j| {
                if j > i {
                    let v = entries[idx % entries.len()];
                    idx += 1;
                    Scalar::int(v, Backend::Exact)
                } else {
                    Scalar::int(0, Backend::Exact)
                }
            });
            let e = n.nilpotent_exp().unwrap();
            let e_neg = (-&n).nilpotent_exp().unwrap();
            prop_assert_eq!(&e * &e_neg, Mat::identity(6, Backend::Exact));
        }
    }
}
