//! The 2x2 block calculus over the basis `(I, R, T, P)`:
//!
//! ```text
//! I = [1 0; 0 1]   R = [0 -1; 1 0]   T = [1 0; 0 -1]   P = [0 1; 1 0]
//! ```
//!
//! Nonzero matrices in the span of `I` and `R` have positive determinant;
//! the span of `T` and `P` consists of the traceless symmetric matrices,
//! whose nonzero elements have negative determinant.

use crate::mat::Mat;
use crate::scalar::{Backend, Scalar};

/// Coordinates of a 2x2 matrix over `(I, R, T, P)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Block2 {
    pub i_coef: Scalar,
    pub r_coef: Scalar,
    pub t_coef: Scalar,
    pub p_coef: Scalar,
}

pub fn basis_i(backend: Backend) -> Mat {
    Mat::from_int_rows(&[&[1, 0], &[0, 1]], backend)
}

pub fn basis_r(backend: Backend) -> Mat {
    Mat::from_int_rows(&[&[0, -1], &[1, 0]], backend)
}

pub fn basis_t(backend: Backend) -> Mat {
    Mat::from_int_rows(&[&[1, 0], &[0, -1]], backend)
}

pub fn basis_p(backend: Backend) -> Mat {
    Mat::from_int_rows(&[&[0, 1], &[1, 0]], backend)
}

impl Block2 {
    pub fn new(i_coef: Scalar, r_coef: Scalar, t_coef: Scalar, p_coef: Scalar) -> Block2 {
        Block2 {
            i_coef,
            r_coef,
            t_coef,
            p_coef,
        }
    }

    pub fn zero(backend: Backend) -> Block2 {
        Block2::new(
            Scalar::zero(backend),
            Scalar::zero(backend),
            Scalar::zero(backend),
            Scalar::zero(backend),
        )
    }

    /// Unique coordinates of a 2x2 matrix `[[a, b], [c, d]]`:
    /// `i = (a+d)/2, t = (a-d)/2, r = (c-b)/2, p = (b+c)/2`.
    pub fn decompose(m: &Mat) -> Block2 {
        assert!(m.rows() == 2 && m.cols() == 2, "block decomposition needs a 2x2 matrix");
        let backend = m.backend();
        let half = Scalar::ratio(1, 2, backend);
        let (a, b) = (m.at(0, 0), m.at(0, 1));
        let (c, d) = (m.at(1, 0), m.at(1, 1));
        Block2 {
            i_coef: &(a + d) * &half,
            r_coef: &(c - b) * &half,
            t_coef: &(a - d) * &half,
            p_coef: &(b + c) * &half,
        }
    }

    pub fn reconstruct(&self) -> Mat {
        let backend = self.i_coef.backend();
        let mut grid = Mat::zeros(2, 2, backend);
        grid.set(0, 0, &self.i_coef + &self.t_coef);
        grid.set(0, 1, &self.p_coef - &self.r_coef);
        grid.set(1, 0, &self.r_coef + &self.p_coef);
        grid.set(1, 1, &self.i_coef - &self.t_coef);
        grid
    }

    /// `det = i^2 + r^2 - t^2 - p^2`.
    pub fn det(&self) -> Scalar {
        let sq = |s: &Scalar| s * s;
        &(&sq(&self.i_coef) + &sq(&self.r_coef)) - &(&sq(&self.t_coef) + &sq(&self.p_coef))
    }

    pub fn backend(&self) -> Backend {
        self.i_coef.backend()
    }
}

/// Adjugate of a 2x2 matrix: `[[a, b], [c, d]] -> [[d, -b], [-c, a]]`;
/// satisfies `A * adj(A) = det(A) * I`.
pub fn adjugate2(m: &Mat) -> Mat {
    assert!(m.rows() == 2 && m.cols() == 2, "adjugate needs a 2x2 matrix");
    let mut out = Mat::zeros(2, 2, m.backend());
    out.set(0, 0, m.at(1, 1).clone());
    out.set(0, 1, -m.at(0, 1));
    out.set(1, 0, -m.at(1, 0));
    out.set(1, 1, m.at(0, 0).clone());
    out
}
