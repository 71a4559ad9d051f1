//! The symplectic group `Sp(2n, R)` in two coordinate systems.
//!
//! The standard form has Gram matrix `J` with `J e_i = (-1)^i e_{2n-i+1}`
//! (1-based), i.e. an antidiagonal of alternating signs; in 2x2 blocks it is
//! the antidiagonal of `R` blocks. The hermitian form `J_h` has `R` in the
//! top-right and bottom-left corner blocks and `R` down the remaining
//! diagonal blocks; it is the imaginary part of the indefinite hermitian
//! form on `C^n` and is preserved by the image of `SU(n-1, 1)`.
//!
//! Group membership is `g^T J g = J`; the closed-form inverse is
//! `g^{-1} = -J g^T J`. The antiprincipal minor `p_k(g)` is the determinant
//! of rows `1..k` against columns `2n, 2n-1, ..., 2n-k+1` in that order,
//! and satisfies `p_k(g^{-1}) = (-1)^k p_k(g)` on the group.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::block2::basis_r;
use crate::mat::{Mat, MatError};
use crate::rng;
use crate::scalar::{Backend, Ext, Scalar, ScalarError, Tolerance};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymplecticError {
    #[error("matrix size does not match the form (expected {expected}, found {found})")]
    SizeMismatch { expected: usize, found: usize },
    #[error("matrix does not preserve the form (max residual {residual:e})")]
    NotSymplectic { residual: f64 },
    #[error("minor size k={k} out of range 1..={max}")]
    MinorOutOfRange { k: usize, max: usize },
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which Gram matrix realizes the form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Standard,
    Hermitian,
}

/// A symplectic form on `R^{2n}` given by its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticForm {
    n: usize,
    kind: FormKind,
    gram: Mat,
}

impl SymplecticForm {
    /// The standard form `J e_i = (-1)^i e_{2n-i+1}` (1-based indices).
    pub fn standard(n: usize, backend: Backend) -> SymplecticForm {
        assert!(n >= 1);
        let dim = 2 * n;
        let gram = Mat::from_fn(dim, dim, |i, j| {
            // column j (0-based) is J e_{j+1} = (-1)^{j+1} e_{2n-j}
            if i == dim - 1 - j {
                Scalar::int(if (j + 1) % 2 == 0 { 1 } else { -1 }, backend)
            } else {
                Scalar::zero(backend)
            }
        });
        SymplecticForm {
            n,
            kind: FormKind::Standard,
            gram,
        }
    }

    /// The hermitian-picture form `J_h`: rotation blocks in the two corners
    /// and down the middle of the diagonal.
    ///
    /// Normalized so that the change-of-coordinates map `f` of
    /// [`form_change_map`] satisfies `f J f^T = J_h` exactly; with the
    /// standard `J` above this places `-R` in each block. The opposite
    /// global sign is also common; it defines the same group, the same
    /// isotropic subspaces, and the same perpendiculars.
    pub fn hermitian(n: usize, backend: Backend) -> SymplecticForm {
        assert!(n >= 2);
        let neg_r = -&basis_r(backend);
        let zero2 = Mat::zeros(2, 2, backend);
        let mut grid: Vec<Vec<&Mat>> = vec![vec![&zero2; n]; n];
        grid[0][n - 1] = &neg_r;
        grid[n - 1][0] = &neg_r;
        for (j, row) in grid.iter_mut().enumerate().take(n - 1).skip(1) {
            row[j] = &neg_r;
        }
        SymplecticForm {
            n,
            kind: FormKind::Hermitian,
            gram: Mat::from_blocks(&grid),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn backend(&self) -> Backend {
        self.gram.backend()
    }

    pub fn to_float_backend(&self) -> SymplecticForm {
        SymplecticForm {
            n: self.n,
            kind: self.kind,
            gram: self.gram.to_float_backend(),
        }
    }

    /// `omega(x, y) = x^T (gram) y` for column vectors given as `2n x 1`
    /// matrices or columns of larger matrices.
    pub fn pair_columns(&self, a: &Mat, i: usize, b: &Mat, j: usize) -> Scalar {
        let backend = self.backend();
        let mut acc = Scalar::zero(backend);
        for r in 0..self.dim() {
            if a.at(r, i).is_zero() {
                continue;
            }
            // gram has one nonzero per row only for the standard kind, so
            // walk the row explicitly
            for c in 0..self.dim() {
                let g = self.gram.at(r, c);
                if g.is_zero() || b.at(c, j).is_zero() {
                    continue;
                }
                acc = &acc + &(&(a.at(r, i) * g) * b.at(c, j));
            }
        }
        acc
    }
}

/// An element of the symplectic group of a given form.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    form: SymplecticForm,
    mat: Mat,
}

impl GroupElement {
    pub fn new(form: SymplecticForm, mat: Mat, tol: &Tolerance) -> Result<Self, SymplecticError> {
        let residual = symplectic_residual(&mat, &form)?;
        match mat.backend() {
            Backend::Exact => {
                if residual != 0.0 {
                    return Err(SymplecticError::NotSymplectic { residual });
                }
            }
            Backend::Float => {
                let scale = mat.max_abs_f64().max(1.0);
                if residual > (tol.abs + tol.rel * scale * scale) {
                    return Err(SymplecticError::NotSymplectic { residual });
                }
            }
        }
        Ok(GroupElement { form, mat })
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    /// The closed-form inverse `-J g^T J`.
    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            form: self.form.clone(),
            mat: inverse_in_form(&self.mat, &self.form),
        }
    }
}

/// Max-magnitude residual of `g^T J g - J`, or a size error.
pub fn symplectic_residual(g: &Mat, form: &SymplecticForm) -> Result<f64, SymplecticError> {
    if !g.is_square() || g.rows() != form.dim() {
        return Err(SymplecticError::SizeMismatch {
            expected: form.dim(),
            found: g.rows(),
        });
    }
    let lhs = &(&g.transpose() * form.gram()) * g;
    let diff = &lhs - form.gram();
    Ok(diff.max_abs_f64())
}

/// `g^T J g = J`, exactly or within tolerance by backend.
pub fn is_symplectic(g: &Mat, form: &SymplecticForm, tol: &Tolerance) -> Result<bool, SymplecticError> {
    let residual = symplectic_residual(g, form)?;
    Ok(match g.backend() {
        Backend::Exact => residual == 0.0,
        Backend::Float => {
            let scale = g.max_abs_f64().max(1.0);
            residual <= tol.abs + tol.rel * scale * scale
        }
    })
}

/// `-J g^T J`; inverts any element of the group of `form`.
pub fn inverse_in_form(g: &Mat, form: &SymplecticForm) -> Mat {
    let j = form.gram();
    -&(&(j * &g.transpose()) * j)
}

/// The antiprincipal `k x k` minor: rows `1..k` against columns
/// `2n, 2n-1, ..., 2n-k+1` in descending order (1-based).
pub fn antiprincipal_minor(g: &Mat, k: usize) -> Result<Scalar, SymplecticError> {
    let dim = g.rows();
    if !g.is_square() {
        return Err(SymplecticError::Mat(MatError::NotSquare));
    }
    if k == 0 || k > dim {
        return Err(SymplecticError::MinorOutOfRange { k, max: dim });
    }
    let rows: Vec<usize> = (0..k).collect();
    let cols: Vec<usize> = (0..k).map(|t| dim - 1 - t).collect();
    Ok(g.det_submatrix(&rows, &cols)?)
}

/// `p_1, ..., p_kmax` in one call.
pub fn antiprincipal_minors(g: &Mat, kmax: usize) -> Result<Vec<Scalar>, SymplecticError> {
    (1..=kmax).map(|k| antiprincipal_minor(g, k)).collect()
}

/// One row of a minor-inversion check: `p_k(g^{-1}) - (-1)^k p_k(g)`.
#[derive(Clone, Debug)]
pub struct MinorInversionRecord {
    pub k: usize,
    pub minor: Scalar,
    pub minor_of_inverse: Scalar,
    pub residual: Scalar,
}

/// Per-`k` residuals of the sign law `p_k(g^{-1}) = (-1)^k p_k(g)`.
/// Failures are reported, not thrown; the exact backend must produce
/// exactly zero residuals.
pub fn minor_inversion_check(
    g: &GroupElement,
    ks: &[usize],
) -> Result<Vec<MinorInversionRecord>, SymplecticError> {
    let inv = g.inverse();
    let mut records = Vec::with_capacity(ks.len());
    for &k in ks {
        let p = antiprincipal_minor(g.mat(), k)?;
        let p_inv = antiprincipal_minor(inv.mat(), k)?;
        let signed = if k % 2 == 0 { p.clone() } else { -&p };
        records.push(MinorInversionRecord {
            k,
            minor: p,
            residual: &p_inv - &signed,
            minor_of_inverse: p_inv,
        });
    }
    Ok(records)
}

/// A deterministic random element of `Sp(2n, R)` for the standard form.
///
/// Exact backend: a product of symplectic transvections
/// `x -> x + lambda omega(x, v) v` and a diagonal element
/// `diag(t_1, ..., t_n, t_n^{-1}, ..., t_1^{-1})`, all with small rational
/// parameters, so membership holds exactly. Float backend: the exponential
/// of a random element `Z = J S` (`S` symmetric) of the Lie algebra with
/// entries uniform in `(-scale, scale)`.
pub fn random_symplectic(n: usize, seed: u64, scale: f64, backend: Backend) -> GroupElement {
    let mut rng = rng::trial_rng(seed, 0);
    random_symplectic_with(n, &mut rng, scale, backend)
}

/// As [`random_symplectic`], drawing from a caller-managed generator.
pub fn random_symplectic_with(
    n: usize,
    rng: &mut ChaCha8Rng,
    scale: f64,
    backend: Backend,
) -> GroupElement {
    let form = SymplecticForm::standard(n, backend);
    let mat = match backend {
        Backend::Exact => {
            let bound = (scale.max(1.0) as i64).min(8);
            let dim = 2 * n;
            let mut g = diagonal_symplectic(n, rng, bound);
            // transvections applied as rank-one updates; entries from a
            // small set keep the rational heights in check over the product
            let factors = 2 * n + 2;
            for _ in 0..factors {
                let lambda = Scalar::from_rational(rng::nonzero_rational(rng, bound, 2), backend);
                let v: Vec<Scalar> = (0..dim)
                    .map(|_| Scalar::int(rng.gen_range(-1..=1), backend))
                    .collect();
                if v.iter().all(|s| s.is_zero()) {
                    continue;
                }
                g = apply_transvection(&g, &form, &lambda, &v);
            }
            g
        }
        Backend::Float => {
            let dim = 2 * n;
            let s = Mat::from_fn(dim, dim, |i, j| {
                if i <= j {
                    Scalar::Float(rng.gen_range(-scale..=scale))
                } else {
                    Scalar::zero(Backend::Float)
                }
            });
            let sym = &s + &s.transpose();
            let z = form.gram() * &sym;
            float_exp(&z)
        }
    };
    GroupElement::new(form, mat, &Tolerance::default()).expect("construction stays in the group")
}

fn diagonal_symplectic(n: usize, rng: &mut ChaCha8Rng, bound: i64) -> Mat {
    let dim = 2 * n;
    let ts: Vec<Ext> = (0..n)
        .map(|_| Ext::from_rational(rng::nonzero_rational(rng, bound, 2)))
        .collect();
    Mat::from_fn(dim, dim, |i, j| {
        if i != j {
            Scalar::zero(Backend::Exact)
        } else if i < n {
            Scalar::Exact(ts[i].clone())
        } else {
            Scalar::Exact(ts[dim - 1 - i].inv().expect("nonzero"))
        }
    })
}

/// `g * (I - lambda v v^T J)` via a rank-one update.
fn apply_transvection(g: &Mat, form: &SymplecticForm, lambda: &Scalar, v: &[Scalar]) -> Mat {
    let dim = form.dim();
    let backend = g.backend();
    // w = g v
    let w: Vec<Scalar> = (0..dim)
        .map(|i| {
            let mut acc = Scalar::zero(backend);
            for (k, vk) in v.iter().enumerate() {
                if !vk.is_zero() && !g.at(i, k).is_zero() {
                    acc = &acc + &(g.at(i, k) * vk);
                }
            }
            acc
        })
        .collect();
    // u = v^T J (row vector)
    let u: Vec<Scalar> = (0..dim)
        .map(|j| {
            let mut acc = Scalar::zero(backend);
            for (k, vk) in v.iter().enumerate() {
                let jkj = form.gram().at(k, j);
                if !vk.is_zero() && !jkj.is_zero() {
                    acc = &acc + &(vk * jkj);
                }
            }
            acc
        })
        .collect();
    Mat::from_fn(dim, dim, |i, j| {
        if w[i].is_zero() || u[j].is_zero() {
            g.at(i, j).clone()
        } else {
            g.at(i, j) - &(&(lambda * &w[i]) * &u[j])
        }
    })
}

/// Float matrix exponential by scaling and squaring with a truncated series.
fn float_exp(z: &Mat) -> Mat {
    let dim = z.rows();
    let norm = z.max_abs_f64() * dim as f64;
    let mut squarings = 0u32;
    let mut t = 1.0f64;
    while norm * t > 0.5 {
        t *= 0.5;
        squarings += 1;
    }
    let zs = z.scale(&Scalar::Float(t));
    let mut acc = Mat::identity(dim, Backend::Float);
    let mut term = Mat::identity(dim, Backend::Float);
    for k in 1..=24 {
        term = &term * &zs;
        term = term.scale(&Scalar::Float(1.0 / k as f64));
        acc = &acc + &term;
        if term.max_abs_f64() < 1e-19 {
            break;
        }
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}

/// The dimension-bump embedding `Sp(2n) -> Sp(2n+2)`: in `(n, 2, n)` block
/// coordinates, `[[A, B], [C, D]] -> [[A, 0, B], [0, I, 0], [C, 0, D]]`.
pub fn embed_sp(g: &GroupElement) -> GroupElement {
    assert!(
        g.form().kind() == FormKind::Standard,
        "the dimension bump is defined for the standard form"
    );
    let mat = embed_matrix(g.mat(), true);
    let form = SymplecticForm::standard(g.form().n() + 1, g.mat().backend());
    GroupElement::new(form, mat, &Tolerance::default())
        .expect("block placement preserves the standard form")
}

/// The same block placement on raw matrices; `middle_identity` selects the
/// group version (identity middle block) or the Lie-algebra version (zero
/// middle block).
pub fn embed_matrix(m: &Mat, middle_identity: bool) -> Mat {
    assert!(m.is_square() && m.rows().is_multiple_of(2), "even square matrix required");
    let n = m.rows() / 2;
    let backend = m.backend();
    let dim = 2 * n + 2;
    Mat::from_fn(dim, dim, |i, j| {
        let block = |t: usize| {
            if t < n {
                (0usize, t)
            } else if t < n + 2 {
                (1, t - n)
            } else {
                (2, t - n - 2)
            }
        };
        let (bi, ri) = block(i);
        let (bj, cj) = block(j);
        match (bi, bj) {
            (1, 1) => {
                if ri == cj && middle_identity {
                    Scalar::one(backend)
                } else {
                    Scalar::zero(backend)
                }
            }
            (1, _) | (_, 1) => Scalar::zero(backend),
            (0, 0) => m.at(ri, cj).clone(),
            (0, 2) => m.at(ri, n + cj).clone(),
            (2, 0) => m.at(n + ri, cj).clone(),
            (2, 2) => m.at(n + ri, n + cj).clone(),
            _ => unreachable!(),
        }
    })
}

/// The change-of-coordinates matrix `f` with `f J f^T = J_h`; orthogonal,
/// so `f^{-1} = f^T`. Exact backend adjoins `sqrt(2)`.
pub fn form_change_map(n: usize, backend: Backend) -> Mat {
    assert!(n >= 2);
    let half_sqrt2 = match backend {
        Backend::Exact => Scalar::Exact(
            Ext::radical(num_rational::BigRational::new(1.into(), 2.into()), 2).expect("sqrt(2)"),
        ),
        Backend::Float => Scalar::Float(core::f64::consts::FRAC_1_SQRT_2),
    };
    let sqrt2_entry = &half_sqrt2 + &half_sqrt2; // sqrt(2), pre-scaled later
    let zero2 = Mat::zeros(2, 2, backend);
    let id2 = Mat::identity(2, backend);
    let t2 = crate::block2::basis_t(backend);
    let neg_t2 = -&t2;
    let sqrt2_block = id2.scale(&sqrt2_entry);
    let mut grid: Vec<Vec<&Mat>> = vec![vec![&zero2; n]; n];
    grid[0][0] = &sqrt2_block;
    grid[n - 1][n - 1] = &sqrt2_block;
    if n % 2 == 1 {
        grid[n / 2][n / 2] = &sqrt2_block;
    }
    for j in 1..n - 1 {
        let j1 = j + 1; // 1-based row index
        let mirror = n + 1 - j1; // 1-based column partner
        if j1 == mirror {
            continue; // middle row already set
        }
        if j1 < mirror {
            grid[j][j] = &id2;
            grid[j][mirror - 1] = &id2;
        } else {
            grid[j][mirror - 1] = &t2;
            grid[j][j] = &neg_t2;
        }
    }
    Mat::from_blocks(&grid).scale(&half_sqrt2)
}

/// Direction of the coordinate change between the two symplectic pictures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormDirection {
    /// `g -> f^{-1} g f`: sends `Sp(omega_h)` to `Sp(omega)`.
    HermitianToStandard,
    /// `g -> f g f^{-1}`: sends `Sp(omega)` to `Sp(omega_h)`.
    StandardToHermitian,
}

/// Conjugates `g` by the form-change map; `g` preserves one form iff the
/// result preserves the other.
pub fn change_of_form(g: &Mat, direction: FormDirection) -> Mat {
    assert!(g.is_square() && g.rows().is_multiple_of(2), "even square matrix required");
    let n = g.rows() / 2;
    let f = form_change_map(n, g.backend());
    let f_inv = f.transpose();
    match direction {
        FormDirection::HermitianToStandard => &(&f_inv * g) * &f,
        FormDirection::StandardToHermitian => &(&f * g) * &f_inv,
    }
}

/// Transforms a subspace basis between the pictures: `V` is
/// `omega_h`-isotropic iff `f^T V` is `omega`-isotropic.
pub fn change_of_form_subspace(basis: &Mat, direction: FormDirection) -> Mat {
    assert!(basis.rows().is_multiple_of(2));
    let n = basis.rows() / 2;
    let f = form_change_map(n, basis.backend());
    match direction {
        FormDirection::HermitianToStandard => &f.transpose() * basis,
        FormDirection::StandardToHermitian => &f * basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    /// Coefficient of `e_1 ^ ... ^ e_dim` in `v_1 ^ ... ^ v_dim`, expanded
    /// coordinate by coordinate. Test oracle, independent of determinants.
    fn wedge_coefficient(vectors: &[Vec<Scalar>], backend: Backend) -> Scalar {
        let dim = vectors.len();
        let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        acc.insert(Vec::new(), Scalar::one(backend));
        for v in vectors {
            let mut next: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for (set, coef) in &acc {
                for (idx, entry) in v.iter().enumerate() {
                    if entry.is_zero() || set.contains(&idx) {
                        continue;
                    }
                    let swaps = set.iter().filter(|&&s| s > idx).count();
                    let mut new_set = set.clone();
                    new_set.push(idx);
                    new_set.sort_unstable();
                    let term = if swaps % 2 == 1 {
                        -&(coef * entry)
                    } else {
                        coef * entry
                    };
                    next.entry(new_set)
                        .and_modify(|acc| *acc = &*acc + &term)
                        .or_insert(term);
                }
            }
            acc = next;
        }
        let full: Vec<usize> = (0..dim).collect();
        acc.remove(&full).unwrap_or_else(|| Scalar::zero(backend))
    }

    /// The defining wedge expression for `p_k`, used to cross-validate the
    /// submatrix determinant implementation.
    fn antiprincipal_minor_wedge_oracle(g: &Mat, k: usize) -> Scalar {
        let dim = g.rows();
        let backend = g.backend();
        let mut vectors: Vec<Vec<Scalar>> = Vec::new();
        for t in 0..k {
            vectors.push(g.col(dim - 1 - t));
        }
        for i in k..dim {
            vectors.push(
                (0..dim)
                    .map(|r| {
                        if r == i {
                            Scalar::one(backend)
                        } else {
                            Scalar::zero(backend)
                        }
                    })
                    .collect(),
            );
        }
        wedge_coefficient(&vectors, backend)
    }

    #[test]
    fn standard_j_small_cases() {
        let j1 = SymplecticForm::standard(1, Backend::Exact);
        assert_eq!(
            j1.gram(),
            &Mat::from_int_rows(&[&[0, 1], &[-1, 0]], Backend::Exact)
        );
        // n=2: J e1 = -e4, J e2 = e3, J e3 = -e2, J e4 = e1
        let j2 = SymplecticForm::standard(2, Backend::Exact);
        let expected = Mat::from_int_rows(
            &[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]],
            Backend::Exact,
        );
        assert_eq!(j2.gram(), &expected);
    }

    #[test]
    fn gram_squares_to_minus_identity() {
        for n in 1..=7 {
            let form = SymplecticForm::standard(n, Backend::Exact);
            let j = form.gram();
            assert_eq!(&(j * j), &(-&Mat::identity(2 * n, Backend::Exact)));
            assert_eq!(&j.transpose(), &(-j));
        }
        for n in 2..=6 {
            let form = SymplecticForm::hermitian(n, Backend::Exact);
            let j = form.gram();
            assert_eq!(&(j * j), &(-&Mat::identity(2 * n, Backend::Exact)));
            assert_eq!(&j.transpose(), &(-j));
        }
    }

    #[test]
    fn membership_examples_dimension_one() {
        let form = SymplecticForm::standard(1, Backend::Exact);
        assert!(is_symplectic(&Mat::identity(2, Backend::Exact), &form, &tol()).unwrap());
        let good = Mat::from_rows(vec![
            vec![Scalar::int(2, Backend::Exact), Scalar::int(0, Backend::Exact)],
            vec![
                Scalar::int(0, Backend::Exact),
                Scalar::ratio(1, 2, Backend::Exact),
            ],
        ])
        .unwrap();
        assert!(is_symplectic(&good, &form, &tol()).unwrap());
        let bad = Mat::from_int_rows(&[&[2, 0], &[0, 2]], Backend::Exact);
        assert!(!is_symplectic(&bad, &form, &tol()).unwrap());
        // size mismatch is an error, not `false`
        let wrong = Mat::identity(3, Backend::Exact);
        assert!(matches!(
            is_symplectic(&wrong, &form, &tol()),
            Err(SymplecticError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn closed_form_inverse_shear() {
        let form = SymplecticForm::standard(1, Backend::Exact);
        let g = GroupElement::new(
            form,
            Mat::from_int_rows(&[&[1, 1], &[0, 1]], Backend::Exact),
            &tol(),
        )
        .unwrap();
        let inv = g.inverse();
        assert_eq!(
            inv.mat(),
            &Mat::from_int_rows(&[&[1, -1], &[0, 1]], Backend::Exact)
        );
        assert_eq!(&(g.mat() * inv.mat()), &Mat::identity(2, Backend::Exact));
    }

    #[test]
    fn random_exact_elements_invert_exactly() {
        for seed in 0..20 {
            let n = 1 + (seed as usize % 4);
            let g = random_symplectic(n, seed, 2.0, Backend::Exact);
            let inv = g.inverse();
            assert_eq!(
                &(g.mat() * inv.mat()),
                &Mat::identity(2 * n, Backend::Exact),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn random_float_elements_pass_membership() {
        for seed in 0..10 {
            let n = 1 + (seed as usize % 3);
            let g = random_symplectic(n, seed, 1.0, Backend::Float);
            assert!(is_symplectic(g.mat(), g.form(), &tol()).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn determinism_same_seed_same_matrix() {
        let a = random_symplectic(3, 42, 1.0, Backend::Exact);
        let b = random_symplectic(3, 42, 1.0, Backend::Exact);
        assert_eq!(a.mat(), b.mat());
        let c = random_symplectic(3, 43, 1.0, Backend::Exact);
        assert_ne!(a.mat(), c.mat());
    }

    #[test]
    fn antiprincipal_minor_of_identity_vanishes() {
        for n in 1..=5 {
            let id = Mat::identity(2 * n, Backend::Exact);
            for k in 1..=n {
                assert!(antiprincipal_minor(&id, k).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn antiprincipal_minor_shear_entry() {
        let g = Mat::from_int_rows(&[&[1, 1], &[0, 1]], Backend::Exact);
        assert_eq!(
            antiprincipal_minor(&g, 1).unwrap(),
            Scalar::int(1, Backend::Exact)
        );
        assert!(matches!(
            antiprincipal_minor(&g, 3),
            Err(SymplecticError::MinorOutOfRange { .. })
        ));
    }

    #[test]
    fn minor_agrees_with_wedge_oracle() {
        for seed in 0..12 {
            let n = 1 + (seed as usize % 3);
            let g = random_symplectic(n, 1000 + seed, 2.0, Backend::Exact);
            for k in 1..=n {
                let fast = antiprincipal_minor(g.mat(), k).unwrap();
                let slow = antiprincipal_minor_wedge_oracle(g.mat(), k);
                assert_eq!(fast, slow, "seed {seed} k {k}");
            }
        }
    }

    #[test]
    fn minor_inversion_shear_and_identity() {
        let form = SymplecticForm::standard(1, Backend::Exact);
        let g = GroupElement::new(
            form.clone(),
            Mat::from_int_rows(&[&[1, 1], &[0, 1]], Backend::Exact),
            &tol(),
        )
        .unwrap();
        let records = minor_inversion_check(&g, &[1]).unwrap();
        assert_eq!(records[0].minor, Scalar::int(1, Backend::Exact));
        assert_eq!(records[0].minor_of_inverse, Scalar::int(-1, Backend::Exact));
        assert!(records[0].residual.is_zero());

        let id = GroupElement::new(form, Mat::identity(2, Backend::Exact), &tol()).unwrap();
        for rec in minor_inversion_check(&id, &[1, 2]).unwrap() {
            assert!(rec.residual.is_zero());
        }
    }

    #[test]
    fn minor_inversion_random_exact_sample() {
        for seed in 0..40 {
            let n = 1 + (seed as usize % 5);
            let g = random_symplectic(n, 7000 + seed, 2.0, Backend::Exact);
            let ks: Vec<usize> = (1..=n).collect();
            for rec in minor_inversion_check(&g, &ks).unwrap() {
                assert!(rec.residual.is_zero(), "seed {seed} k {}", rec.k);
            }
        }
    }

    #[test]
    fn embedding_preserves_membership_and_corner_entry() {
        let id = GroupElement::new(
            SymplecticForm::standard(2, Backend::Exact),
            Mat::identity(4, Backend::Exact),
            &tol(),
        )
        .unwrap();
        assert_eq!(embed_sp(&id).mat(), &Mat::identity(6, Backend::Exact));
        for seed in 0..10 {
            let n = 1 + (seed as usize % 3);
            let g = random_symplectic(n, 300 + seed, 2.0, Backend::Exact);
            let big = embed_sp(&g);
            assert!(is_symplectic(big.mat(), big.form(), &tol()).unwrap());
            // (1, 2n) of g lands at (1, 2n+2) of the image (1-based)
            assert_eq!(big.mat().at(0, 2 * n + 1), g.mat().at(0, 2 * n - 1));
        }
    }

    #[test]
    fn embedding_shifts_antiprincipal_minors() {
        // columns 2n, 2n-1 of the image are columns shifted by two, so
        // p_1 and p_2 are preserved for n >= 2
        for seed in 0..8 {
            let n = 2 + (seed as usize % 3);
            let g = random_symplectic(n, 400 + seed, 2.0, Backend::Exact);
            let big = embed_sp(&g);
            for k in 1..=2usize {
                assert_eq!(
                    antiprincipal_minor(big.mat(), k).unwrap(),
                    antiprincipal_minor(g.mat(), k).unwrap(),
                    "seed {seed} k {k}"
                );
            }
        }
    }

    #[test]
    fn form_change_intertwines_grams() {
        for n in 2..=6 {
            let f = form_change_map(n, Backend::Exact);
            let j = SymplecticForm::standard(n, Backend::Exact);
            let jh = SymplecticForm::hermitian(n, Backend::Exact);
            assert_eq!(&(&(&f * j.gram()) * &f.transpose()), jh.gram(), "n = {n}");
            // orthogonality justifies using the transpose as the inverse
            assert_eq!(
                &(&f * &f.transpose()),
                &Mat::identity(2 * n, Backend::Exact),
                "n = {n}"
            );
        }
    }

    #[test]
    fn change_of_form_is_group_isomorphism_on_samples() {
        let n = 3;
        let jh = SymplecticForm::hermitian(n, Backend::Exact);
        for seed in 0..6 {
            let g = random_symplectic(n, 50 + seed, 2.0, Backend::Exact);
            let h = random_symplectic(n, 90 + seed, 2.0, Backend::Exact);
            let g_h = change_of_form(g.mat(), FormDirection::StandardToHermitian);
            let h_h = change_of_form(h.mat(), FormDirection::StandardToHermitian);
            assert!(is_symplectic(&g_h, &jh, &tol()).unwrap());
            let prod = change_of_form(&(g.mat() * h.mat()), FormDirection::StandardToHermitian);
            assert_eq!(prod, &g_h * &h_h);
            // round trip
            let back = change_of_form(&g_h, FormDirection::HermitianToStandard);
            assert_eq!(&back, g.mat());
        }
    }
}
