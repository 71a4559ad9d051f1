//! Isotropic Theta-flags, antipodality, horocyclic groups, and the
//! inversion map.
//!
//! A flag is stored as nested column spans in a single `2n x k_max` matrix:
//! for each `i` in the dimension set, the first `i` columns span the
//! component `V^i`. The stored basis is a canonical nested echelon form, so
//! two flags are equal iff their matrices are equal (exact backend).
//!
//! Two symplectic flags `V`, `W` are antipodal (transverse) when
//! `V^i + (W^i)^perp = R^{2n}` directly for every `i`, with the
//! omega-perpendicular computed as the kernel of `(basis)^T J`. For the
//! `(2, 2n-2)` pair flags of `SL(2n, R)` the condition is the two direct
//! sums `V^2 + W^{2n-2}` and `W^2 + V^{2n-2}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;

use crate::mat::{Mat, MatError};
use crate::rng;
use crate::scalar::{Backend, Scalar, Tolerance};
use crate::symplectic::{
    antiprincipal_minor, inverse_in_form, is_symplectic, FormKind, SymplecticError,
    SymplecticForm,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FlagError {
    #[error("invalid Theta set: {0}")]
    InvalidTheta(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("basis columns are linearly dependent")]
    DependentColumns,
    #[error("flag component is not isotropic")]
    NotIsotropic,
    #[error("flags have different kinds or dimension data")]
    KindMismatch,
    #[error("flag is not antipodal to the reference flag")]
    NotAntipodal,
    #[error("Theta' is not a subset of Theta")]
    NotSubset,
    #[error("seed matrix is not strictly block upper triangular")]
    SeedNotBlockUpper,
    #[error("unipotent completion failed: {0}")]
    Completion(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

/// A nonempty subset of `{1, ..., n}` labelling flag component dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSet {
    n: usize,
    members: Vec<usize>,
}

impl ThetaSet {
    pub fn new(n: usize, members: Vec<usize>) -> Result<ThetaSet, FlagError> {
        if n == 0 {
            return Err(FlagError::InvalidTheta("n must be positive".into()));
        }
        if members.is_empty() {
            return Err(FlagError::InvalidTheta("Theta must be nonempty".into()));
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FlagError::InvalidTheta(
                "members must be strictly increasing".into(),
            ));
        }
        if members[0] < 1 || *members.last().unwrap() > n {
            return Err(FlagError::InvalidTheta(format!(
                "members must lie in 1..={n}"
            )));
        }
        Ok(ThetaSet { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn k_max(&self) -> usize {
        *self.members.last().unwrap()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.members.binary_search(&k).is_ok()
    }

    pub fn contains_odd(&self) -> bool {
        self.members.iter().any(|k| k % 2 == 1)
    }

    pub fn is_subset_of(&self, other: &ThetaSet) -> bool {
        self.n == other.n && self.members.iter().all(|k| other.contains(*k))
    }

    /// Row cut points (0-based, strictly between 0 and 2n) of the block
    /// structure stabilizing the symplectically completed standard flag:
    /// `k_1, ..., k_s, 2n - k_s, ..., 2n - k_1`.
    pub fn block_cuts(&self) -> Vec<usize> {
        let dim = 2 * self.n;
        let mut cuts: Vec<usize> = self.members.clone();
        for &k in self.members.iter().rev() {
            let c = dim - k;
            if c != *cuts.last().unwrap() {
                cuts.push(c);
            }
        }
        cuts
    }

    /// Start row of the block containing row `r` (0-based).
    fn block_start(&self, r: usize) -> usize {
        let mut start = 0;
        for &c in self.block_cuts().iter() {
            if r < c {
                break;
            }
            start = c;
        }
        start
    }
}

/// Which transversality notion applies to a flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlagKind {
    /// Isotropic flags of `Sp(2n)`, dimensions in `1..=n`.
    Symplectic,
    /// Pair flags `(V^2, V^{2n-2})` of `SL(2n, R)`.
    SlPair,
}

/// A partial flag in canonical nested echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct Flag {
    n: usize,
    kind: FlagKind,
    dims: Vec<usize>,
    basis: Mat,
    form: Option<SymplecticForm>,
}

/// Canonicalizes a nested basis: for each dimension `d`, the first `d`
/// columns of the result are a canonical basis of the span of the first
/// `d` input columns. Pivot rows come from the echelon reduction itself,
/// so exact and float backends use one consistent zero threshold.
fn canonical_nested_basis(dims: &[usize], raw: &Mat, tol: &Tolerance) -> Result<Mat, FlagError> {
    let mut used: Vec<usize> = Vec::new();
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for &d in dims {
        let prefix = raw.select_cols(&(0..d).collect::<Vec<_>>())?;
        let (ech, pivots) = prefix.column_echelon_with_pivots(tol);
        if ech.cols() != d {
            return Err(FlagError::DependentColumns);
        }
        for (j, &p) in pivots.iter().enumerate() {
            if !used.contains(&p) {
                used.push(p);
                cols.push(ech.col(j));
            }
        }
        if cols.len() != d {
            return Err(FlagError::Completion(
                "nested spans produced inconsistent pivots".into(),
            ));
        }
    }
    let rows = raw.rows();
    Ok(Mat::from_fn(rows, cols.len(), |i, j| cols[j][i].clone()))
}

impl Flag {
    /// An isotropic Theta-flag for the given form. The first `i` columns of
    /// `basis` must span `V^i` for each `i` in Theta, and the largest
    /// component must be isotropic.
    pub fn isotropic(
        theta: &ThetaSet,
        basis: Mat,
        form: &SymplecticForm,
        tol: &Tolerance,
    ) -> Result<Flag, FlagError> {
        if form.n() != theta.n() {
            return Err(FlagError::Shape("form and Theta disagree on n".into()));
        }
        if basis.rows() != form.dim() || basis.cols() != theta.k_max() {
            return Err(FlagError::Shape(format!(
                "basis must be {} x {}",
                form.dim(),
                theta.k_max()
            )));
        }
        let canon = canonical_nested_basis(theta.members(), &basis, tol)?;
        // isotropy of the largest component implies it for the nested ones
        let gram = &(&canon.transpose() * form.gram()) * &canon;
        let iso = match basis.backend() {
            Backend::Exact => gram.is_zero(),
            Backend::Float => gram.max_abs_f64() <= tol.abs + tol.rel * canon.max_abs_f64(),
        };
        if !iso {
            return Err(FlagError::NotIsotropic);
        }
        Ok(Flag {
            n: theta.n(),
            kind: FlagKind::Symplectic,
            dims: theta.members().to_vec(),
            basis: canon,
            form: Some(form.clone()),
        })
    }

    /// A pair flag `(V^2, V^{2n-2})` of `SL(2n, R)`; no isotropy demanded.
    pub fn sl_pair(n: usize, basis: Mat, tol: &Tolerance) -> Result<Flag, FlagError> {
        if n < 2 {
            return Err(FlagError::Shape("pair flags need n >= 2".into()));
        }
        let dim = 2 * n;
        if basis.rows() != dim || basis.cols() != dim - 2 {
            return Err(FlagError::Shape(format!("basis must be {dim} x {}", dim - 2)));
        }
        let dims = vec![2, dim - 2];
        let canon = canonical_nested_basis(&dims, &basis, tol)?;
        Ok(Flag {
            n,
            kind: FlagKind::SlPair,
            dims,
            basis: canon,
            form: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> FlagKind {
        self.kind
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn backend(&self) -> Backend {
        self.basis.backend()
    }

    pub fn form(&self) -> Option<&SymplecticForm> {
        self.form.as_ref()
    }

    pub fn theta(&self) -> Option<ThetaSet> {
        match self.kind {
            FlagKind::Symplectic => ThetaSet::new(self.n, self.dims.clone()).ok(),
            FlagKind::SlPair => None,
        }
    }

    /// Basis of the component of dimension `d` (must be one of `dims`).
    pub fn component(&self, d: usize) -> Mat {
        assert!(self.dims.contains(&d), "no component of dimension {d}");
        self.basis
            .select_cols(&(0..d).collect::<Vec<_>>())
            .expect("component within basis")
    }

    /// The flag `g . self`, re-canonicalized. For symplectic flags the
    /// image is validated against the same form.
    pub fn apply(&self, g: &Mat, tol: &Tolerance) -> Result<Flag, FlagError> {
        let moved = g * &self.basis;
        match self.kind {
            FlagKind::Symplectic => {
                let theta = ThetaSet::new(self.n, self.dims.clone())?;
                Flag::isotropic(&theta, moved, self.form.as_ref().unwrap(), tol)
            }
            FlagKind::SlPair => Flag::sl_pair(self.n, moved, tol),
        }
    }
}

/// The standard flag: `V^i = span(e_1, ..., e_i)`.
pub fn standard_flag(theta: &ThetaSet, form: &SymplecticForm) -> Flag {
    let backend = form.backend();
    let basis = Mat::from_fn(form.dim(), theta.k_max(), |i, j| {
        if i == j {
            Scalar::one(backend)
        } else {
            Scalar::zero(backend)
        }
    });
    Flag::isotropic(theta, basis, form, &Tolerance::default())
        .expect("the standard flag is isotropic")
}

/// The standard opposite flag: `V^i = span(e_2n, ..., e_{2n-i+1})`.
pub fn standard_opp_flag(theta: &ThetaSet, form: &SymplecticForm) -> Flag {
    let backend = form.backend();
    let dim = form.dim();
    let basis = Mat::from_fn(dim, theta.k_max(), |i, j| {
        if i == dim - 1 - j {
            Scalar::one(backend)
        } else {
            Scalar::zero(backend)
        }
    });
    Flag::isotropic(theta, basis, form, &Tolerance::default())
        .expect("the standard opposite flag is isotropic")
}

/// `tau_+` in the pair-flag manifold: `(span(e_1, e_2), span(e_1, ..., e_{2n-2}))`.
pub fn sl_tau_plus(n: usize, backend: Backend) -> Flag {
    let dim = 2 * n;
    let basis = Mat::from_fn(dim, dim - 2, |i, j| {
        if i == j {
            Scalar::one(backend)
        } else {
            Scalar::zero(backend)
        }
    });
    Flag::sl_pair(n, basis, &Tolerance::default()).expect("coordinate flag")
}

/// `tau_-` in the pair-flag manifold: `(span(e_2n, e_{2n-1}), span(e_2n, ..., e_3))`.
pub fn sl_tau_minus(n: usize, backend: Backend) -> Flag {
    let dim = 2 * n;
    let basis = Mat::from_fn(dim, dim - 2, |i, j| {
        if i == dim - 1 - j {
            Scalar::one(backend)
        } else {
            Scalar::zero(backend)
        }
    });
    Flag::sl_pair(n, basis, &Tolerance::default()).expect("coordinate flag")
}

/// Basis of the omega-perpendicular of the column span of `basis`.
pub fn omega_perp(basis: &Mat, form: &SymplecticForm, tol: &Tolerance) -> Mat {
    let pairing = &basis.transpose() * form.gram();
    pairing
        .kernel(tol)
        .expect("perpendicular of a proper subspace is nonzero")
}

fn det_is_nonzero(m: &Mat, tol: &Tolerance) -> Result<bool, FlagError> {
    let det = m.det()?;
    Ok(match m.backend() {
        Backend::Exact => !det.is_zero(),
        Backend::Float => {
            // Hadamard-style scale: product of column norms
            let mut scale = 1.0f64;
            for j in 0..m.cols() {
                let mut acc = 0.0;
                for i in 0..m.rows() {
                    let v = m.at(i, j).to_f64();
                    acc += v * v;
                }
                scale *= crate::fmath::sqrt(acc).max(1e-300);
            }
            det.magnitude() > tol.abs + tol.rel * scale
        }
    })
}

/// Antipodality (transversality) of two flags of the same kind.
pub fn are_antipodal(a: &Flag, b: &Flag, tol: &Tolerance) -> Result<bool, FlagError> {
    if a.kind != b.kind || a.n != b.n || a.dims != b.dims {
        return Err(FlagError::KindMismatch);
    }
    match a.kind {
        FlagKind::Symplectic => {
            let form = a.form.as_ref().unwrap();
            if b.form.as_ref() != Some(form) {
                return Err(FlagError::KindMismatch);
            }
            for &d in &a.dims {
                let perp = omega_perp(&b.component(d), form, tol);
                let assembled = a.component(d).hstack(&perp)?;
                if assembled.cols() != form.dim() || !det_is_nonzero(&assembled, tol)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        FlagKind::SlPair => {
            let d_small = a.dims[0];
            let d_large = a.dims[1];
            let first = a.component(d_small).hstack(&b.component(d_large))?;
            let second = b.component(d_small).hstack(&a.component(d_large))?;
            Ok(det_is_nonzero(&first, tol)? && det_is_nonzero(&second, tol)?)
        }
    }
}

/// An element of the horocyclic group `U_Theta` of the standard flag,
/// stored as the full `2n x 2n` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct UnipotentElement {
    theta: ThetaSet,
    mat: Mat,
}

impl UnipotentElement {
    pub fn theta(&self) -> &ThetaSet {
        &self.theta
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    /// `u^{-1}`, computed by the closed-form symplectic inverse.
    pub fn inverse(&self) -> UnipotentElement {
        let form = SymplecticForm::standard(self.theta.n(), self.mat.backend());
        UnipotentElement {
            theta: self.theta.clone(),
            mat: inverse_in_form(&self.mat, &form),
        }
    }

    /// `u . tau_opp` as a flag.
    pub fn moved_opp_flag(&self, tol: &Tolerance) -> Flag {
        let form = SymplecticForm::standard(self.theta.n(), self.mat.backend());
        standard_opp_flag(&self.theta, &form)
            .apply(&self.mat, tol)
            .expect("unipotent orbit stays isotropic")
    }
}

fn is_strictly_block_upper(theta: &ThetaSet, m: &Mat) -> bool {
    let dim = 2 * theta.n();
    for i in 0..dim {
        let start = theta.block_start(i);
        for j in 0..dim {
            let same_block = theta.block_start(j) == start;
            if (j < start || same_block) && !m.at(i, j).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Builds the element `exp(N)` of `U_Theta` where `N` is the symplectic
/// projection `(seed + J seed^T J)/2` of a strictly block upper triangular
/// seed. All-zero seeds give the identity; the projection is the identity
/// on the Lie algebra, so every element of `U_Theta` arises this way.
pub fn horocyclic_element(theta: &ThetaSet, seed: &Mat) -> Result<UnipotentElement, FlagError> {
    let dim = 2 * theta.n();
    if seed.rows() != dim || seed.cols() != dim {
        return Err(FlagError::Shape(format!("seed must be {dim} x {dim}")));
    }
    if !is_strictly_block_upper(theta, seed) {
        return Err(FlagError::SeedNotBlockUpper);
    }
    let form = SymplecticForm::standard(theta.n(), seed.backend());
    let j = form.gram();
    let sigma = &(j * &seed.transpose()) * j;
    let half = Scalar::ratio(1, 2, seed.backend());
    let generator = (seed + &sigma).scale(&half);
    debug_assert!(is_strictly_block_upper(theta, &generator));
    let mat = generator.nilpotent_exp()?;
    if !is_symplectic(&mat, &form, &Tolerance::default())? {
        return Err(FlagError::Completion("exponential left the group".into()));
    }
    Ok(UnipotentElement {
        theta: theta.clone(),
        mat,
    })
}

/// A random element of `U_Theta` with small rational parameters.
pub fn random_unipotent(
    theta: &ThetaSet,
    rng: &mut ChaCha8Rng,
    backend: Backend,
) -> UnipotentElement {
    let dim = 2 * theta.n();
    let seed = Mat::from_fn(dim, dim, |i, j| {
        if theta.block_start(j) > theta.block_start(i) {
            rng::small_scalar(rng, backend, 3)
        } else {
            Scalar::zero(backend)
        }
    });
    horocyclic_element(theta, &seed).expect("seed is strictly block upper")
}

/// The horocyclic group of `tau_+` in the pair-flag manifold:
/// `[[I, A, B], [0, I, C], [0, 0, I]]` in `(2, 2n-4, 2)` block sizes.
/// `a`, `b`, `c` are row-major entries of the blocks `A` (2 x (2n-4)),
/// `B` (2 x 2), and `C` ((2n-4) x 2); `a` and `c` are empty when n = 2.
pub fn sl_horocyclic(
    n: usize,
    a: &[Scalar],
    b: &[Scalar],
    c: &[Scalar],
) -> Result<Mat, FlagError> {
    if n < 2 {
        return Err(FlagError::Shape("pair flags need n >= 2".into()));
    }
    let mid = 2 * n - 4;
    if a.len() != 2 * mid || b.len() != 4 || c.len() != 2 * mid {
        return Err(FlagError::Shape(format!(
            "expected block lengths {}, 4, {}",
            2 * mid,
            2 * mid
        )));
    }
    let backend = b[0].backend();
    let dim = 2 * n;
    Ok(Mat::from_fn(dim, dim, |i, j| {
        if i == j {
            return Scalar::one(backend);
        }
        if i < 2 && (2..2 + mid).contains(&j) {
            return a[i * mid + (j - 2)].clone();
        }
        if i < 2 && j >= 2 + mid {
            return b[i * 2 + (j - 2 - mid)].clone();
        }
        if (2..2 + mid).contains(&i) && j >= 2 + mid {
            return c[(i - 2) * 2 + (j - 2 - mid)].clone();
        }
        Scalar::zero(backend)
    }))
}

/// Whether `m` lies in the horocyclic group of `tau_+` for pair flags.
pub fn is_sl_horocyclic(n: usize, m: &Mat) -> bool {
    let dim = 2 * n;
    if m.rows() != dim || m.cols() != dim {
        return false;
    }
    let band = |t: usize| {
        if t < 2 {
            0
        } else if t < dim - 2 {
            1
        } else {
            2
        }
    };
    for i in 0..dim {
        for j in 0..dim {
            let (bi, bj) = (band(i), band(j));
            if bi > bj && !m.at(i, j).is_zero() {
                return false;
            }
            if bi == bj {
                let expect_one = i == j;
                if expect_one && m.at(i, j) != &Scalar::one(m.backend()) {
                    return false;
                }
                if !expect_one && !m.at(i, j).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// A random element of the pair-flag horocyclic group.
pub fn random_sl_horocyclic(n: usize, rng: &mut ChaCha8Rng, backend: Backend) -> Mat {
    let mid = 2 * n - 4;
    let draw = |rng: &mut ChaCha8Rng, len: usize| -> Vec<Scalar> {
        (0..len).map(|_| rng::small_scalar(rng, backend, 2)).collect()
    };
    let a = draw(rng, 2 * mid);
    let b = draw(rng, 4);
    let c = draw(rng, 2 * mid);
    sl_horocyclic(n, &a, &b, &c).expect("shapes match")
}

/// The unique `u` in `U_Theta` with `u . tau_opp = tau`, for `tau`
/// antipodal to the standard flag. Non-antipodal inputs produce the typed
/// [`FlagError::NotAntipodal`], distinct from numerical failures.
pub fn solve_unipotent(tau: &Flag, theta: &ThetaSet) -> Result<UnipotentElement, FlagError> {
    if tau.kind() != FlagKind::Symplectic || tau.n() != theta.n() || tau.dims() != theta.members()
    {
        return Err(FlagError::KindMismatch);
    }
    let form = tau.form.clone().unwrap();
    if form.kind() != FormKind::Standard {
        return Err(FlagError::KindMismatch);
    }
    let dim = form.dim();
    let backend = tau.backend();
    let kmax = theta.k_max();

    // Columns 2n-1 down to 2n-kmax (0-based): for each j = 1..=kmax the
    // unique vector of tau^{k(j)} whose bottom k(j) coordinates form the
    // indicator of row 2n-j. Its existence is exactly antipodality to the
    // standard flag.
    let mut columns: Vec<Option<Vec<Scalar>>> = vec![None; dim];
    for &k in theta.members() {
        let comp = tau.component(k);
        let bottom_rows: Vec<usize> = (dim - k..dim).collect();
        let bottom = comp.submatrix(&bottom_rows, &(0..k).collect::<Vec<_>>())?;
        let inv = match bottom.inverse() {
            Ok(m) => m,
            Err(MatError::Singular) => return Err(FlagError::NotAntipodal),
            Err(e) => return Err(e.into()),
        };
        let normalized = &comp * &inv; // bottom block becomes the identity
        let lower = theta
            .members()
            .iter()
            .rev()
            .find(|&&m| m < k)
            .copied()
            .unwrap_or(0);
        for j in lower + 1..=k {
            // the bottom indicator of row 2n-j sits in column k-j
            columns[dim - j] = Some(normalized.col(k - j));
        }
    }

    // Complete the remaining columns right to left: each is e_c plus
    // above-block entries, pinned by the pairings against the columns
    // already built.
    let j_gram = form.gram();
    let mut pairing_rows: Vec<Option<Vec<Scalar>>> = vec![None; dim]; // J * u_c per column
    let jv = |v: &[Scalar]| -> Vec<Scalar> {
        (0..dim)
            .map(|r| {
                let mut acc = Scalar::zero(backend);
                for (b, vb) in v.iter().enumerate() {
                    if !vb.is_zero() && !j_gram.at(r, b).is_zero() {
                        acc = &acc + &(j_gram.at(r, b) * vb);
                    }
                }
                acc
            })
            .collect()
    };
    for c in (dim - kmax..dim).rev() {
        pairing_rows[c] = Some(jv(columns[c].as_ref().unwrap()));
    }
    for c in (0..dim - kmax).rev() {
        let start = theta.block_start(c);
        let built: Vec<usize> = (c + 1..dim).collect();
        let mut col = vec![Scalar::zero(backend); dim];
        col[c] = Scalar::one(backend);
        if start > 0 {
            // unknowns x_0..x_{start-1} from omega(u_c, u_{c'}) = J[c][c']
            // with omega(e_a, u_{c'}) = (J u_{c'})_a
            let a = Mat::from_fn(built.len(), start, |e, v| {
                pairing_rows[built[e]].as_ref().unwrap()[v].clone()
            });
            let rhs = Mat::from_fn(built.len(), 1, |e, _| {
                let cp = built[e];
                j_gram.at(c, cp) - &pairing_rows[cp].as_ref().unwrap()[c]
            });
            let x = match a.solve_exactly_determined(&rhs) {
                Ok(x) => x,
                Err(MatError::Inconsistent) | Err(MatError::Underdetermined) => {
                    return Err(FlagError::Completion(
                        "pairing constraints did not pin the column".into(),
                    ))
                }
                Err(e) => return Err(e.into()),
            };
            for (v, item) in col.iter_mut().enumerate().take(start) {
                *item = x.at(v, 0).clone();
            }
        } else {
            // no free entries; the constraints must already hold
            for &cp in &built {
                let pair = pairing_rows[cp].as_ref().unwrap()[c].clone();
                let want = j_gram.at(c, cp);
                let ok = match backend {
                    Backend::Exact => &pair == want,
                    Backend::Float => Tolerance::default().close(pair.to_f64(), want.to_f64()),
                };
                if !ok {
                    return Err(FlagError::Completion(
                        "forced column violates a pairing constraint".into(),
                    ));
                }
            }
        }
        pairing_rows[c] = Some(jv(&col));
        columns[c] = Some(col);
    }

    let mat = Mat::from_fn(dim, dim, |i, j| columns[j].as_ref().unwrap()[i].clone());
    if !is_symplectic(&mat, &form, &Tolerance::default())? {
        return Err(FlagError::Completion(
            "completed matrix left the group".into(),
        ));
    }
    Ok(UnipotentElement {
        theta: theta.clone(),
        mat,
    })
}

/// The inversion map `tau -> u_tau^{-1} . tau_opp` on flags antipodal to
/// the standard flag; an involution that preserves double transversality.
pub fn inversion(tau: &Flag, theta: &ThetaSet) -> Result<Flag, FlagError> {
    let u = solve_unipotent(tau, theta)?;
    let inv = u.inverse();
    Ok(inv.moved_opp_flag(&Tolerance::default()))
}

/// Forgets the components of `tau` outside `theta_sub`.
pub fn project_flag(tau: &Flag, theta_sub: &ThetaSet) -> Result<Flag, FlagError> {
    let theta = tau.theta().ok_or(FlagError::KindMismatch)?;
    if !theta_sub.is_subset_of(&theta) {
        return Err(FlagError::NotSubset);
    }
    let form = tau.form.clone().unwrap();
    let basis = tau
        .basis()
        .select_cols(&(0..theta_sub.k_max()).collect::<Vec<_>>())?;
    Flag::isotropic(theta_sub, basis, &form, &Tolerance::default())
}

/// Sign data for one sampled doubly-transverse element.
#[derive(Clone, Debug)]
pub struct SignRecord {
    pub trial: usize,
    /// `(k, sign p_k(u), sign p_k(u^{-1}))` for each `k` in Theta.
    pub signs: Vec<(usize, i32, i32)>,
}

/// Certificate for the minor-sign obstruction behind the inversion
/// property.
///
/// This certifies only the sign behavior of the antiprincipal minors on the
/// sampled doubly-transverse elements: for odd `k` in Theta the sign of
/// `p_k` flips under inversion, for even `k` it persists. It makes no claim
/// about the connected components of the doubly-transverse locus.
#[derive(Clone, Debug)]
pub struct SignCertificate {
    pub theta: ThetaSet,
    pub samples: usize,
    pub resamples: usize,
    pub records: Vec<SignRecord>,
    pub odd_flip_holds: bool,
    pub even_persist_holds: bool,
    pub counterexample: Option<usize>,
}

impl SignCertificate {
    pub fn statement(&self) -> String {
        format!(
            "minor-sign obstruction for Theta = {:?} in Sp({}): for doubly \
             transverse u and every odd k in Theta, sign p_k(u^-1) = -sign p_k(u) \
             (Theta contains an odd integer => the inversion map moves every \
             sampled element); for even k the signs agree. This certifies the \
             sign obstruction only, not the topology of the doubly-transverse \
             locus.",
            self.theta.members(),
            2 * self.theta.n()
        )
    }

    pub fn holds(&self) -> bool {
        self.odd_flip_holds && self.even_persist_holds && self.counterexample.is_none()
    }
}

/// Samples doubly-transverse elements of `U_Theta` (exact backend) and
/// records the signs of `p_k(u)` and `p_k(u^{-1})` for all `k` in Theta.
/// A counterexample would falsify the minor sign law and aborts the scan.
pub fn sign_certificate(
    theta: &ThetaSet,
    samples: usize,
    seed: u64,
) -> Result<SignCertificate, FlagError> {
    let mut records = Vec::with_capacity(samples);
    let mut resamples = 0usize;
    let mut odd_ok = true;
    let mut even_ok = true;
    let mut counterexample = None;
    'trials: for trial in 0..samples {
        let mut rng = rng::trial_rng(seed, trial as u64);
        let u = loop {
            let cand = random_unipotent(theta, &mut rng, Backend::Exact);
            let doubly = theta
                .members()
                .iter()
                .all(|&k| !antiprincipal_minor(cand.mat(), k).unwrap().is_zero());
            if doubly {
                break cand;
            }
            resamples += 1;
            if resamples > samples * 10 + 100 {
                return Err(FlagError::Sampling(
                    "could not find doubly transverse samples".into(),
                ));
            }
        };
        let inv = u.inverse();
        let mut signs = Vec::new();
        for &k in theta.members() {
            let s = antiprincipal_minor(u.mat(), k)?.signum();
            let si = antiprincipal_minor(inv.mat(), k)?.signum();
            let consistent = if k % 2 == 1 { si == -s } else { si == s };
            if !consistent {
                if k % 2 == 1 {
                    odd_ok = false;
                } else {
                    even_ok = false;
                }
                counterexample = Some(trial);
            }
            signs.push((k, s, si));
        }
        records.push(SignRecord { trial, signs });
        if counterexample.is_some() {
            break 'trials;
        }
    }
    Ok(SignCertificate {
        theta: theta.clone(),
        samples,
        resamples,
        records,
        odd_flip_holds: odd_ok,
        even_persist_holds: even_ok,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ext;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn theta(n: usize, members: &[usize]) -> ThetaSet {
        ThetaSet::new(n, members.to_vec()).unwrap()
    }

    fn std_form(n: usize) -> SymplecticForm {
        SymplecticForm::standard(n, Backend::Exact)
    }

    #[test]
    fn theta_validation() {
        assert!(ThetaSet::new(3, vec![1, 3]).is_ok());
        assert!(ThetaSet::new(3, vec![]).is_err());
        assert!(ThetaSet::new(3, vec![2, 2]).is_err());
        assert!(ThetaSet::new(3, vec![0, 1]).is_err());
        assert!(ThetaSet::new(3, vec![4]).is_err());
    }

    #[test]
    fn block_cuts_symmetrize() {
        assert_eq!(theta(3, &[1, 2]).block_cuts(), vec![1, 2, 4, 5]);
        assert_eq!(theta(2, &[2]).block_cuts(), vec![2]);
        assert_eq!(theta(3, &[3]).block_cuts(), vec![3]);
        assert_eq!(theta(4, &[2, 4]).block_cuts(), vec![2, 4, 6]);
    }

    #[test]
    fn standard_pair_is_antipodal() {
        for n in 1..=6 {
            for members in [vec![1], vec![n], (1..=n).collect::<Vec<_>>()] {
                let th = theta(n, &members);
                let form = std_form(n);
                let tau = standard_flag(&th, &form);
                let opp = standard_opp_flag(&th, &form);
                assert!(are_antipodal(&tau, &opp, &tol()).unwrap(), "n={n}");
                assert!(!are_antipodal(&tau, &tau, &tol()).unwrap(), "n={n}");
            }
        }
    }

    #[test]
    fn isotropy_is_enforced() {
        // span(e1, e_2n) is not isotropic: omega(e1, e_2n) != 0
        let th = theta(2, &[2]);
        let form = std_form(2);
        let basis = Mat::from_fn(4, 2, |i, j| {
            let hit = (j == 0 && i == 0) || (j == 1 && i == 3);
            if hit {
                Scalar::one(Backend::Exact)
            } else {
                Scalar::zero(Backend::Exact)
            }
        });
        assert_eq!(
            Flag::isotropic(&th, basis, &form, &tol()).unwrap_err(),
            FlagError::NotIsotropic
        );
    }

    #[test]
    fn canonical_form_identifies_equal_spans() {
        let th = theta(2, &[2]);
        let form = std_form(2);
        // two bases of span(e1, e2)
        let b1 = Mat::from_int_rows(&[&[1, 3], &[2, 1], &[0, 0], &[0, 0]], Backend::Exact);
        let b2 = Mat::from_int_rows(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]], Backend::Exact);
        let f1 = Flag::isotropic(&th, b1, &form, &tol()).unwrap();
        let f2 = Flag::isotropic(&th, b2, &form, &tol()).unwrap();
        assert_eq!(f1, f2);
    }

    #[test]
    fn horocyclic_identity_and_closure() {
        let th = theta(2, &[1, 2]);
        let zero = Mat::zeros(4, 4, Backend::Exact);
        let u = horocyclic_element(&th, &zero).unwrap();
        assert_eq!(u.mat(), &Mat::identity(4, Backend::Exact));

        let mut rng = rng::trial_rng(5, 0);
        let a = random_unipotent(&th, &mut rng, Backend::Exact);
        let b = random_unipotent(&th, &mut rng, Backend::Exact);
        let prod = a.mat() * b.mat();
        // closure: still symplectic, still strictly block upper off the
        // identity diagonal
        let form = std_form(2);
        assert!(is_symplectic(&prod, &form, &tol()).unwrap());
        let diff = &prod - &Mat::identity(4, Backend::Exact);
        assert!(is_strictly_block_upper(&th, &diff));
    }

    #[test]
    fn sl_horocyclic_n2_shape() {
        let b: Vec<Scalar> = [1, 2, 3, 4]
            .iter()
            .map(|&v| Scalar::int(v, Backend::Exact))
            .collect();
        let m = sl_horocyclic(2, &[], &b, &[]).unwrap();
        assert!(is_sl_horocyclic(2, &m));
        let expected = Mat::from_int_rows(
            &[&[1, 0, 1, 2], &[0, 1, 3, 4], &[0, 0, 1, 0], &[0, 0, 0, 1]],
            Backend::Exact,
        );
        assert_eq!(m, expected);
    }

    #[test]
    fn transversality_matches_minor_criterion() {
        // u . tau_opp antipodal to tau_opp iff all p_k(u) nonzero
        for n in 2..=3 {
            for members in [vec![1], vec![2], vec![1, 2]] {
                let th = theta(n, &members);
                let form = std_form(n);
                let opp = standard_opp_flag(&th, &form);
                for trial in 0..30u64 {
                    let mut rng = rng::trial_rng(900 + trial, trial);
                    let u = random_unipotent(&th, &mut rng, Backend::Exact);
                    let moved = u.moved_opp_flag(&tol());
                    let by_flags = are_antipodal(&moved, &opp, &tol()).unwrap();
                    let by_minors = th
                        .members()
                        .iter()
                        .all(|&k| !antiprincipal_minor(u.mat(), k).unwrap().is_zero());
                    assert_eq!(by_flags, by_minors, "n={n} members={members:?} trial={trial}");
                }
            }
        }
    }

    #[test]
    fn solve_unipotent_round_trip() {
        for n in 1..=4 {
            for members in [vec![1], vec![n], (1..=n).collect::<Vec<_>>()] {
                let th = theta(n, &members);
                for trial in 0..10u64 {
                    let mut rng = rng::trial_rng(70 + trial, trial);
                    let u = random_unipotent(&th, &mut rng, Backend::Exact);
                    let tau = u.moved_opp_flag(&tol());
                    let solved = solve_unipotent(&tau, &th).unwrap();
                    assert_eq!(solved.mat(), u.mat(), "n={n} members={members:?}");
                }
            }
        }
    }

    #[test]
    fn solve_unipotent_identity_on_opp() {
        let th = theta(3, &[1, 3]);
        let form = std_form(3);
        let opp = standard_opp_flag(&th, &form);
        let u = solve_unipotent(&opp, &th).unwrap();
        assert_eq!(u.mat(), &Mat::identity(6, Backend::Exact));
    }

    #[test]
    fn solve_unipotent_rejects_standard_flag() {
        let th = theta(2, &[1, 2]);
        let form = std_form(2);
        let tau = standard_flag(&th, &form);
        assert_eq!(
            solve_unipotent(&tau, &th).unwrap_err(),
            FlagError::NotAntipodal
        );
    }

    #[test]
    fn inversion_shear_dimension_one() {
        // u = [[1, t], [0, 1]] moves span(e2) to span(t e1 + e2); the
        // inversion sends it to span(-t e1 + e2)
        let th = theta(1, &[1]);
        let form = std_form(1);
        let t = 3i64;
        let u_mat = Mat::from_int_rows(&[&[1, t], &[0, 1]], Backend::Exact);
        let tau = standard_opp_flag(&th, &form).apply(&u_mat, &tol()).unwrap();
        let inv = inversion(&tau, &th).unwrap();
        let expected_basis = Mat::from_int_rows(&[&[-t], &[1]], Backend::Exact);
        let expected = Flag::isotropic(&th, expected_basis, &form, &tol()).unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn inversion_is_involution_and_preserves_double_transversality() {
        for n in 1..=3 {
            let members: Vec<usize> = (1..=n).collect();
            let th = theta(n, &members);
            let form = std_form(n);
            let opp = standard_opp_flag(&th, &form);
            let mut done = 0;
            let mut trial = 0u64;
            while done < 15 {
                let mut rng = rng::trial_rng(4000 + trial, trial);
                trial += 1;
                let u = random_unipotent(&th, &mut rng, Backend::Exact);
                let tau = u.moved_opp_flag(&tol());
                if !are_antipodal(&tau, &opp, &tol()).unwrap() {
                    continue;
                }
                done += 1;
                let iota = inversion(&tau, &th).unwrap();
                assert!(are_antipodal(&iota, &opp, &tol()).unwrap());
                let twice = inversion(&iota, &th).unwrap();
                assert_eq!(twice, tau, "n={n} trial={trial}");
            }
        }
    }

    #[test]
    fn projection_forgets_components() {
        let th = theta(3, &[1, 2, 3]);
        let sub = theta(3, &[2]);
        let form = std_form(3);
        let tau = standard_flag(&th, &form);
        let pi = project_flag(&tau, &sub).unwrap();
        assert_eq!(pi, standard_flag(&sub, &form));
        // projecting to Theta itself is the identity
        assert_eq!(project_flag(&tau, &th).unwrap(), tau);
        // non-subsets are rejected
        let bad = theta(3, &[1, 3]);
        let tau2 = standard_flag(&theta(3, &[2]), &form);
        assert_eq!(project_flag(&tau2, &bad).unwrap_err(), FlagError::NotSubset);
    }

    #[test]
    fn projection_preserves_antipodality() {
        let th = theta(3, &[1, 2, 3]);
        let sub = theta(3, &[1, 3]);
        for trial in 0..20u64 {
            let mut rng = rng::trial_rng(600 + trial, trial);
            let u = random_unipotent(&th, &mut rng, Backend::Exact);
            let v = random_unipotent(&th, &mut rng, Backend::Exact);
            let a = u.moved_opp_flag(&tol());
            let b = v.moved_opp_flag(&tol());
            if are_antipodal(&a, &b, &tol()).unwrap() {
                let pa = project_flag(&a, &sub).unwrap();
                let pb = project_flag(&b, &sub).unwrap();
                assert!(are_antipodal(&pa, &pb, &tol()).unwrap(), "trial={trial}");
            }
        }
    }

    #[test]
    fn sign_certificate_dimension_one() {
        // every doubly transverse u = [[1, t], [0, 1]] has p_1(u) = t and
        // p_1(u^{-1}) = -t
        let th = theta(1, &[1]);
        let cert = sign_certificate(&th, 25, 9).unwrap();
        assert!(cert.holds());
        assert!(cert.odd_flip_holds);
        for rec in &cert.records {
            let (k, s, si) = rec.signs[0];
            assert_eq!(k, 1);
            assert_eq!(si, -s);
        }
    }

    #[test]
    fn sign_certificate_even_and_mixed_theta() {
        let th = theta(2, &[2]);
        let cert = sign_certificate(&th, 25, 11).unwrap();
        assert!(cert.holds());
        for rec in &cert.records {
            let (_, s, si) = rec.signs[0];
            assert_eq!(si, s);
        }
        let mixed = theta(2, &[1, 2]);
        let cert = sign_certificate(&mixed, 25, 13).unwrap();
        assert!(cert.holds());
        for rec in &cert.records {
            for &(k, s, si) in &rec.signs {
                if k % 2 == 1 {
                    assert_eq!(si, -s);
                } else {
                    assert_eq!(si, s);
                }
            }
        }
    }

    #[test]
    fn float_flags_round_trip_antipodality() {
        let th = theta(2, &[1, 2]);
        let form = SymplecticForm::standard(2, Backend::Float);
        let tau = standard_flag(&th, &form);
        let opp = standard_opp_flag(&th, &form);
        assert!(are_antipodal(&tau, &opp, &tol()).unwrap());
        assert!(!are_antipodal(&tau, &tau, &tol()).unwrap());
    }

    #[test]
    fn exact_flag_with_radical_entries() {
        let th = theta(1, &[1]);
        let form = std_form(1);
        let s2 = Scalar::Exact(Ext::parse("sqrt(2)").unwrap());
        let basis = Mat::from_rows(vec![vec![s2], vec![Scalar::one(Backend::Exact)]]).unwrap();
        let f = Flag::isotropic(&th, basis, &form, &tol()).unwrap();
        let u = solve_unipotent(&f, &th).unwrap();
        assert_eq!(
            u.mat().at(0, 1),
            &Scalar::Exact(Ext::parse("sqrt(2)").unwrap())
        );
    }
}
