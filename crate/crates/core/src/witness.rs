//! Constructive witnesses of non-antipodality.
//!
//! For the `SL(2, C)` limit set: the top-right 2x2 block of
//! `g exp(alpha X + beta Y)` has coordinates `(f_I, f_R, f_T, f_P)` over
//! `(I, R, T, P)`, polynomials in `(alpha, beta)`, and its determinant is
//! `f_I^2 + f_R^2 - f_T^2 - f_P^2`. The engine finds a common real root of
//! `(f_T, f_P)` by resultant elimination, Sturm isolation, and Newton
//! polishing (jittering the constant terms within a budget when the system
//! degenerates — equivalently perturbing the corner block of `g`), then
//! walks a fixed ray and bisects the determinant to zero.
//!
//! For the `SU(n-1, 1)` limit set the witness is closed-form and exact:
//! choosing `alpha = w - u`, `beta = z - v` kills the `I` coefficient of
//! the product block, the `R` coefficient is affine in `gamma` with unit
//! slope, and setting it to `sqrt(c^2 + d^2)` (adjoined as a radical)
//! makes the determinant exactly zero.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::bivar::{resultant_eliminating_beta, resultant_int_for_isolation, BivarPoly};
use crate::block2::{basis_p, basis_t, Block2};
use crate::flags::{
    are_antipodal, is_sl_horocyclic, sl_tau_minus, standard_opp_flag, Flag, FlagError, ThetaSet,
};
use crate::fmath;
use crate::mat::{Mat, MatError};
use crate::rep::{su_horocyclic, su_horocyclic_prime, RepError, Sl2Triple, SuHoroParams};
use crate::rng;
use crate::scalar::{Backend, Scalar, ScalarError, Tolerance};
use crate::symplectic::{SymplecticError, SymplecticForm};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WitnessError {
    #[error("matrix is not in the pair-flag horocyclic group")]
    NotHorocyclic,
    #[error("the closed-form witness needs n >= 3")]
    TooSmallSu,
    #[error(
        "no common real root within {retries} retries (effective degree {degree}; \
         an even degree makes absence of real roots possible and needs review)"
    )]
    NoRealRoot { retries: usize, degree: usize },
    #[error("determinant bisection could not bracket a zero")]
    BisectionNotBracketed,
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

/// The `(I, R, T, P)` coefficient polynomials of the corner block
/// `Z_{1n}(alpha, beta)` of `g exp(alpha X + beta Y)`.
#[derive(Clone, Debug)]
pub struct CoefficientPolys {
    pub f_i: BivarPoly,
    pub f_r: BivarPoly,
    pub f_t: BivarPoly,
    pub f_p: BivarPoly,
}

impl CoefficientPolys {
    /// `f_I^2 + f_R^2 - f_T^2 - f_P^2`, the determinant of the block.
    pub fn det_poly(&self) -> BivarPoly {
        let sq = |p: &BivarPoly| p.mul(p);
        sq(&self.f_i)
            .add(&sq(&self.f_r))
            .sub(&sq(&self.f_t))
            .sub(&sq(&self.f_p))
    }
}

/// Total degree of `f_T` and `f_P`: `n - 1` for even `n`, `n - 2` for odd
/// `n` (always odd).
pub fn effective_degree(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n - 1
    } else {
        n - 2
    }
}

fn poly_mat_mul(a: &[Vec<BivarPoly>], b: &[Vec<BivarPoly>]) -> Vec<Vec<BivarPoly>> {
    let rows = a.len();
    let inner = b.len();
    let cols = b[0].len();
    let backend = a[0][0].backend();
    let mut out = vec![vec![BivarPoly::zero(backend); cols]; rows];
    for (i, arow) in a.iter().enumerate() {
        for k in 0..inner {
            if arow[k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&arow[k].mul(&b[k][j]));
            }
        }
    }
    out
}

/// Expands `g exp(alpha X + beta Y)` symbolically over the polynomial ring
/// in `(alpha, beta)` and decomposes the top-right 2x2 block.
pub fn extract_coefficient_polys(
    g: &Mat,
    triple: &Sl2Triple,
) -> Result<CoefficientPolys, WitnessError> {
    let n = triple.n();
    let dim = triple.dim();
    if !is_sl_horocyclic(n, g) {
        return Err(WitnessError::NotHorocyclic);
    }
    let backend = g.backend();
    let (x, y) = match backend {
        Backend::Exact => (triple.x().clone(), triple.y().clone()),
        Backend::Float => (triple.x().to_float_backend(), triple.y().to_float_backend()),
    };
    // N = alpha X + beta Y as a matrix of linear polynomials
    let nil: Vec<Vec<BivarPoly>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let mut p = BivarPoly::zero(backend);
                    p.add_term(1, 0, x.at(i, j).clone());
                    p.add_term(0, 1, y.at(i, j).clone());
                    p
                })
                .collect()
        })
        .collect();
    // exp(N) = sum N^k / k!, truncating when the power vanishes
    let mut exp: Vec<Vec<BivarPoly>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        BivarPoly::constant(Scalar::one(backend))
                    } else {
                        BivarPoly::zero(backend)
                    }
                })
                .collect()
        })
        .collect();
    let mut term = exp.clone();
    for k in 1..=dim {
        term = poly_mat_mul(&term, &nil);
        let factor = Scalar::ratio(1, k as i64, backend);
        for row in term.iter_mut() {
            for p in row.iter_mut() {
                *p = p.scale(&factor);
            }
        }
        if term.iter().all(|row| row.iter().all(|p| p.is_zero())) {
            break;
        }
        for i in 0..dim {
            for j in 0..dim {
                if !term[i][j].is_zero() {
                    exp[i][j] = exp[i][j].add(&term[i][j]);
                }
            }
        }
    }
    // top two rows of g times exp, at the last two columns
    let mut corner = vec![vec![BivarPoly::zero(backend); 2]; 2];
    for i in 0..2 {
        for (jj, j) in [dim - 2, dim - 1].into_iter().enumerate() {
            let mut acc = BivarPoly::zero(backend);
            for k in 0..dim {
                if g.at(i, k).is_zero() || exp[k][j].is_zero() {
                    continue;
                }
                acc = acc.add(&exp[k][j].scale(g.at(i, k)));
            }
            corner[i][jj] = acc;
        }
    }
    let half = Scalar::ratio(1, 2, backend);
    let (z00, z01) = (&corner[0][0], &corner[0][1]);
    let (z10, z11) = (&corner[1][0], &corner[1][1]);
    Ok(CoefficientPolys {
        f_i: z00.add(z11).scale(&half),
        f_r: z10.sub(z01).scale(&half),
        f_t: z00.sub(z11).scale(&half),
        f_p: z01.add(z10).scale(&half),
    })
}

/// Replaces irrational coefficients by their (lossless) rational `f64`
/// readings so the integer Sturm machinery applies; rational inputs pass
/// through unchanged.
fn rationalize_for_isolation(p: &BivarPoly) -> BivarPoly {
    let all_rational = p.backend() == Backend::Exact
        && p
            .terms()
            .all(|(_, c)| c.as_exact().map(|e| e.is_rational()).unwrap_or(false));
    if all_rational {
        p.clone()
    } else {
        p.to_exact_via_f64()
    }
}

/// Search diagnostics for a common-real-root run.
#[derive(Clone, Debug, Default)]
pub struct RootDiagnostics {
    pub retries: usize,
    pub resultant_degree: usize,
    pub isolation_intervals: usize,
    pub candidates_tried: usize,
    pub newton_iterations: usize,
    pub bisection_steps: usize,
}

/// A located common real root, with the constant-term jitter that was
/// applied (exactly representable dyadic values).
#[derive(Clone, Debug)]
pub struct RootSearch {
    pub alpha: f64,
    pub beta: f64,
    pub residual: f64,
    pub jitter_t: f64,
    pub jitter_p: f64,
    pub diagnostics: RootDiagnostics,
}

fn newton_polish(
    ft: &BivarPoly,
    fp: &BivarPoly,
    mut a: f64,
    mut b: f64,
    scale: f64,
) -> (f64, f64, f64, usize) {
    let ft_a = ft.partial_alpha();
    let ft_b = ft.partial_beta();
    let fp_a = fp.partial_alpha();
    let fp_b = fp.partial_beta();
    let mut iters = 0;
    let mut best = (a, b, f64::INFINITY);
    for _ in 0..60 {
        let f1 = ft.eval_f64(a, b);
        let f2 = fp.eval_f64(a, b);
        let r = fmath::max(fmath::abs(f1), fmath::abs(f2)) / scale;
        if r < best.2 {
            best = (a, b, r);
        }
        if r == 0.0 {
            break;
        }
        let j11 = ft_a.eval_f64(a, b);
        let j12 = ft_b.eval_f64(a, b);
        let j21 = fp_a.eval_f64(a, b);
        let j22 = fp_b.eval_f64(a, b);
        let det = j11 * j22 - j12 * j21;
        if fmath::abs(det) < 1e-280 {
            break;
        }
        let da = (f1 * j22 - f2 * j12) / det;
        let db = (f2 * j11 - f1 * j21) / det;
        a -= da;
        b -= db;
        iters += 1;
        if fmath::abs(da) < 1e-17 * (1.0 + fmath::abs(a))
            && fmath::abs(db) < 1e-17 * (1.0 + fmath::abs(b))
        {
            let f1 = ft.eval_f64(a, b);
            let f2 = fp.eval_f64(a, b);
            let r = fmath::max(fmath::abs(f1), fmath::abs(f2)) / scale;
            if r < best.2 {
                best = (a, b, r);
            }
            break;
        }
    }
    (best.0, best.1, best.2, iters)
}

fn coefficient_scale(p: &BivarPoly, q: &BivarPoly) -> f64 {
    let mut scale = 1.0f64;
    for (_, c) in p.terms().chain(q.terms()) {
        scale = fmath::max(scale, c.magnitude());
    }
    scale
}

/// Adds a dyadic constant to the constant term, in the polynomial's own
/// backend.
fn jitter_constant(p: &BivarPoly, delta: f64) -> BivarPoly {
    if delta == 0.0 {
        return p.clone();
    }
    let c = match p.backend() {
        Backend::Exact => Scalar::Exact(crate::scalar::Ext::from_rational(
            BigRational::from_float(delta).expect("finite jitter"),
        )),
        Backend::Float => Scalar::Float(delta),
    };
    let mut out = p.clone();
    out.add_term(0, 0, c);
    out
}

/// Finds a common real root of `(f_t, f_p)` within residual `1e-11` of the
/// coefficient scale.
///
/// Pipeline: Sylvester resultant eliminating beta, Sturm isolation of the
/// alpha projection with certified rational intervals, back-substitution,
/// and bivariate Newton polish. Degenerate resultants (identically zero or
/// degree collapse) trigger a dyadic jitter of the constant terms of size
/// at most `jitter_budget / 2`, retried up to 8 times.
pub fn common_real_root(
    f_t: &BivarPoly,
    f_p: &BivarPoly,
    jitter_budget: f64,
    seed: u64,
) -> Result<RootSearch, WitnessError> {
    let degree = f_t
        .total_degree()
        .max(f_p.total_degree())
        .unwrap_or(0) as usize;
    let scale = coefficient_scale(f_t, f_p);
    let mut diag = RootDiagnostics::default();
    for retry in 0..=8usize {
        diag.retries = retry;
        let (dt, dp) = if retry == 0 {
            (0.0, 0.0)
        } else {
            let mut r = rng::trial_rng(seed, retry as u64);
            let amp = jitter_budget / 2.0;
            // dyadic grid keeps the perturbation exactly representable
            let draw = |r: &mut rand_chacha::ChaCha8Rng| {
                let k: i64 = r.gen_range(-(1 << 20)..=(1 << 20));
                (k as f64) / (1u64 << 20) as f64 * amp
            };
            (draw(&mut r), draw(&mut r))
        };
        let ft_j = jitter_constant(f_t, dt);
        let fp_j = jitter_constant(f_p, dp);
        let ft_iso = rationalize_for_isolation(&ft_j);
        let fp_iso = rationalize_for_isolation(&fp_j);
        let res = resultant_int_for_isolation(&ft_iso, &fp_iso);
        let Some(res_deg) = res.degree() else {
            continue; // identically zero: shared component, jitter again
        };
        diag.resultant_degree = res_deg;
        if res_deg == 0 {
            continue; // no affine common root; jitter and retry
        }
        let alpha_roots = res.real_roots(48);
        diag.isolation_intervals = alpha_roots.len();
        let mut alpha_sorted: Vec<BigRational> = alpha_roots;
        alpha_sorted.sort_by(|a, b| {
            let fa = fmath::abs(a.to_f64().unwrap_or(f64::MAX));
            let fb = fmath::abs(b.to_f64().unwrap_or(f64::MAX));
            fa.partial_cmp(&fb).unwrap()
        });
        for alpha_iv in &alpha_sorted {
            // candidate betas from both polynomials specialized at alpha
            let mut beta_candidates: Vec<f64> = Vec::new();
            for poly in [&ft_iso, &fp_iso] {
                let uni = poly.fix_alpha_int_poly(alpha_iv);
                if uni.degree().unwrap_or(0) >= 1 {
                    for b in uni.real_roots(48) {
                        beta_candidates.push(b.to_f64().unwrap_or(f64::NAN));
                    }
                }
            }
            let a0 = alpha_iv.to_f64().unwrap_or(f64::NAN);
            for b0 in beta_candidates {
                if !b0.is_finite() {
                    continue;
                }
                diag.candidates_tried += 1;
                let (a, b, r, iters) = newton_polish(&ft_j, &fp_j, a0, b0, scale);
                diag.newton_iterations += iters;
                if r <= 1e-11 {
                    return Ok(RootSearch {
                        alpha: a,
                        beta: b,
                        residual: r,
                        jitter_t: dt,
                        jitter_p: dp,
                        diagnostics: diag,
                    });
                }
            }
        }
    }
    Err(WitnessError::NoRealRoot { retries: 8, degree })
}

/// Outcome classification of a witness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    WitnessFound,
    DegeneratePerturbedRetry,
    Failed,
}

/// Full record of one witness search, including the perturbation applied
/// and the method trace.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub input_label: String,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    /// `|det Z_1n|` at the witness parameters.
    pub residual: f64,
    /// Frobenius norm of the corner-block perturbation applied to `g`.
    pub perturbation_norm: f64,
    pub jitter_t: f64,
    pub jitter_p: f64,
    pub diagnostics: RootDiagnostics,
    /// Independent confirmation through the flag machinery: the witness
    /// flag pair is non-antipodal.
    pub flag_check_non_antipodal: bool,
    pub verdict: Verdict,
}

/// Finds `(g', alpha, beta)` with `g'` within `epsilon` of `g` (in the
/// horocyclic group) and `|det Z_1n(g', alpha, beta)| <= tol`.
pub fn sl2c_witness(
    g: &Mat,
    triple: &Sl2Triple,
    epsilon: f64,
    tol: f64,
    seed: u64,
) -> Result<WitnessReport, WitnessError> {
    let n = triple.n();
    let dim = triple.dim();
    if !is_sl_horocyclic(n, g) {
        return Err(WitnessError::NotHorocyclic);
    }
    let polys = extract_coefficient_polys(g, triple)?;
    let search = common_real_root(&polys.f_t, &polys.f_p, epsilon, seed)?;
    let ft_j = jitter_constant(&polys.f_t, search.jitter_t);
    let fp_j = jitter_constant(&polys.f_p, search.jitter_p);
    let det_at = |a: f64, b: f64| -> f64 {
        let fi = polys.f_i.eval_f64(a, b);
        let fr = polys.f_r.eval_f64(a, b);
        let ft = ft_j.eval_f64(a, b);
        let fp = fp_j.eval_f64(a, b);
        fi * fi + fr * fr - ft * ft - fp * fp
    };
    let mut diag = search.diagnostics.clone();
    let v0 = det_at(search.alpha, search.beta);
    let (alpha, beta, residual) = if fmath::abs(v0) <= tol {
        (search.alpha, search.beta, fmath::abs(v0))
    } else if v0 > 0.0 {
        // walk the fixed ray (1,1)/sqrt(2); the negative-definite leading
        // form dominates, so the determinant eventually turns negative
        let dir = core::f64::consts::FRAC_1_SQRT_2;
        let mut radius = 1.0f64;
        let mut hi = None;
        for _ in 0..60 {
            let a = search.alpha + radius * dir;
            let b = search.beta + radius * dir;
            if det_at(a, b) < 0.0 {
                hi = Some(radius);
                break;
            }
            radius *= 2.0;
        }
        let Some(mut hi) = hi else {
            return Err(WitnessError::BisectionNotBracketed);
        };
        let mut lo = 0.0f64;
        let mut out = None;
        for _ in 0..300 {
            diag.bisection_steps += 1;
            let mid = 0.5 * (lo + hi);
            let a = search.alpha + mid * dir;
            let b = search.beta + mid * dir;
            let v = det_at(a, b);
            if fmath::abs(v) <= tol {
                out = Some((a, b, fmath::abs(v)));
                break;
            }
            if v > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < f64::EPSILON * fmath::max(1.0, hi) {
                out = Some((a, b, fmath::abs(v)));
                break;
            }
        }
        match out {
            Some(t) => t,
            None => return Err(WitnessError::BisectionNotBracketed),
        }
    } else {
        // the polished root left the determinant visibly negative; the
        // root residual bound makes this unreachable
        return Err(WitnessError::Internal(format!(
            "determinant {v0:e} below -tol at a common root"
        )));
    };

    // realize the jitter as the perturbed group element
    let delta = &basis_t(g.backend()).scale(&backend_scalar(g.backend(), search.jitter_t))
        + &basis_p(g.backend()).scale(&backend_scalar(g.backend(), search.jitter_p));
    let mut g_prime = g.clone();
    for i in 0..2 {
        for j in 0..2 {
            g_prime.set(
                i,
                dim - 2 + j,
                g.at(i, dim - 2 + j) + delta.at(i, j),
            );
        }
    }
    let perturbation_norm = delta_frobenius(search.jitter_t, search.jitter_p);

    // independent confirmation through the flag machinery, in floats
    let flag_limit = crate::rep::limit_point(triple, &Scalar::Float(alpha), &Scalar::Float(beta))?;
    let g_prime_inv_float = invert_unitriangular(&g_prime)?.to_float_backend();
    let flag_moved = sl_tau_minus(n, Backend::Float).apply(&g_prime_inv_float, &Tolerance::default())?;
    let non_antipodal = !are_antipodal(&flag_limit, &flag_moved, &Tolerance::default())?;

    let verdict = if residual <= tol && perturbation_norm <= epsilon && non_antipodal {
        Verdict::WitnessFound
    } else {
        Verdict::Failed
    };
    Ok(WitnessReport {
        input_label: format!("horocyclic {}x{}", dim, dim),
        n,
        alpha,
        beta,
        residual,
        perturbation_norm,
        jitter_t: search.jitter_t,
        jitter_p: search.jitter_p,
        diagnostics: diag,
        flag_check_non_antipodal: non_antipodal,
        verdict,
    })
}

fn backend_scalar(backend: Backend, v: f64) -> Scalar {
    match backend {
        Backend::Exact => Scalar::Exact(crate::scalar::Ext::from_rational(
            BigRational::from_float(v).expect("finite value"),
        )),
        Backend::Float => Scalar::Float(v),
    }
}

fn delta_frobenius(dt: f64, dp: f64) -> f64 {
    fmath::sqrt(2.0 * (dt * dt + dp * dp))
}

/// Exact inverse of an upper unitriangular matrix by Neumann series.
fn invert_unitriangular(m: &Mat) -> Result<Mat, WitnessError> {
    let dim = m.rows();
    let id = Mat::identity(dim, m.backend());
    let nil = &(-m) + &id; // I - m, strictly upper
    let mut acc = id.clone();
    let mut term = id;
    for _ in 0..dim {
        term = &term * &nil;
        if term.is_zero() {
            return Ok(acc);
        }
        acc = &acc + &term;
    }
    if (m * &acc) == Mat::identity(dim, m.backend()) {
        Ok(acc)
    } else {
        Err(WitnessError::Internal("unitriangular inverse failed".into()))
    }
}

/// Exact closed-form witness for the hermitian-picture horocyclic group.
#[derive(Clone, Debug)]
pub struct SuWitness {
    pub n: usize,
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
    pub gamma: Scalar,
    pub corner: Block2,
    /// Determinant of the corner block; exactly zero in the exact backend.
    pub residual: Scalar,
    pub g_prime: Mat,
    pub product: Mat,
    /// The witness pair fails antipodality in the hermitian picture.
    pub flag_check_non_antipodal: bool,
    /// The same failure after changing coordinates to the standard form.
    pub standard_picture_agrees: bool,
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let backend = a.first().map(|s| s.backend()).unwrap_or(Backend::Exact);
    let mut acc = Scalar::zero(backend);
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

/// Closed-form witness: parameters `(alpha, beta, gamma)` of a `U'` element
/// `g'` such that `g g' . tau_-` is non-antipodal to `tau_-`, with exactly
/// zero determinant residual over the exact backend.
pub fn su_witness(params: &SuHoroParams, n: usize) -> Result<SuWitness, WitnessError> {
    if n < 3 {
        return Err(WitnessError::TooSmallSu);
    }
    let backend = params.backend();
    let g = su_horocyclic(n, params)?;
    // alpha = w - u and beta = z - v kill the I coefficient: the choice
    // w' = w, z' = z keeps every parameter in the base field
    let alpha: Vec<Scalar> = params
        .w
        .iter()
        .zip(&params.u)
        .map(|(w, u)| w - u)
        .collect();
    let beta: Vec<Scalar> = params
        .z
        .iter()
        .zip(&params.v)
        .map(|(z, v)| z - v)
        .collect();
    // T and P coefficients of the product block are gamma-independent
    let c_tilde = &(&params.c + &dot(&params.w, &alpha)) + &dot(&params.z, &beta);
    let d_tilde = &(&params.d - &dot(&params.w, &beta)) + &dot(&params.z, &alpha);
    let radius_sq = &(&c_tilde * &c_tilde) + &(&d_tilde * &d_tilde);
    let radius = radius_sq.try_sqrt()?;
    // R coefficient is b - u . beta + v . alpha + gamma: unit slope in gamma
    let r_offset = &(&params.b - &dot(&params.u, &beta)) + &dot(&params.v, &alpha);
    let gamma = &radius - &r_offset;
    let g_prime = su_horocyclic_prime(n, &alpha, &beta, &gamma)?;
    let product = &g * &g_prime;
    let dim = 2 * n;
    let corner_mat = product.submatrix(&[0, 1], &[dim - 2, dim - 1])?;
    let corner = Block2::decompose(&corner_mat);
    let residual = corner.det();

    // flag confirmation in the hermitian picture (Theta = {2})
    let theta2 = ThetaSet::new(n, vec![2])?;
    let form_h = SymplecticForm::hermitian(n, backend);
    let base = standard_opp_flag(&theta2, &form_h);
    let moved = base.apply(&product, &Tolerance::default())?;
    let flag_check_non_antipodal = !are_antipodal(&moved, &base, &Tolerance::default())?;

    // the same check after changing coordinates into the standard picture
    let f_t = crate::symplectic::form_change_map(n, backend).transpose();
    let form_std = SymplecticForm::standard(n, backend);
    let base_std = Flag::isotropic(
        &theta2,
        &f_t * &base.component(2),
        &form_std,
        &Tolerance::default(),
    )?;
    let moved_std = Flag::isotropic(
        &theta2,
        &f_t * &moved.component(2),
        &form_std,
        &Tolerance::default(),
    )?;
    let std_non_antipodal = !are_antipodal(&moved_std, &base_std, &Tolerance::default())?;

    Ok(SuWitness {
        n,
        alpha,
        beta,
        gamma,
        corner,
        residual,
        g_prime,
        product,
        flag_check_non_antipodal,
        standard_picture_agrees: std_non_antipodal == flag_check_non_antipodal
            && flag_check_non_antipodal,
    })
}

/// The non-maximality certificate: for the fixed pair-flag shear `g` with
/// corner `I` and any `U'` element `g'`, the block `(g^{-1} g')_{1n}`
/// equals `-(|alpha|^2 + |beta|^2 + 2)/2 I + gamma R`, whose determinant
/// is at least 1. A block-form mismatch is a construction bug and aborts.
pub fn non_maximality_check(
    alpha: &[Scalar],
    beta: &[Scalar],
    gamma: &Scalar,
    n: usize,
) -> Result<(Scalar, Block2), WitnessError> {
    if n < 3 {
        return Err(WitnessError::TooSmallSu);
    }
    let backend = gamma.backend();
    let mid = 2 * n - 4;
    let zeros = vec![Scalar::zero(backend); 2 * mid];
    let neg_identity_corner = vec![
        Scalar::int(-1, backend),
        Scalar::zero(backend),
        Scalar::zero(backend),
        Scalar::int(-1, backend),
    ];
    let g_inv = crate::flags::sl_horocyclic(n, &zeros, &neg_identity_corner, &zeros)?;
    let g_prime = su_horocyclic_prime(n, alpha, beta, gamma)?;
    let m = &g_inv * &g_prime;
    let dim = 2 * n;
    let corner = Block2::decompose(&m.submatrix(&[0, 1], &[dim - 2, dim - 1])?);
    let half = Scalar::ratio(-1, 2, backend);
    let expected_i = &(&(&dot(alpha, alpha) + &dot(beta, beta)) + &Scalar::int(2, backend)) * &half;
    let tol = Tolerance::default();
    assert!(
        corner.i_coef.approx_eq(&expected_i, &tol)
            && corner.r_coef.approx_eq(gamma, &tol)
            && corner.t_coef.is_zero()
            && corner.p_coef.is_zero(),
        "product block deviates from -(|a|^2+|b|^2+2)/2 I + gamma R"
    );
    Ok((corner.det(), corner))
}

/// Samples of `(alpha, beta, det Z_1n)` on a square grid, for external
/// plotting.
pub fn det_grid(
    polys: &CoefficientPolys,
    center: (f64, f64),
    radius: f64,
    steps: usize,
) -> Vec<(f64, f64, f64)> {
    let det = polys.det_poly();
    let mut out = Vec::with_capacity((steps + 1) * (steps + 1));
    for i in 0..=steps {
        for j in 0..=steps {
            let a = center.0 - radius + 2.0 * radius * i as f64 / steps as f64;
            let b = center.1 - radius + 2.0 * radius * j as f64 / steps as f64;
            out.push((a, b, det.eval_f64(a, b)));
        }
    }
    out
}

/// Exact degree of the resultant eliminating beta; the Bezout diagnostic
/// compares it to the square of the effective degree.
pub fn resultant_alpha_degree(f_t: &BivarPoly, f_p: &BivarPoly) -> Option<usize> {
    resultant_eliminating_beta(f_t, f_p).degree()
}
