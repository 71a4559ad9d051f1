//! Univariate and bivariate polynomials: exact Sturm-sequence real-root
//! isolation, Sylvester resultants via fraction-free Bareiss elimination
//! over the polynomial ring, and the float evaluation used by Newton
//! polishing.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{Backend, Ext, Scalar};

/// Entries of a ring in which Bareiss elimination runs: an integral domain
/// with exact division by previous pivots.
pub trait BareissEntry: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    /// Exact division; panics if the division leaves a remainder.
    fn divexact(&self, other: &Self) -> Self;
}

/// Fraction-free determinant over any [`BareissEntry`] ring.
pub fn bareiss_det<T: BareissEntry>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    if n == 0 {
        return T::one();
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.divexact(&prev);
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

/// Dense univariate polynomial with integer coefficients, ascending order,
/// no trailing zeros (empty = zero polynomial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    fn mul_poly(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    fn sub_poly(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            out.push(a - b);
        }
        IntPoly::new(out)
    }

    fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Content (gcd of coefficients), positive.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divides out the content; the zero polynomial stays zero.
    pub fn primitive(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of `self` by `other` with a positive multiplier:
    /// `sign-fixed lc(other)^(d+1) * self = q * other + r`.
    fn pseudo_rem(&self, other: &IntPoly) -> IntPoly {
        let d_self = self.degree().expect("nonzero dividend");
        let d_other = other.degree().expect("nonzero divisor");
        assert!(d_self >= d_other);
        let lc = other.leading().unwrap().clone();
        let mut mult = num_traits::pow::pow(lc.clone(), d_self - d_other + 1);
        if mult.is_negative() {
            mult = -mult;
            // odd power of a negative leading coefficient: fixing the sign
            // multiplies the remainder by -1, still a positive-scaled
            // remainder sequence member
        }
        let mut r = self.scale(&mult);
        while let (Some(dr), Some(db)) = (r.degree(), other.degree()) {
            if dr < db || r.is_zero() {
                break;
            }
            let shift = dr - db;
            let factor = r.leading().unwrap() / &lc;
            let mut sub = vec![BigInt::zero(); shift];
            sub.extend(other.coeffs.iter().map(|c| c * &factor));
            r = r.sub_poly(&IntPoly::new(sub));
            if r.degree() == Some(dr) {
                // division must strictly reduce the degree
                r.coeffs.truncate(dr);
                r = IntPoly::new(r.coeffs);
            }
        }
        r
    }

    /// Generalized Sturm chain: `p, p', -prem(...), ...`, primitive at
    /// every step.
    pub fn sturm_chain(&self) -> Vec<IntPoly> {
        let mut chain = Vec::new();
        let p0 = self.primitive();
        if p0.is_zero() {
            return chain;
        }
        chain.push(p0.clone());
        let p1 = p0.derivative().primitive();
        if p1.is_zero() {
            return chain;
        }
        chain.push(p1);
        loop {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            if b.degree().is_none() || a.degree() < b.degree() {
                break;
            }
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            let next = IntPoly::new(r.primitive().coeffs.iter().map(|c| -c).collect());
            chain.push(next);
            if chain.last().unwrap().degree() == Some(0) {
                break;
            }
        }
        chain
    }

    /// Cauchy root bound: every real root lies strictly inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> BigRational {
        let lc = self.leading().expect("nonzero polynomial").abs();
        let max = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        BigRational::one() + BigRational::new(max, lc)
    }

    /// All real roots, isolated by Sturm bisection and refined to `bits`
    /// fractional bits; returned ascending.
    pub fn real_roots(&self, bits: usize) -> Vec<BigRational> {
        let chain = self.sturm_chain();
        if chain.is_empty() || self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let bound = self.cauchy_bound();
        let lo = -bound.clone();
        let hi = bound;
        let v_lo = sign_variations(&chain, &lo);
        let v_hi = sign_variations(&chain, &hi);
        let mut isolated = Vec::new();
        isolate_rec(&chain, lo, hi, v_lo, v_hi, &mut isolated);
        isolated
            .into_iter()
            .map(|(mut a, mut b, mut va, mut vb)| {
                for _ in 0..bits + 4 {
                    let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
                    let vm = sign_variations(&chain, &mid);
                    if va - vm == 1 {
                        b = mid;
                        vb = vm;
                    } else {
                        a = mid;
                        va = vm;
                    }
                    let _ = vb;
                }
                (&a + &b) / BigRational::from_integer(BigInt::from(2))
            })
            .collect()
    }
}

/// Sign of `p(num/den)` by integer Horner: the sign of
/// `sum a_i num^i den^(d-i)` (den > 0).
fn sign_at_rational(p: &IntPoly, num: &BigInt, den: &BigInt) -> i8 {
    debug_assert!(den.is_positive());
    let Some(d) = p.degree() else { return 0 };
    // acc starts at the leading coefficient; each step multiplies by num
    // and adds the next coefficient times the growing power of den
    let mut acc = p.coeffs[d].clone();
    let mut den_pow = BigInt::one();
    for i in (0..d).rev() {
        den_pow *= den;
        acc = acc * num + &p.coeffs[i] * &den_pow;
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

/// Sign variations of the chain at `x`, zeros skipped; `V(a) - V(b)`
/// counts the distinct real roots in `(a, b]`.
fn sign_variations(chain: &[IntPoly], x: &BigRational) -> usize {
    let num = x.numer();
    let den = x.denom();
    let mut last = 0i8;
    let mut variations = 0usize;
    for p in chain {
        let s = sign_at_rational(p, num, den);
        if s != 0 {
            if last != 0 && s != last {
                variations += 1;
            }
            last = s;
        }
    }
    variations
}

fn isolate_rec(
    chain: &[IntPoly],
    a: BigRational,
    b: BigRational,
    va: usize,
    vb: usize,
    out: &mut Vec<(BigRational, BigRational, usize, usize)>,
) {
    let count = va.saturating_sub(vb);
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push((a, b, va, vb));
        return;
    }
    let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
    let vm = sign_variations(chain, &mid);
    isolate_rec(chain, a, mid.clone(), va, vm, out);
    isolate_rec(chain, mid, b, vm, vb, out);
}

impl BareissEntry for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_poly(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_poly(other)
    }
    fn divexact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let db = other.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(db)];
        let lc = other.leading().unwrap();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let (ql, rem) = r.leading().unwrap().div_rem(lc);
            assert!(rem.is_zero(), "inexact leading division in Bareiss step");
            let shift = dr - db;
            q[shift] = ql.clone();
            let mut sub = vec![BigInt::zero(); shift];
            sub.extend(other.coeffs.iter().map(|c| c * &ql));
            r = r.sub_poly(&IntPoly::new(sub));
        }
        assert!(r.is_zero(), "inexact polynomial division in Bareiss step");
        IntPoly::new(q)
    }
}

/// Dense univariate polynomial with exact multiquadratic coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtPoly {
    coeffs: Vec<Ext>,
}

impl ExtPoly {
    pub fn new(mut coeffs: Vec<Ext>) -> ExtPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExtPoly { coeffs }
    }

    pub fn zero() -> ExtPoly {
        ExtPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Ext] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl BareissEntry for ExtPoly {
    fn zero() -> Self {
        ExtPoly::zero()
    }
    fn one() -> Self {
        ExtPoly::new(vec![Ext::one()])
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn neg(&self) -> Self {
        ExtPoly::new(self.coeffs.iter().map(|c| c.neg_ref()).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ExtPoly::zero();
        }
        let mut out = vec![Ext::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        ExtPoly::new(out)
    }
    fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Ext::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(Ext::zero);
            out.push(a.sub_ref(&b));
        }
        ExtPoly::new(out)
    }
    fn divexact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return ExtPoly::zero();
        }
        let db = other.degree().expect("division by zero polynomial");
        let lc_inv = other.coeffs.last().unwrap().inv().expect("nonzero leading");
        let mut r = self.clone();
        let mut q = vec![Ext::zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let ql = r.coeffs.last().unwrap().mul_ref(&lc_inv);
            let shift = dr - db;
            let mut sub = vec![Ext::zero(); shift];
            sub.extend(other.coeffs.iter().map(|c| c.mul_ref(&ql)));
            q[shift] = ql;
            r = r.sub(&ExtPoly::new(sub));
        }
        assert!(r.is_zero(), "inexact polynomial division in Bareiss step");
        ExtPoly::new(q)
    }
}

/// A real polynomial in two variables `(alpha, beta)`, coefficients in one
/// backend, keyed by `(deg_alpha, deg_beta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivarPoly {
    backend: Backend,
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl BivarPoly {
    pub fn zero(backend: Backend) -> BivarPoly {
        BivarPoly {
            backend,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> BivarPoly {
        let mut p = BivarPoly::zero(c.backend());
        p.add_term(0, 0, c);
        p
    }

    /// The monomial `alpha` (resp. `beta` via `beta_var`).
    pub fn alpha_var(backend: Backend) -> BivarPoly {
        let mut p = BivarPoly::zero(backend);
        p.add_term(1, 0, Scalar::one(backend));
        p
    }

    pub fn beta_var(backend: Backend) -> BivarPoly {
        let mut p = BivarPoly::zero(backend);
        p.add_term(0, 1, Scalar::one(backend));
        p
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, da: u32, db: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        assert!(c.backend() == self.backend, "backend mismatch in polynomial");
        match self.terms.entry((da, db)) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, da: u32, db: u32) -> Scalar {
        self.terms
            .get(&(da, db))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.backend))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(da, db), c) in &other.terms {
            out.add_term(da, db, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(da, db), c) in &other.terms {
            out.add_term(da, db, -c);
        }
        out
    }

    pub fn neg(&self) -> BivarPoly {
        BivarPoly {
            backend: self.backend,
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero(self.backend);
        for (&(da, db), c) in &self.terms {
            for (&(ea, eb), d) in &other.terms {
                out.add_term(da + ea, db + eb, c * d);
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> BivarPoly {
        let mut out = BivarPoly::zero(self.backend);
        for (&(da, db), c) in &self.terms {
            out.add_term(da, db, c * s);
        }
        out
    }

    pub fn eval(&self, alpha: &Scalar, beta: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.backend);
        for (&(da, db), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..da {
                term = &term * alpha;
            }
            for _ in 0..db {
                term = &term * beta;
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn eval_f64(&self, alpha: f64, beta: f64) -> f64 {
        let mut acc = 0.0;
        for (&(da, db), c) in &self.terms {
            acc += c.to_f64() * crate::fmath::powi(alpha, da) * crate::fmath::powi(beta, db);
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn degree_alpha(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn degree_beta(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    /// Terms of maximal total degree.
    pub fn leading_form(&self) -> BivarPoly {
        let Some(d) = self.total_degree() else {
            return BivarPoly::zero(self.backend);
        };
        BivarPoly {
            backend: self.backend,
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b), _)| a + b == d)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    pub fn partial_alpha(&self) -> BivarPoly {
        let mut out = BivarPoly::zero(self.backend);
        for (&(da, db), c) in &self.terms {
            if da > 0 {
                out.add_term(da - 1, db, c * &Scalar::int(da as i64, self.backend));
            }
        }
        out
    }

    pub fn partial_beta(&self) -> BivarPoly {
        let mut out = BivarPoly::zero(self.backend);
        for (&(da, db), c) in &self.terms {
            if db > 0 {
                out.add_term(da, db - 1, c * &Scalar::int(db as i64, self.backend));
            }
        }
        out
    }

    /// Coefficients of powers of beta, each an exact polynomial in alpha.
    /// Exact backend only.
    pub fn beta_coefficients_exact(&self) -> Vec<ExtPoly> {
        assert!(self.backend == Backend::Exact);
        let db = self.degree_beta().map(|d| d as usize + 1).unwrap_or(0);
        let da = self.degree_alpha().map(|d| d as usize + 1).unwrap_or(0);
        let mut out = vec![vec![Ext::zero(); da]; db];
        for (&(a, b), c) in &self.terms {
            out[b as usize][a as usize] = c.as_exact().expect("exact backend").clone();
        }
        out.into_iter().map(ExtPoly::new).collect()
    }

    /// Exact mirror with every coefficient replaced by its (lossless)
    /// rational reading of the f64 value; used to run the certified
    /// isolation machinery on float data.
    pub fn to_exact_via_f64(&self) -> BivarPoly {
        let mut out = BivarPoly::zero(Backend::Exact);
        for (&(da, db), c) in &self.terms {
            let q = BigRational::from_float(c.to_f64()).expect("finite coefficient");
            out.add_term(da, db, Scalar::Exact(Ext::from_rational(q)));
        }
        out
    }

    /// Substitutes a fixed alpha, producing the integer-cleared univariate
    /// polynomial in beta (exact rational coefficients required).
    pub fn fix_alpha_int_poly(&self, alpha: &BigRational) -> IntPoly {
        assert!(self.backend == Backend::Exact);
        let db = self.degree_beta().map(|d| d as usize + 1).unwrap_or(0);
        let mut coeffs = vec![BigRational::zero(); db];
        for (&(a, b), c) in &self.terms {
            let q = c
                .as_exact()
                .and_then(|e| e.as_rational())
                .expect("rational coefficients");
            let mut pow = BigRational::one();
            for _ in 0..a {
                pow *= alpha;
            }
            coeffs[b as usize] += q * pow;
        }
        rational_coeffs_to_int_poly(&coeffs)
    }
}

/// Clears denominators of a rational coefficient vector.
pub fn rational_coeffs_to_int_poly(coeffs: &[BigRational]) -> IntPoly {
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    IntPoly::new(
        coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect(),
    )
}

/// Sylvester resultant of two bivariate polynomials eliminating beta,
/// taken over the exact coefficient ring (radicals permitted). The result
/// is a univariate polynomial in alpha.
pub fn resultant_eliminating_beta(p: &BivarPoly, q: &BivarPoly) -> ExtPoly {
    assert!(p.backend() == Backend::Exact && q.backend() == Backend::Exact);
    let pc = p.beta_coefficients_exact();
    let qc = q.beta_coefficients_exact();
    let m = pc.len().saturating_sub(1);
    let l = qc.len().saturating_sub(1);
    if pc.is_empty() || qc.is_empty() {
        return ExtPoly::zero();
    }
    if m == 0 && l == 0 {
        return ExtPoly::new(vec![Ext::one()]);
    }
    if m == 0 {
        let mut acc = ExtPoly::new(vec![Ext::one()]);
        for _ in 0..l {
            acc = acc.mul(&pc[0]);
        }
        return acc;
    }
    if l == 0 {
        let mut acc = ExtPoly::new(vec![Ext::one()]);
        for _ in 0..m {
            acc = acc.mul(&qc[0]);
        }
        return acc;
    }
    let size = m + l;
    let mut grid = vec![vec![ExtPoly::zero(); size]; size];
    for row in 0..l {
        for (i, c) in pc.iter().enumerate() {
            // descending beta powers across the row
            grid[row][row + (m - i)] = c.clone();
        }
    }
    for row in 0..m {
        for (i, c) in qc.iter().enumerate() {
            grid[l + row][row + (l - i)] = c.clone();
        }
    }
    bareiss_det(grid)
}

/// The same resultant with integer-cleared coefficients, for fast Sturm
/// isolation; scaling each input by a positive constant multiplies the
/// resultant by a positive constant, leaving roots and degree unchanged.
pub fn resultant_int_for_isolation(p: &BivarPoly, q: &BivarPoly) -> IntPoly {
    let clear = |poly: &BivarPoly| -> BTreeMap<(u32, u32), BigInt> {
        let mut lcm = BigInt::one();
        for (_, c) in poly.terms() {
            let q = c
                .as_exact()
                .and_then(|e| e.as_rational())
                .expect("rational coefficients");
            lcm = lcm.lcm(q.denom());
        }
        poly.terms()
            .map(|(&k, c)| {
                let q = c.as_exact().and_then(|e| e.as_rational()).unwrap();
                (k, q.numer() * (&lcm / q.denom()))
            })
            .collect()
    };
    let pm = clear(p);
    let qm = clear(q);
    let beta_deg = |m: &BTreeMap<(u32, u32), BigInt>| {
        m.keys().map(|&(_, b)| b as usize).max().unwrap_or(0)
    };
    let to_rows = |m: &BTreeMap<(u32, u32), BigInt>| -> Vec<IntPoly> {
        let db = beta_deg(m) + 1;
        let da = m.keys().map(|&(a, _)| a as usize).max().unwrap_or(0) + 1;
        let mut out = vec![vec![BigInt::zero(); da]; db];
        for (&(a, b), c) in m {
            out[b as usize][a as usize] = c.clone();
        }
        out.into_iter().map(IntPoly::new).collect()
    };
    if pm.is_empty() || qm.is_empty() {
        return IntPoly::zero();
    }
    let pc = to_rows(&pm);
    let qc = to_rows(&qm);
    let m = pc.len() - 1;
    let l = qc.len() - 1;
    if m == 0 && l == 0 {
        return IntPoly::constant(BigInt::one());
    }
    if m == 0 {
        let mut acc = IntPoly::constant(BigInt::one());
        for _ in 0..l {
            acc = acc.mul_poly(&pc[0]);
        }
        return acc;
    }
    if l == 0 {
        let mut acc = IntPoly::constant(BigInt::one());
        for _ in 0..m {
            acc = acc.mul_poly(&qc[0]);
        }
        return acc;
    }
    let size = m + l;
    let mut grid = vec![vec![IntPoly::zero(); size]; size];
    for row in 0..l {
        for (i, c) in pc.iter().enumerate() {
            grid[row][row + (m - i)] = c.clone();
        }
    }
    for row in 0..m {
        for (i, c) in qc.iter().enumerate() {
            grid[l + row][row + (l - i)] = c.clone();
        }
    }
    bareiss_det(grid)
}
