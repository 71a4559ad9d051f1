//! Field elements in one of two backends.
//!
//! The exact backend stores a rational linear combination of `1` and
//! `sqrt(d)` for finitely many squarefree positive integers `d`, i.e. an
//! element of the multiquadratic extension `Q(sqrt(d_1), ..., sqrt(d_m))`.
//! Because radicals with distinct squarefree radicands are linearly
//! independent over `Q`, the representation is canonical: equality is
//! coefficient equality and the sign of a nonzero element can always be
//! decided by refining rational enclosures of the radicals.
//!
//! The float backend is a plain `f64`; equality is comparison within a
//! caller-supplied [`Tolerance`].

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fmath;

/// Which arithmetic backend a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
}

/// Comparison tolerances for the float backend.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Tolerance { rel, abs }
    }

    /// `|a - b| <= max(abs, rel * max(|a|, |b|))`.
    pub fn close(&self, a: f64, b: f64) -> bool {
        let diff = fmath::abs(a - b);
        diff <= fmath::max(self.abs, self.rel * fmath::max(fmath::abs(a), fmath::abs(b)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("square root of a negative value")]
    NegativeRadicand,
    #[error("radicand {0} is too large to factor into a squarefree part")]
    RadicandTooLarge(String),
    #[error("exact square root of an irrational value is not representable")]
    NonRationalSqrt,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse exact scalar: {0}")]
    Parse(String),
}

/// Largest prime tried when extracting squarefree parts.
const TRIAL_LIMIT: u64 = 1 << 20;
/// Hard cap on radical enclosure precision, in bits. A nonzero element's
/// sign is always decided long before this; hitting the cap means a bug.
const MAX_SIGN_BITS: usize = 1 << 14;

/// Splits `v` as `s^2 * d` with `d` squarefree; returns `(s, d)`.
fn squarefree_decompose(v: &BigUint) -> Result<(BigUint, u64), ScalarError> {
    let mut rest = v.clone();
    let mut square = BigUint::one();
    let mut free: u64 = 1;
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut count = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if r.is_zero() {
                rest = q;
                count += 1;
            } else {
                break;
            }
        }
        if count > 0 {
            square *= bp.pow(count / 2);
            if count % 2 == 1 {
                free = free
                    .checked_mul(p)
                    .ok_or_else(|| ScalarError::RadicandTooLarge(v.to_string()))?;
            }
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if !rest.is_one() {
        // All prime factors of `rest` exceed TRIAL_LIMIT, so `rest` is
        // either prime, a prime square, or a product of two primes.
        let s = rest.sqrt();
        if &s * &s == rest {
            square *= s;
        } else if let Some(r64) = rest.to_u64() {
            if r64 < TRIAL_LIMIT * TRIAL_LIMIT {
                // Both hypothetical factors exceed the trial bound, so a
                // value below the bound squared must be a single prime.
                free = free
                    .checked_mul(r64)
                    .ok_or_else(|| ScalarError::RadicandTooLarge(v.to_string()))?;
            } else {
                return Err(ScalarError::RadicandTooLarge(v.to_string()));
            }
        } else {
            return Err(ScalarError::RadicandTooLarge(v.to_string()));
        }
    }
    Ok((square, free))
}

/// An element of a multiquadratic extension of `Q`.
///
/// Terms are keyed by their squarefree radicand; the key `1` holds the
/// rational part. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Ext {
    terms: BTreeMap<u64, BigRational>,
}

impl Ext {
    pub fn zero() -> Self {
        Ext {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Ext::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Ext::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Ext::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        Ext { terms }
    }

    /// `coef * sqrt(radicand)`; the radicand is reduced to squarefree form.
    pub fn radical(coef: BigRational, radicand: u64) -> Result<Self, ScalarError> {
        if coef.is_zero() || radicand == 0 {
            return Ok(Ext::zero());
        }
        let (s, d) = squarefree_decompose(&BigUint::from(radicand))?;
        let mut terms = BTreeMap::new();
        terms.insert(d, coef * BigRational::from_integer(BigInt::from(s)));
        Ok(Ext { terms })
    }

    /// The exact square root of a nonnegative rational value.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self, ScalarError> {
        if q.is_negative() {
            return Err(ScalarError::NegativeRadicand);
        }
        if q.is_zero() {
            return Ok(Ext::zero());
        }
        // sqrt(p/q) = sqrt(p*q) / q
        let num = q.numer().magnitude().clone();
        let den = q.denom().magnitude().clone();
        let (s, d) = squarefree_decompose(&(&num * &den))?;
        let coef = BigRational::new(BigInt::from(s), BigInt::from(den));
        let mut terms = BTreeMap::new();
        if d == 1 {
            if !coef.is_zero() {
                terms.insert(1, coef);
            }
        } else {
            terms.insert(d, coef);
        }
        Ok(Ext { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational part and radical terms, if purely rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(q) = self.terms.get(&1) {
                return Some(q.clone());
            }
        }
        None
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Radicands (other than 1) appearing with nonzero coefficient.
    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied().filter(|&d| d != 1)
    }

    fn insert_term(terms: &mut BTreeMap<u64, BigRational>, rad: u64, coef: BigRational) {
        if coef.is_zero() {
            return;
        }
        match terms.entry(rad) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coef;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_ref(&self, other: &Ext) -> Ext {
        let mut terms = self.terms.clone();
        for (rad, coef) in &other.terms {
            Self::insert_term(&mut terms, *rad, coef.clone());
        }
        Ext { terms }
    }

    pub fn neg_ref(&self) -> Ext {
        Ext {
            terms: self
                .terms
                .iter()
                .map(|(rad, coef)| (*rad, -coef.clone()))
                .collect(),
        }
    }

    pub fn sub_ref(&self, other: &Ext) -> Ext {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Ext) -> Ext {
        let mut terms = BTreeMap::new();
        for (ra, ca) in &self.terms {
            for (rb, cb) in &other.terms {
                // sqrt(a) * sqrt(b) = g * sqrt((a/g)(b/g)), g = gcd(a, b);
                // a/g and b/g are coprime squarefree, so their product is
                // squarefree.
                let g = ra.gcd(rb);
                let rad = (ra / g)
                    .checked_mul(rb / g)
                    .expect("radicand overflow in multiplication");
                let coef = ca * cb * BigRational::from_integer(BigInt::from(g));
                Self::insert_term(&mut terms, rad, coef);
            }
        }
        Ext { terms }
    }

    /// Multiplicative inverse; `None` for zero.
    ///
    /// Rationalizes one prime at a time: writing `x = a + sqrt(p) b` where
    /// `p` divides some radicand, `x * (a - sqrt(p) b)` lies in the subfield
    /// with `p` eliminated, and the automorphism `sqrt(p) -> -sqrt(p)` sends
    /// nonzero elements to nonzero elements.
    pub fn inv(&self) -> Option<Ext> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Ext::from_rational(q.recip()));
        }
        let p = self
            .radicands()
            .map(smallest_prime_factor)
            .min()
            .expect("non-rational element has a radicand");
        let conj = Ext {
            terms: self
                .terms
                .iter()
                .map(|(rad, coef)| {
                    if rad % p == 0 {
                        (*rad, -coef.clone())
                    } else {
                        (*rad, coef.clone())
                    }
                })
                .collect(),
        };
        let norm = self.mul_ref(&conj);
        debug_assert!(norm.radicands().all(|d| d % p != 0));
        Some(conj.mul_ref(&norm.inv().expect("norm of a nonzero element is nonzero")))
    }

    /// Exact sign: -1, 0, or +1.
    pub fn signum(&self) -> i32 {
        if self.terms.is_empty() {
            return 0;
        }
        if self.terms.len() == 1 {
            let (_, coef) = self.terms.iter().next().unwrap();
            return if coef.is_positive() { 1 } else { -1 };
        }
        let mut bits = 8usize;
        while bits <= MAX_SIGN_BITS {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
        unreachable!("sign refinement failed: radicals are linearly independent over Q");
    }

    /// A rational enclosure `[lo, hi]` of the value, with each radical
    /// bounded to `bits` fractional bits.
    fn enclosure(&self, bits: usize) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        let denom = BigInt::one() << bits;
        for (rad, coef) in &self.terms {
            if *rad == 1 {
                lo += coef;
                hi += coef;
                continue;
            }
            let scaled = BigUint::from(*rad) << (2 * bits);
            let root = scaled.sqrt(); // floor(sqrt(rad) * 2^bits)
            let r_lo = BigRational::new(BigInt::from(root.clone()), denom.clone());
            let r_hi = BigRational::new(BigInt::from(root + BigUint::one()), denom.clone());
            if coef.is_positive() {
                lo += coef * &r_lo;
                hi += coef * &r_hi;
            } else {
                lo += coef * &r_hi;
                hi += coef * &r_lo;
            }
        }
        (lo, hi)
    }

    pub fn cmp_value(&self, other: &Ext) -> Ordering {
        match self.sub_ref(other).signum() {
            x if x < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn abs(&self) -> Ext {
        if self.signum() < 0 {
            self.neg_ref()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0;
        for (rad, coef) in &self.terms {
            let c = coef.to_f64().unwrap_or(f64::NAN);
            if *rad == 1 {
                acc += c;
            } else {
                acc += c * fmath::sqrt(*rad as f64);
            }
        }
        acc
    }

    /// Parses the grammar `q0 +- q1*sqrt(d1) +- ...` with each `q` a
    /// decimal-free integer or fraction `p/q`.
    pub fn parse(input: &str) -> Result<Ext, ScalarError> {
        let s = input.trim();
        if s.is_empty() {
            return Err(ScalarError::Parse("empty string".into()));
        }
        if s.contains('.') {
            return Err(ScalarError::Parse("decimal points are not allowed".into()));
        }
        let mut acc = Ext::zero();
        let mut term = String::new();
        let mut terms: Vec<String> = Vec::new();
        let mut depth = 0usize;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => {
                    depth += 1;
                    term.push(ch);
                }
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| ScalarError::Parse("unbalanced parentheses".into()))?;
                    term.push(ch);
                }
                '+' | '-' if depth == 0 && i > 0 && !term.trim().is_empty() => {
                    terms.push(core::mem::take(&mut term));
                    if ch == '-' {
                        term.push('-');
                    }
                }
                _ => term.push(ch),
            }
        }
        if depth != 0 {
            return Err(ScalarError::Parse("unbalanced parentheses".into()));
        }
        terms.push(term);
        for t in terms {
            acc = acc.add_ref(&parse_term(&t)?);
        }
        Ok(acc)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ScalarError::Parse(alloc::format!("bad integer `{num}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| ScalarError::Parse(alloc::format!("bad integer `{den}`")))?;
    if d.is_zero() {
        return Err(ScalarError::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

fn parse_term(t: &str) -> Result<Ext, ScalarError> {
    let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let t = compact.as_str();
    let (coef_str, rad_str) = match t.find("sqrt(") {
        Some(pos) => {
            let inner = &t[pos + 5..];
            let close = inner
                .find(')')
                .ok_or_else(|| ScalarError::Parse("missing `)` after sqrt".into()))?;
            if !inner[close + 1..].trim().is_empty() {
                return Err(ScalarError::Parse("trailing input after sqrt(...)".into()));
            }
            let mut head = t[..pos].trim();
            head = head.strip_suffix('*').map(str::trim).unwrap_or(head);
            (head, Some(inner[..close].trim()))
        }
        None => (t, None),
    };
    let coef = match coef_str {
        "" => BigRational::one(),
        "-" => -BigRational::one(),
        other => parse_rational(other)?,
    };
    match rad_str {
        None => Ok(Ext::from_rational(coef)),
        Some(r) => {
            let d: u64 = r
                .parse()
                .map_err(|_| ScalarError::Parse(alloc::format!("bad radicand `{r}`")))?;
            if d == 0 {
                return Err(ScalarError::Parse("radicand must be positive".into()));
            }
            Ext::radical(coef, d)
        }
    }
}

fn smallest_prime_factor(v: u64) -> u64 {
    if v.is_multiple_of(2) {
        return 2;
    }
    let mut p = 3;
    while p * p <= v {
        if v.is_multiple_of(p) {
            return p;
        }
        p += 2;
    }
    v
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (rad, coef) in &self.terms {
            let neg = coef.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coef.abs();
            if *rad == 1 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "sqrt({rad})")?;
            } else {
                write!(f, "{mag}*sqrt({rad})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ext({self})")
    }
}

impl core::str::FromStr for Ext {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ext::parse(s)
    }
}

/// A field element, exact or floating-point.
///
/// Arithmetic between mismatched backends is a programming error and
/// panics; fallible public operations return `Result` instead.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Exact(Ext),
    Float(f64),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn zero(backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(Ext::zero()),
            Backend::Float => Scalar::Float(0.0),
        }
    }

    pub fn one(backend: Backend) -> Self {
        Scalar::int(1, backend)
    }

    pub fn int(v: i64, backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(Ext::from_int(v)),
            Backend::Float => Scalar::Float(v as f64),
        }
    }

    pub fn ratio(num: i64, den: i64, backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(Ext::from_ratio(num, den)),
            Backend::Float => Scalar::Float(num as f64 / den as f64),
        }
    }

    pub fn from_rational(q: BigRational, backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(Ext::from_rational(q)),
            Backend::Float => Scalar::Float(q.to_f64().unwrap_or(f64::NAN)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(e) => e.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    /// Exact sign for the exact backend; the float backend reports the sign
    /// of the stored double.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Exact(e) => e.signum(),
            Scalar::Float(x) => {
                if *x > 0.0 {
                    1
                } else if *x < 0.0 {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(e) => e.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    pub fn magnitude(&self) -> f64 {
        fmath::abs(self.to_f64())
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(e) => Scalar::Exact(e.abs()),
            Scalar::Float(x) => Scalar::Float(fmath::abs(*x)),
        }
    }

    pub fn recip(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Exact(e) => e
                .inv()
                .map(Scalar::Exact)
                .ok_or(ScalarError::DivisionByZero),
            Scalar::Float(x) => {
                if *x == 0.0 {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Float(1.0 / x))
                }
            }
        }
    }

    /// Square root. Exact backend: the value must be rational and
    /// nonnegative (its root is adjoined as a radical term).
    pub fn try_sqrt(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Exact(e) => {
                let q = e.as_rational().ok_or(ScalarError::NonRationalSqrt)?;
                Ok(Scalar::Exact(Ext::sqrt_rational(&q)?))
            }
            Scalar::Float(x) => {
                if *x < 0.0 {
                    Err(ScalarError::NegativeRadicand)
                } else {
                    Ok(Scalar::Float(fmath::sqrt(*x)))
                }
            }
        }
    }

    /// Equality up to `tol` for floats, exact equality otherwise.
    pub fn approx_eq(&self, other: &Scalar, tol: &Tolerance) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => tol.close(*a, *b),
            _ => false,
        }
    }

    pub fn as_exact(&self) -> Option<&Ext> {
        match self {
            Scalar::Exact(e) => Some(e),
            _ => None,
        }
    }

    /// Rounds an exact value into the float backend; identity on floats.
    pub fn to_float_backend(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    fn assert_same_backend(&self, other: &Scalar, op: &str) {
        assert!(
            self.backend() == other.backend(),
            "backend mismatch in scalar {op}"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(e) => write!(f, "{e}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(e) => write!(f, "{e:?}"),
            Scalar::Float(x) => write!(f, "Float({x})"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $ext:ident, $float:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.assert_same_backend(rhs, stringify!($method));
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.$ext(b)),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a $float b),
                    _ => unreachable!(),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, add_ref, +);
scalar_binop!(Sub, sub, sub_ref, -);
scalar_binop!(Mul, mul, mul_ref, *);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.assert_same_backend(rhs, "div");
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                Scalar::Exact(a.mul_ref(&b.inv().expect("exact division by zero")))
            }
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            _ => unreachable!(),
        }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(e) => Scalar::Exact(e.neg_ref()),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(&self)
    }
}
