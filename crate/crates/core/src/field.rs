//! Exact arithmetic in `F_(q^(2m))`, the coefficient fields of the curve and
//! its extensions.
//!
//! A field is described by a [`FieldSpec`]: the characteristic `p`, the
//! extension degree over the prime field, and an explicit monic irreducible
//! modulus. Elements are coefficient vectors reduced mod `p`. The modulus is
//! always the irreducible monic polynomial of the right degree with the
//! smallest index, where the index of a polynomial reads its coefficient
//! vector as base-`p` digits from the constant term upward. That makes every
//! construction reproducible: the same `(q, m)` yields bit-identical tables
//! on every run.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::arith::prime_power_decompose;
use crate::error::{Error, Result};

/// Largest field cardinality constructed without an explicit override.
pub const DEFAULT_FIELD_GUARD: u64 = 1 << 24;

/// Immutable description of a concrete finite field `F_(q^(2m))`.
///
/// `q` is the distinguished subfield size: the curve `y^q + y = x^(q+1)` is
/// defined over `F_(q^2)`, and extension point counts live in `F_(q^(2m))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    degree: usize,
    modulus: Vec<u64>,
    cardinality: u64,
    q: u64,
    m: usize,
}

/// Shared handle to a field; cloning is cheap and elements keep their field
/// alive through this handle.
pub type Field = Arc<FieldSpec>;

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree over the prime field `F_p`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic modulus, coefficients from the constant term upward; the last
    /// entry is always 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    /// The distinguished subfield size `q`.
    pub fn subfield_q(&self) -> u64 {
        self.q
    }

    /// The extension index `m` in `q^(2m)`.
    pub fn extension_m(&self) -> usize {
        self.m
    }
}

/// Build `F_(q^(2m))` with the default size guard.
pub fn make_field(q: u64, m: usize) -> Result<Field> {
    make_field_with_guard(q, m, DEFAULT_FIELD_GUARD)
}

/// Build `F_(q^(2m))`, refusing cardinalities above `max_cardinality`.
pub fn make_field_with_guard(q: u64, m: usize, max_cardinality: u64) -> Result<Field> {
    let (p, e) = prime_power_decompose(q).ok_or(Error::NotPrimePower(q))?;
    if m == 0 {
        return Err(Error::Range("extension index m must be at least 1".into()));
    }
    let degree = 2usize
        .checked_mul(e as usize)
        .and_then(|d| d.checked_mul(m))
        .ok_or_else(|| Error::Range("extension degree overflows".into()))?;
    let mut cardinality: u128 = 1;
    for _ in 0..degree {
        cardinality *= p as u128;
        if cardinality > max_cardinality as u128 {
            return Err(Error::SizeGuard(format!(
                "field cardinality {}^{} exceeds guard {}",
                q,
                2 * m,
                max_cardinality
            )));
        }
    }
    let modulus = find_modulus(p, degree);
    Ok(Arc::new(FieldSpec {
        p,
        degree,
        modulus,
        cardinality: cardinality as u64,
        q,
        m,
    }))
}

/// An element of a [`Field`], stored as its coefficient vector.
#[derive(Debug, Clone)]
pub struct FieldElement {
    spec: Field,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn zero(field: &Field) -> Self {
        FieldElement {
            spec: field.clone(),
            coeffs: vec![0; field.degree],
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_index(field, 1)
    }

    /// The residue class of the polynomial variable; a generator of the
    /// extension as an algebra over `F_p`.
    pub fn generator(field: &Field) -> Self {
        Self::from_index(field, field.p)
    }

    /// Element with the given coefficients (constant term first). Shorter
    /// vectors are zero-padded; entries are reduced mod `p`.
    pub fn from_coeffs(field: &Field, coeffs: &[u64]) -> Result<Self> {
        if coeffs.len() > field.degree {
            return Err(Error::Range(format!(
                "coefficient vector of length {} exceeds extension degree {}",
                coeffs.len(),
                field.degree
            )));
        }
        let mut v: Vec<u64> = coeffs.iter().map(|&c| c % field.p).collect();
        v.resize(field.degree, 0);
        Ok(FieldElement {
            spec: field.clone(),
            coeffs: v,
        })
    }

    /// Element number `idx` in the canonical enumeration: the base-`p`
    /// digits of `idx` are the coefficients.
    pub fn from_index(field: &Field, idx: u64) -> Self {
        assert!(idx < field.cardinality, "index out of range for field");
        let mut coeffs = Vec::with_capacity(field.degree);
        let mut rest = idx;
        for _ in 0..field.degree {
            coeffs.push(rest % field.p);
            rest /= field.p;
        }
        FieldElement {
            spec: field.clone(),
            coeffs,
        }
    }

    /// Position of this element in the canonical enumeration.
    pub fn index(&self) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = acc * self.spec.p + c;
        }
        acc
    }

    pub fn spec(&self) -> &Field {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check_same(rhs)?;
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check_same(rhs)?;
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check_same(rhs)?;
        Ok(self.raw_mul(rhs))
    }

    fn raw_mul(&self, rhs: &FieldElement) -> FieldElement {
        let p = self.spec.p;
        let n = self.spec.degree;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let mut red = poly_rem(prod, &self.spec.modulus, p);
        red.resize(n, 0);
        FieldElement {
            spec: self.spec.clone(),
            coeffs: red,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `F_p[x]`.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(
                "inverse of zero field element".into(),
            ));
        }
        let p = self.spec.p;
        let (g, s, _) = poly_ext_gcd(self.coeffs.clone(), self.spec.modulus.clone(), p);
        // g is a nonzero constant because the modulus is irreducible.
        debug_assert_eq!(poly_deg(&g), Some(0));
        let scale = mod_inv(g[0], p);
        let mut coeffs: Vec<u64> = s.iter().map(|&c| c * scale % p).collect();
        coeffs.resize(self.spec.degree, 0);
        let out = FieldElement {
            spec: self.spec.clone(),
            coeffs,
        };
        debug_assert!(out.raw_mul(self).is_one());
        Ok(out)
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check_same(rhs)?;
        Ok(self.raw_mul(&rhs.inv()?))
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one(&self.spec);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.raw_mul(&base);
            }
            base = base.raw_mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The `q`-power Frobenius for the distinguished subfield.
    pub fn frobenius_q(&self) -> FieldElement {
        self.pow(self.spec.q)
    }

    /// Coefficients joined by `:`; the stable wire form used in CSV and JSON
    /// output.
    pub fn coeff_string(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(":")
    }

    fn check_same(&self, rhs: &FieldElement) -> Result<()> {
        if self.spec == rhs.spec {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "operands from F_{} and F_{}",
                self.spec.cardinality, rhs.spec.cardinality
            )))
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let mine = (
            self.spec.p,
            self.spec.degree,
            self.spec.q,
            self.spec.m,
            &self.spec.modulus,
        );
        let theirs = (
            other.spec.p,
            other.spec.degree,
            other.spec.q,
            other.spec.m,
            &other.spec.modulus,
        );
        mine.cmp(&theirs)
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff_string())
    }
}

macro_rules! element_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("should be in the same field")
            }
        }

        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

element_op!(Add, add, checked_add);
element_op!(Sub, sub, checked_sub);
element_op!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::zero(&self.spec)
            .checked_sub(self)
            .expect("same field")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Norm down the quadratic step `F_(q^2) -> F_q`: `x^(q+1)`. Requires
/// `m == 1`.
pub fn norm_to_subfield(x: &FieldElement) -> Result<FieldElement> {
    let spec = x.spec();
    if spec.m != 1 {
        return Err(Error::Domain(
            "norm to the subfield is defined on the quadratic extension (m = 1)".into(),
        ));
    }
    let out = x.pow(spec.q + 1);
    debug_assert_eq!(out.frobenius_q(), out);
    Ok(out)
}

/// Trace down the quadratic step `F_(q^2) -> F_q`: `x^q + x`. Requires
/// `m == 1`.
pub fn trace_to_subfield(x: &FieldElement) -> Result<FieldElement> {
    let spec = x.spec();
    if spec.m != 1 {
        return Err(Error::Domain(
            "trace to the subfield is defined on the quadratic extension (m = 1)".into(),
        ));
    }
    let out = x.frobenius_q().checked_add(x)?;
    debug_assert_eq!(out.frobenius_q(), out);
    Ok(out)
}

/// Whether the element is fixed by the `q`-power Frobenius, i.e. lies in the
/// distinguished subfield `F_q`.
pub fn in_distinguished_subfield(x: &FieldElement) -> bool {
    x.frobenius_q() == *x
}

/// All field elements in canonical (index) order.
pub fn enumerate_elements(field: &Field) -> Result<Vec<FieldElement>> {
    enumerate_elements_with_guard(field, DEFAULT_FIELD_GUARD)
}

/// All field elements in canonical order, with an explicit size guard.
pub fn enumerate_elements_with_guard(field: &Field, guard: u64) -> Result<Vec<FieldElement>> {
    if field.cardinality > guard {
        return Err(Error::SizeGuard(format!(
            "enumerating {} elements exceeds guard {}",
            field.cardinality, guard
        )));
    }
    Ok((0..field.cardinality)
        .map(|i| FieldElement::from_index(field, i))
        .collect())
}

// --- polynomial arithmetic over F_p, coefficients from the constant term up ---

fn poly_deg(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn poly_trim(mut v: Vec<u64>) -> Vec<u64> {
    let len = poly_deg(&v).map_or(0, |d| d + 1);
    v.truncate(len);
    v
}

fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a, p - 2, p)
}

/// Remainder of `a` divided by monic `m`, in `F_p[x]`.
fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let md = poly_deg(m).expect("modulus is nonzero");
    debug_assert_eq!(m[md], 1, "modulus is monic");
    while let Some(da) = poly_deg(&a) {
        if da < md {
            break;
        }
        let lead = a[da];
        let shift = da - md;
        for (j, &mc) in m.iter().enumerate().take(md + 1) {
            a[shift + j] = (a[shift + j] + p * lead - lead * mc % p) % p;
        }
    }
    poly_trim(a)
}

fn poly_divmod(a: Vec<u64>, b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let lead_inv = mod_inv(b[db], p);
    let mut rem = a;
    let mut quot = vec![0u64; rem.len().saturating_sub(db) + 1];
    while let Some(da) = poly_deg(&rem) {
        if da < db {
            break;
        }
        let factor = rem[da] * lead_inv % p;
        let shift = da - db;
        quot[shift] = factor;
        for (j, &bc) in b.iter().enumerate().take(db + 1) {
            rem[shift + j] = (rem[shift + j] + p * factor - factor * bc % p) % p;
        }
    }
    (poly_trim(quot), poly_trim(rem))
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    poly_trim(out)
}

/// Extended gcd in `F_p[x]`: returns `(g, s, t)` with `s*a + t*b = g`.
fn poly_ext_gcd(a: Vec<u64>, b: Vec<u64>, p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let mut r0 = poly_trim(a);
    let mut r1 = poly_trim(b);
    let mut s0 = vec![1u64];
    let mut s1: Vec<u64> = Vec::new();
    let mut t0: Vec<u64> = Vec::new();
    let mut t1 = vec![1u64];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(r0.clone(), &r1, p);
        let s = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
        let t = poly_sub(&t0, &poly_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let d = match poly_deg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if f[0] == 0 {
        // Divisible by x.
        return d == 1;
    }
    if d == 1 {
        return true;
    }
    for div_deg in 1..=d / 2 {
        let count = p.pow(div_deg as u32);
        for idx in 0..count {
            let mut cand = base_p_digits(idx, p, div_deg);
            cand.push(1);
            if poly_rem(f.to_vec(), &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn base_p_digits(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(idx % p);
        idx /= p;
    }
    out
}

/// The canonical modulus: smallest-index monic irreducible of the given
/// degree.
fn find_modulus(p: u64, degree: usize) -> Vec<u64> {
    let mut idx = 0u64;
    loop {
        let mut cand = base_p_digits(idx, p, degree);
        cand.push(1);
        if poly_is_irreducible(&cand, p) {
            return cand;
        }
        idx += 1;
    }
}
