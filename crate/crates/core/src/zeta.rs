//! Zeta-function data for the Hermitian curve over F_{q^2}: L-polynomial,
//! class number, and exact counts A_k of effective divisors of degree k.
//!
//! Maximality pins the L-polynomial to (1+qT)^{2g}, so everything here is a
//! finite integer computation. Two independent routes produce the A_k table:
//! a closed-form sum and a truncated power-series expansion of the zeta
//! function; the test suite holds them against each other. No floating
//! point: comparisons against h * q^{2k+2-2g} with a negative exponent are
//! cross-multiplied in exact integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{big_pow, binomial};
use crate::curve::genus;
use crate::emit::{biguint_as_string, biguints_as_strings};
use crate::error::{Error, Result};

/// Largest degree the series expansion will run to.
pub const SERIES_GUARD: u64 = 10_000;

/// Everything the zeta function of one curve determines, in one bundle.
#[derive(Debug, Clone, Serialize)]
pub struct ZetaProfile {
    pub q: u64,
    pub genus: u64,
    #[serde(serialize_with = "biguints_as_strings")]
    pub l_polynomial: Vec<BigUint>,
    #[serde(serialize_with = "biguint_as_string")]
    pub class_number: BigUint,
    /// A_0 .. A_kmax: effective divisors of each degree.
    #[serde(serialize_with = "biguints_as_strings")]
    pub a_table: Vec<BigUint>,
}

/// Coefficients of L(T) = (1+qT)^{2g}, constant term first.
pub fn l_polynomial(q: u64) -> Result<Vec<BigUint>> {
    let g = genus(q)?;
    let coeffs = (0..=2 * g)
        .map(|i| binomial(2 * g, i) * big_pow(q, i))
        .collect();
    Ok(coeffs)
}

/// Divisor class number h = L(1) = (1+q)^{2g}.
pub fn class_number(q: u64) -> Result<BigUint> {
    let g = genus(q)?;
    Ok(big_pow(q + 1, 2 * g))
}

/// A_k by the closed form: sum over i of binom(2g,i) q^i (q^{2k+2-2i}-1)/(q^2-1).
pub fn a_k_closed(q: u64, k: u64) -> Result<BigUint> {
    let g = genus(q)?;
    let denom = BigUint::from(q * q - 1);
    let mut total = BigUint::zero();
    for i in 0..=k.min(2 * g) {
        let geo = (big_pow(q, 2 * (k + 1 - i)) - 1u32) / &denom;
        total += binomial(2 * g, i) * big_pow(q, i) * geo;
    }
    Ok(total)
}

/// A_0..A_kmax by expanding Z(T) = L(T) / ((1-T)(1-q^2 T)) as a power series.
///
/// Deliberately avoids the closed form: L(T) is built by repeated
/// multiplication of (1+qT), and the two geometric factors are multiplied in
/// as truncated series, so this is an independent oracle for `a_k_closed`.
pub fn a_k_series(q: u64, kmax: u64) -> Result<Vec<BigUint>> {
    if kmax > SERIES_GUARD {
        return Err(Error::SizeGuard(format!(
            "series degree {} exceeds guard {}",
            kmax, SERIES_GUARD
        )));
    }
    let g = genus(q)?;
    let trunc = (kmax + 1) as usize;
    // L(T) by 2g successive multiplications with (1 + qT).
    let mut l = vec![BigUint::one()];
    for _ in 0..2 * g {
        l = series_mul(&l, &[BigUint::one(), BigUint::from(q)], trunc);
    }
    // 1/(1-T) and 1/(1-q^2 T) as truncated geometric series.
    let ones = vec![BigUint::one(); trunc];
    let mut qpow = Vec::with_capacity(trunc);
    let mut acc = BigUint::one();
    for _ in 0..trunc {
        qpow.push(acc.clone());
        acc *= q * q;
    }
    let z = series_mul(&series_mul(&l, &ones, trunc), &qpow, trunc);
    Ok(z)
}

fn series_mul(a: &[BigUint], b: &[BigUint], trunc: usize) -> Vec<BigUint> {
    let len = (a.len() + b.len() - 1).min(trunc);
    let mut out = vec![BigUint::zero(); len];
    for (i, ai) in a.iter().enumerate() {
        if i >= trunc || ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= trunc {
                break;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact check of A_k < h * q^{2k+2-2g}; the bound is kept as a fraction
/// so negative exponents stay exact.
#[derive(Debug, Clone, Serialize)]
pub struct AkBoundReport {
    pub q: u64,
    pub k: u64,
    #[serde(serialize_with = "biguint_as_string")]
    pub a_k: BigUint,
    #[serde(serialize_with = "biguint_as_string")]
    pub bound_num: BigUint,
    #[serde(serialize_with = "biguint_as_string")]
    pub bound_den: BigUint,
    pub holds: bool,
}

/// Compare A_k against h * q^{2k+2-2g}, cross-multiplied in integers.
pub fn check_ak_bound(q: u64, k: u64) -> Result<AkBoundReport> {
    let g = genus(q)?;
    let a_k = a_k_closed(q, k)?;
    let h = class_number(q)?;
    let (bound_num, bound_den) = if 2 * k + 2 >= 2 * g {
        (h * big_pow(q, 2 * k + 2 - 2 * g), BigUint::one())
    } else {
        (h, big_pow(q, 2 * g - 2 * k - 2))
    };
    let holds = &a_k * &bound_den < bound_num;
    Ok(AkBoundReport {
        q,
        k,
        a_k,
        bound_num,
        bound_den,
        holds,
    })
}

/// Assemble the full profile with the A-table up to degree `kmax`.
pub fn zeta_profile(q: u64, kmax: u64) -> Result<ZetaProfile> {
    zeta_profile_with_guard(q, kmax, SERIES_GUARD)
}

/// `zeta_profile` with an explicit guard on the table degree.
pub fn zeta_profile_with_guard(q: u64, kmax: u64, guard: u64) -> Result<ZetaProfile> {
    if kmax > guard {
        return Err(Error::SizeGuard(format!(
            "table degree {} exceeds guard {}",
            kmax, guard
        )));
    }
    let g = genus(q)?;
    let a_table = (0..=kmax)
        .map(|k| a_k_closed(q, k))
        .collect::<Result<_>>()?;
    Ok(ZetaProfile {
        q,
        genus: g,
        l_polynomial: l_polynomial(q)?,
        class_number: class_number(q)?,
        a_table,
    })
}
