//! One-point codes `C_L(tP_inf, D)` on the Hermitian curve: the monomial
//! basis of `L(tP_inf)`, generator matrices over `F_(q^2)`, and the Goppa
//! and Yang-Kumar distance information.
//!
//! The Weierstrass semigroup at the place at infinity is generated by `q`
//! (pole order of `x`) and `q + 1` (pole order of `y`), so `L(tP_inf)` has
//! the monomial basis `x^a y^b` with `b <= q - 1` and `qa + (q+1)b <= t`.
//! Those pole orders are pairwise distinct, which is what makes dimensions
//! and evaluation ranks exact.

use serde::Serialize;

use crate::curve::{affine_points, genus};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::FMatrix;

/// A basis monomial `x^a y^b` of `L(tP_inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub a: u64,
    pub b: u64,
}

impl Monomial {
    /// Pole order at the place at infinity: `qa + (q+1)b`.
    pub fn pole_order(&self, q: u64) -> u64 {
        q * self.a + (q + 1) * self.b
    }
}

/// Monomials spanning `L(tP_inf)`, in increasing pole order.
pub fn monomial_basis(q: u64, t: u64) -> Vec<Monomial> {
    assert!(q >= 2, "q must be at least 2");
    let mut basis = Vec::new();
    for b in 0..q {
        let fixed = (q + 1) * b;
        if fixed > t {
            break;
        }
        for a in 0..=(t - fixed) / q {
            basis.push(Monomial { a, b });
        }
    }
    basis.sort_by_key(|m| (m.pole_order(q), m.b));
    basis
}

/// `dim L(tP_inf)`, the semigroup count. Equals `t - g + 1` once
/// `t >= 2g - 1`, but is also correct below that range.
pub fn dimension(q: u64, t: u64) -> u64 {
    monomial_basis(q, t).len() as u64
}

/// The Goppa designed-distance bound `n - t = q^3 - t`.
pub fn goppa_bound(q: u64, t: u64) -> Result<u64> {
    let n = q * q * q;
    if t >= n {
        return Err(Error::Range(format!(
            "t = {} must be below the code length q^3 = {}",
            t, n
        )));
    }
    Ok(n - t)
}

/// The half-open interval `[q^3 - t, q^3 - t + q)` that contains the exact
/// minimum distance for `2g - 1 < t < q^3`.
pub fn yang_kumar_band(q: u64, t: u64) -> Result<(u64, u64)> {
    let g = genus(q)?;
    let n = q * q * q;
    if t < 2 * g || t >= n {
        return Err(Error::Range(format!(
            "band requires 2g-1 < t < q^3, got t = {} for q = {}",
            t, q
        )));
    }
    Ok((n - t, n - t + q))
}

/// A linear code over `F_(q^2)` given by explicit generator rows.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Field,
    rows: Vec<Vec<FieldElement>>,
    n: usize,
    k: usize,
    basis: Option<Vec<Monomial>>,
    design_t: Option<u64>,
    d_lower: Option<u64>,
    d_exact: Option<u64>,
}

impl LinearCode {
    /// Wrap explicit generator rows; the dimension is the exact rank.
    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<LinearCode> {
        let n = rows.first().map_or(0, |r| r.len());
        let m = FMatrix::from_rows(field, rows.clone())?;
        let k = m.rank();
        Ok(LinearCode {
            field: field.clone(),
            rows,
            n,
            k,
            basis: None,
            design_t: None,
            d_lower: None,
            d_exact: None,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The subfield parameter `q`; the code alphabet is `F_(q^2)`.
    pub fn q(&self) -> u64 {
        self.field.subfield_q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn basis(&self) -> Option<&[Monomial]> {
        self.basis.as_deref()
    }

    pub fn design_t(&self) -> Option<u64> {
        self.design_t
    }

    pub fn d_lower(&self) -> Option<u64> {
        self.d_lower
    }

    pub fn d_exact(&self) -> Option<u64> {
        self.d_exact
    }

    /// Record an exact distance; must be consistent with the stored lower
    /// bound and the length.
    pub fn set_exact_distance(&mut self, d: u64) -> Result<()> {
        if d == 0 || d > self.n as u64 {
            return Err(Error::Range(format!(
                "distance {} outside [1, {}]",
                d, self.n
            )));
        }
        if let Some(lo) = self.d_lower {
            if d < lo {
                return Err(Error::Verification(format!(
                    "exact distance {} below the designed bound {}",
                    d, lo
                )));
            }
        }
        self.d_exact = Some(d);
        Ok(())
    }
}

/// The generator matrix of `C_L(tP_inf, D)`: basis monomials evaluated at
/// all `q^3` affine points in canonical order.
pub fn generator_matrix(q: u64, t: u64) -> Result<LinearCode> {
    let n = q * q * q;
    if t >= n {
        return Err(Error::Range(format!(
            "t = {} must be below q^3 = {} for injective evaluation",
            t, n
        )));
    }
    let points = affine_points(q)?;
    let field = points[0].x().expect("affine point").spec().clone();
    let basis = monomial_basis(q, t);
    let rows: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|m| {
            points
                .iter()
                .map(|p| {
                    let x = p.x().expect("affine point");
                    let y = p.y().expect("affine point");
                    &x.pow(m.a) * &y.pow(m.b)
                })
                .collect()
        })
        .collect();
    let mut code = LinearCode::from_rows(&field, rows)?;
    if code.k != basis.len() {
        return Err(Error::Verification(format!(
            "evaluation rank {} does not match dim L(tP_inf) = {}",
            code.k,
            basis.len()
        )));
    }
    code.basis = Some(basis);
    code.design_t = Some(t);
    code.d_lower = Some(goppa_bound(q, t)?);
    Ok(code)
}

/// Everything the `code` subcommand emits about one code.
#[derive(Debug, Clone, Serialize)]
pub struct CodeReport {
    pub q: u64,
    pub t: u64,
    pub n: usize,
    pub k: usize,
    pub genus: u64,
    pub goppa_bound: u64,
    /// Yang-Kumar band `[lo, hi)`, present only when `2g-1 < t < q^3`.
    pub band_lower: Option<u64>,
    pub band_upper: Option<u64>,
    pub exact_distance: Option<u64>,
    /// Message classes visited by the distance enumeration, if run.
    pub enumerated: Option<u64>,
    pub basis: Vec<Monomial>,
    /// Generator matrix entries as coefficient strings, row per monomial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

impl CodeReport {
    pub fn build(
        code: &LinearCode,
        exact: Option<&crate::weight::DistanceResult>,
        include_matrix: bool,
    ) -> Result<CodeReport> {
        let q = code.q();
        let t = code
            .design_t
            .ok_or_else(|| Error::Range("code has no design degree".into()))?;
        let band = yang_kumar_band(q, t).ok();
        Ok(CodeReport {
            q,
            t,
            n: code.n,
            k: code.k,
            genus: genus(q)?,
            goppa_bound: goppa_bound(q, t)?,
            band_lower: band.map(|b| b.0),
            band_upper: band.map(|b| b.1),
            exact_distance: exact.map(|r| r.distance),
            enumerated: exact.map(|r| r.enumerated),
            basis: code.basis.clone().unwrap_or_default(),
            matrix: include_matrix.then(|| {
                code.rows
                    .iter()
                    .map(|row| row.iter().map(|e| e.coeff_string()).collect())
                    .collect()
            }),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_q2_t5() {
        let b = monomial_basis(2, 5);
        let pairs: Vec<(u64, u64)> = b.iter().map(|m| (m.a, m.b)).collect();
        // Pole orders 0, 2, 3, 4, 5.
        assert_eq!(pairs, vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)]);
    }

    #[test]
    fn basis_q3_t4() {
        let b = monomial_basis(3, 4);
        let pairs: Vec<(u64, u64)> = b.iter().map(|m| (m.a, m.b)).collect();
        // Semigroup <3,4> non-gaps up to 4: {0, 3, 4}.
        assert_eq!(pairs, vec![(0, 0), (1, 0), (0, 1)]);
    }

    #[test]
    fn pole_orders_distinct_and_sorted() {
        for q in [2u64, 3, 4] {
            for t in [0u64, 3, 7, 15, 40] {
                let orders: Vec<u64> = monomial_basis(q, t)
                    .iter()
                    .map(|m| m.pole_order(q))
                    .collect();
                let mut sorted = orders.clone();
                sorted.sort_unstable();
                sorted.dedup();
                assert_eq!(orders, sorted);
                assert!(orders.iter().all(|&o| o <= t));
            }
        }
    }

    #[test]
    fn dimension_table_q3() {
        let dims: Vec<u64> = (0..=12).map(|t| dimension(3, t)).collect();
        assert_eq!(dims, vec![1, 1, 1, 2, 3, 3, 4, 5, 6, 7, 8, 9, 10]);
    }

    #[test]
    fn dimension_riemann_roch_regime() {
        for q in [2u64, 3, 4] {
            let g = genus(q).unwrap();
            for t in (2 * g).saturating_sub(1)..q * q * q {
                assert_eq!(dimension(q, t), t - g + 1, "q={} t={}", q, t);
            }
        }
    }

    #[test]
    fn dimension_monotone_steps() {
        for q in [2u64, 3] {
            let mut prev = dimension(q, 0);
            assert_eq!(prev, 1);
            for t in 1..q * q * q {
                let d = dimension(q, t);
                assert!(d == prev || d == prev + 1);
                prev = d;
            }
        }
    }

    #[test]
    fn bounds_and_ranges() {
        assert_eq!(goppa_bound(2, 5).unwrap(), 3);
        assert_eq!(goppa_bound(3, 7).unwrap(), 20);
        assert_eq!(goppa_bound(2, 0).unwrap(), 8);
        assert!(goppa_bound(3, 27).is_err());
        assert_eq!(yang_kumar_band(2, 5).unwrap(), (3, 5));
        assert_eq!(yang_kumar_band(3, 7).unwrap(), (20, 23));
        assert_eq!(yang_kumar_band(2, 2).unwrap(), (6, 8));
        // t = 2g-1 is outside the band's validity range.
        assert!(yang_kumar_band(2, 1).is_err());
        assert!(yang_kumar_band(3, 30).is_err());
    }

    #[test]
    fn generator_matrix_q2() {
        let code = generator_matrix(2, 5).unwrap();
        assert_eq!(code.n(), 8);
        assert_eq!(code.k(), 5);
        assert_eq!(code.d_lower(), Some(3));
        // First row is the constant monomial: all ones.
        assert!(code.rows()[0].iter().all(|e| e.is_one()));
        // Second row is x evaluated at the canonical points.
        let xs: Vec<u64> = code.rows()[1].iter().map(|e| e.index()).collect();
        assert_eq!(xs, vec![0, 0, 1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn generator_rank_matches_dimension() {
        for q in [2u64, 3] {
            for t in 0..q * q * q {
                let code = generator_matrix(q, t).unwrap();
                assert_eq!(code.k() as u64, dimension(q, t), "q={} t={}", q, t);
            }
        }
        // Spot checks at q = 4.
        for t in [0u64, 7, 20, 45, 63] {
            let code = generator_matrix(4, t).unwrap();
            assert_eq!(code.k() as u64, dimension(4, t));
        }
    }

    #[test]
    fn repetition_code_at_t0() {
        let code = generator_matrix(2, 0).unwrap();
        assert_eq!((code.n(), code.k()), (8, 1));
        assert_eq!(code.d_lower(), Some(8));
    }

    #[test]
    fn exact_distance_consistency_enforced() {
        let mut code = generator_matrix(2, 5).unwrap();
        assert!(code.set_exact_distance(0).is_err());
        assert!(code.set_exact_distance(2).is_err());
        assert!(code.set_exact_distance(9).is_err());
        assert!(code.set_exact_distance(3).is_ok());
        assert_eq!(code.d_exact(), Some(3));
    }
}
