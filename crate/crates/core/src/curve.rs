//! The Hermitian curve `y^q + y = x^(q+1)` over `F_(q^2)` and its point
//! counts.
//!
//! The curve has genus `(q^2 - q)/2`, one place at infinity, and `q^3`
//! affine rational points: for each of the `q^2` values of `x`, the trace
//! equation in `y` has exactly `q` solutions. It is maximal, so the rational
//! point count meets the Hasse-Weil upper bound exactly.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::prime_power_decompose;
use crate::error::{Error, Result};
use crate::field::{enumerate_elements_with_guard, make_field, Field, FieldElement};

/// A point on the curve: either the single place at infinity or an affine
/// point `(x, y)` with coordinates in `F_(q^(2m))`.
///
/// The derived ordering is the canonical one used everywhere for point
/// lists: infinity first, then affine points by `x` index, then `y` index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine { x: FieldElement, y: FieldElement },
}

impl CurvePoint {
    /// Build an affine point, checking that the coordinates share a field
    /// and satisfy the curve equation.
    pub fn affine(x: FieldElement, y: FieldElement) -> Result<CurvePoint> {
        if x.spec() != y.spec() {
            return Err(Error::FieldMismatch(
                "point coordinates from different fields".into(),
            ));
        }
        let p = CurvePoint::Affine { x, y };
        if !p.satisfies_curve() {
            return Err(Error::Domain("point does not lie on the curve".into()));
        }
        Ok(p)
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, CurvePoint::Affine { .. })
    }

    pub fn x(&self) -> Option<&FieldElement> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&FieldElement> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }

    /// Whether the point satisfies `y^q + y = x^(q+1)`, with `q` taken from
    /// the coordinate field. Infinity always does.
    pub fn satisfies_curve(&self) -> bool {
        match self {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                let q = x.spec().subfield_q();
                let lhs = &y.pow(q) + y;
                lhs == x.pow(q + 1)
            }
        }
    }

    /// Stable wire form: `inf`, or the coordinate coefficient strings joined
    /// by a comma.
    pub fn wire_string(&self) -> String {
        match self {
            CurvePoint::Infinity => "inf".into(),
            CurvePoint::Affine { x, y } => format!("{},{}", x.coeff_string(), y.coeff_string()),
        }
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.wire_string())
    }
}

/// Genus `(q^2 - q)/2` of the curve.
pub fn genus(q: u64) -> Result<u64> {
    prime_power_decompose(q).ok_or(Error::NotPrimePower(q))?;
    Ok(q * (q - 1) / 2)
}

/// The `q^3` affine rational points over `F_(q^2)`, in canonical order.
pub fn affine_points(q: u64) -> Result<Vec<CurvePoint>> {
    let field = make_field(q, 1)?;
    affine_points_in(&field)
}

/// Affine points of the curve with coordinates in the given extension field,
/// in canonical order.
pub fn affine_points_in(field: &Field) -> Result<Vec<CurvePoint>> {
    let q = field.subfield_q();
    let elems = enumerate_elements_with_guard(field, field.cardinality())?;
    // Group y by the value of y^q + y; the map keeps each solution list in
    // ascending y order.
    let mut by_trace: BTreeMap<u64, Vec<&FieldElement>> = BTreeMap::new();
    for y in &elems {
        let t = &y.pow(q) + y;
        by_trace.entry(t.index()).or_default().push(y);
    }
    let mut points = Vec::new();
    for x in &elems {
        let rhs = x.pow(q + 1);
        if let Some(ys) = by_trace.get(&rhs.index()) {
            for &y in ys {
                points.push(CurvePoint::Affine {
                    x: x.clone(),
                    y: y.clone(),
                });
            }
        }
    }
    Ok(points)
}

/// Number of rational points over `F_(q^(2m))`, place at infinity included.
/// Pure enumeration; the field size guard applies.
pub fn count_points_extension(q: u64, m: usize) -> Result<u64> {
    let field = make_field(q, m)?;
    Ok(affine_points_in(&field)?.len() as u64 + 1)
}

/// Outcome of checking the curve against the Hasse-Weil upper bound over
/// `F_(q^2)`.
#[derive(Debug, Clone, Serialize)]
pub struct HasseWeilReport {
    pub q: u64,
    pub genus: u64,
    /// `q^2 + 1 + 2 g q`, the Hasse-Weil upper bound.
    pub bound: u64,
    /// Enumerated rational point count.
    pub count: u64,
    pub maximal: bool,
}

/// Count rational points and compare with the Hasse-Weil upper bound.
pub fn hasse_weil_check(q: u64) -> Result<HasseWeilReport> {
    let g = genus(q)?;
    let count = count_points_extension(q, 1)?;
    let bound = q * q + 1 + 2 * g * q;
    Ok(HasseWeilReport {
        q,
        genus: g,
        bound,
        count,
        maximal: count == bound,
    })
}
