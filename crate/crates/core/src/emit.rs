//! Output shaping shared by the CLI binary and the integration tests.
//!
//! Each subcommand builds one `Emission` value here and renders it with
//! [`render`]. JSON is the stable machine format (big integers as decimal
//! strings, pretty-printed, trailing newline). CSV covers the tabular
//! emissions and round-trips through a standard reader. Text is for humans
//! and carries no stability promise beyond determinism.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::curve::CurvePoint;
use crate::error::{Error, Result};
use crate::onepoint::{generator_matrix, CodeReport, Monomial};
use crate::picard::{build_and_verify, rational_points, LemmaReport, RationalFunction};
use crate::prospector::{
    search_with_limits, theorem_profile, AsymptoticProfile, Criterion, ProspectReport,
    PROSPECT_Q_GUARD,
};
use crate::weight::{min_distance_exact_with_guard, DEFAULT_WEIGHT_GUARD};
use crate::zeta::{check_ak_bound, zeta_profile_with_guard, AkBoundReport, SERIES_GUARD};

/// Serialize a `BigUint` field as a decimal string.
pub fn biguint_as_string<S>(value: &BigUint, serializer: S) -> std::result::Result<S::Ok, S::Error>
where
    S: Serializer,
{
    serializer.serialize_str(&value.to_string())
}

/// Serialize a `Vec<BigUint>` field as a sequence of decimal strings.
pub fn biguints_as_strings<S>(
    values: &[BigUint],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error>
where
    S: Serializer,
{
    serializer.collect_seq(values.iter().map(|v| v.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Domain(format!(
                "unknown format '{}'; expected json, csv or text",
                other
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// Zeta subcommand payload: the profile plus a per-degree bound check.
#[derive(Debug, Clone, Serialize)]
pub struct ZetaEmission {
    pub q: u64,
    pub genus: u64,
    #[serde(serialize_with = "biguints_as_strings")]
    pub l_polynomial: Vec<BigUint>,
    #[serde(serialize_with = "biguint_as_string")]
    pub class_number: BigUint,
    #[serde(serialize_with = "biguints_as_strings")]
    pub a_table: Vec<BigUint>,
    pub bound_checks: Vec<AkBoundReport>,
}

#[derive(Debug, Clone)]
pub enum Emission {
    Zeta(ZetaEmission),
    Code(CodeReport),
    Prospect(ProspectReport),
    Lemma(LemmaReport),
    Asymptotic(AsymptoticProfile),
}

pub fn build_zeta(q: u64, kmax: u64, force_size: bool) -> Result<Emission> {
    let guard = if force_size { u64::MAX } else { SERIES_GUARD };
    let profile = zeta_profile_with_guard(q, kmax, guard)?;
    let bound_checks = (0..=kmax)
        .map(|k| check_ak_bound(q, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(Emission::Zeta(ZetaEmission {
        q: profile.q,
        genus: profile.genus,
        l_polynomial: profile.l_polynomial,
        class_number: profile.class_number,
        a_table: profile.a_table,
        bound_checks,
    }))
}

pub fn build_code(
    q: u64,
    t: u64,
    exact_distance: bool,
    include_matrix: bool,
    force_size: bool,
) -> Result<Emission> {
    let code = generator_matrix(q, t)?;
    let exact = if exact_distance {
        let guard = if force_size {
            u64::MAX
        } else {
            DEFAULT_WEIGHT_GUARD
        };
        Some(min_distance_exact_with_guard(&code, guard)?)
    } else {
        None
    };
    Ok(Emission::Code(CodeReport::build(
        &code,
        exact.as_ref(),
        include_matrix,
    )?))
}

pub fn build_prospect(
    q: u64,
    criterion: Criterion,
    k_min: u64,
    t_max: Option<u64>,
    l_max: Option<u64>,
    force_size: bool,
) -> Result<Emission> {
    let guard = if force_size {
        u64::MAX
    } else {
        PROSPECT_Q_GUARD
    };
    Ok(Emission::Prospect(search_with_limits(
        q, criterion, k_min, t_max, l_max, guard,
    )?))
}

/// The evaluation set is the first `eval_size` affine points in canonical
/// order; the place at infinity always stays outside it.
pub fn build_lemma(q: u64, eval_size: usize, s: u64, m: u64) -> Result<Emission> {
    if q != 2 {
        return Err(Error::Domain(format!(
            "the affine-lemma verifier covers only the toy curve q = 2, got q = {}",
            q
        )));
    }
    if eval_size == 0 || eval_size > 8 {
        return Err(Error::Range(format!(
            "evaluation set size {} must be between 1 and 8",
            eval_size
        )));
    }
    let eval: Vec<CurvePoint> = rational_points()
        .into_iter()
        .filter(|p| !matches!(p, CurvePoint::Infinity))
        .take(eval_size)
        .collect();
    Ok(Emission::Lemma(build_and_verify(&eval, s, m)?))
}

pub fn build_asymptotic(q: u64) -> Result<Emission> {
    Ok(Emission::Asymptotic(theorem_profile(q)?))
}

pub fn render(emission: &Emission, format: Format) -> Result<String> {
    match format {
        Format::Json => render_json(emission),
        Format::Csv => render_csv(emission),
        Format::Text => Ok(render_text(emission)),
    }
}

fn json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn render_json(emission: &Emission) -> Result<String> {
    match emission {
        Emission::Zeta(v) => json_string(v),
        Emission::Code(v) => json_string(v),
        Emission::Prospect(v) => json_string(v),
        Emission::Lemma(v) => json_string(v),
        Emission::Asymptotic(v) => json_string(v),
    }
}

fn csv_string(
    fill: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> std::result::Result<(), csv::Error>,
) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    fill(&mut w)?;
    w.flush()?;
    let bytes = w.into_inner().expect("flushed csv writer");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn opt_field<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn render_csv(emission: &Emission) -> Result<String> {
    match emission {
        Emission::Zeta(v) => csv_string(|w| {
            w.write_record(["k", "a_k", "bound_num", "bound_den", "holds"])?;
            for c in &v.bound_checks {
                w.write_record([
                    c.k.to_string(),
                    c.a_k.to_string(),
                    c.bound_num.to_string(),
                    c.bound_den.to_string(),
                    c.holds.to_string(),
                ])?;
            }
            Ok(())
        }),
        Emission::Code(v) => {
            if v.matrix.is_some() {
                return Err(Error::Domain(
                    "the generator matrix does not fit the csv layout; use json or text".into(),
                ));
            }
            csv_string(|w| {
                w.write_record([
                    "q",
                    "t",
                    "n",
                    "k",
                    "genus",
                    "goppa_bound",
                    "band_lower",
                    "band_upper",
                    "exact_distance",
                    "enumerated",
                ])?;
                w.write_record([
                    v.q.to_string(),
                    v.t.to_string(),
                    v.n.to_string(),
                    v.k.to_string(),
                    v.genus.to_string(),
                    v.goppa_bound.to_string(),
                    opt_field(&v.band_lower),
                    opt_field(&v.band_upper),
                    opt_field(&v.exact_distance),
                    opt_field(&v.enumerated),
                ])?;
                Ok(())
            })
        }
        Emission::Prospect(v) => csv_string(|w| {
            w.write_record([
                "l",
                "t",
                "s",
                "k",
                "d_lower",
                "goppa_d_lower",
                "improvement",
                "criterion",
            ])?;
            for r in &v.rows {
                w.write_record([
                    r.l.to_string(),
                    r.t.to_string(),
                    r.s.to_string(),
                    r.k.to_string(),
                    r.d_lower.to_string(),
                    r.goppa_d_lower.to_string(),
                    r.improvement.to_string(),
                    r.criterion.to_string(),
                ])?;
            }
            Ok(())
        }),
        Emission::Lemma(_) => Err(Error::Domain(
            "the lemma report is nested; use json or text".into(),
        )),
        Emission::Asymptotic(v) => csv_string(|w| {
            w.write_record([
                "q",
                "genus",
                "n",
                "alpha",
                "theta",
                "entropy",
                "margin",
                "theta_star",
                "l",
                "t",
                "s",
                "k",
                "d_lower",
                "k_plus_d",
                "improvement",
                "predicted_improvement",
                "k_positive",
            ])?;
            w.write_record([
                v.q.to_string(),
                v.genus.to_string(),
                v.n.to_string(),
                v.alpha.to_string(),
                v.theta.to_string(),
                v.entropy.to_string(),
                v.margin.to_string(),
                v.theta_star.to_string(),
                v.l.to_string(),
                v.t.to_string(),
                v.s.to_string(),
                v.k.to_string(),
                v.d_lower.to_string(),
                v.k_plus_d.to_string(),
                v.improvement.to_string(),
                v.predicted_improvement.to_string(),
                v.k_positive.to_string(),
            ])?;
            Ok(())
        }),
    }
}

fn monomial_str(m: &Monomial) -> String {
    let mut parts = Vec::new();
    match m.a {
        0 => {}
        1 => parts.push("x".to_string()),
        a => parts.push(format!("x^{}", a)),
    }
    match m.b {
        0 => {}
        1 => parts.push("y".to_string()),
        b => parts.push(format!("y^{}", b)),
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn rf_str(f: &RationalFunction) -> String {
    let numer = f
        .numer
        .iter()
        .map(|(a, b, c)| {
            let m = monomial_str(&Monomial { a: *a, b: *b });
            if m == "1" {
                format!("({})", c.coeff_string())
            } else {
                format!("({})*{}", c.coeff_string(), m)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ");
    if f.denom.is_empty() {
        numer
    } else {
        let denom = f
            .denom
            .iter()
            .map(|(xw, mult)| {
                if *mult == 1 {
                    format!("(x + {})", xw.coeff_string())
                } else {
                    format!("(x + {})^{}", xw.coeff_string(), mult)
                }
            })
            .collect::<Vec<_>>()
            .join("*");
        format!("[{}] / {}", numer, denom)
    }
}

fn bound_str(c: &AkBoundReport) -> String {
    if c.bound_den.is_one() {
        c.bound_num.to_string()
    } else {
        format!("{}/{}", c.bound_num, c.bound_den)
    }
}

fn render_text(emission: &Emission) -> String {
    let mut out = String::new();
    match emission {
        Emission::Zeta(v) => {
            let _ = writeln!(out, "zeta profile: q = {}, genus = {}", v.q, v.genus);
            let coeffs = v
                .l_polynomial
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(out, "L-polynomial coefficients (low to high): {}", coeffs);
            let _ = writeln!(out, "class number h = {}", v.class_number);
            let _ = writeln!(out, "effective divisor counts:");
            for c in &v.bound_checks {
                let _ = writeln!(
                    out,
                    "  A[{}] = {}  (bound {}: {})",
                    c.k,
                    c.a_k,
                    bound_str(c),
                    if c.holds { "holds" } else { "fails" }
                );
            }
        }
        Emission::Code(v) => {
            let _ = writeln!(out, "one-point Hermitian code: q = {}, t = {}", v.q, v.t);
            let _ = writeln!(out, "n = {}, k = {}, genus = {}", v.n, v.k, v.genus);
            let _ = writeln!(out, "Goppa designed distance: {}", v.goppa_bound);
            match (v.band_lower, v.band_upper) {
                (Some(lo), Some(hi)) => {
                    let _ = writeln!(out, "distance band: [{}, {})", lo, hi);
                }
                _ => {
                    let _ = writeln!(out, "distance band: not applicable at this degree");
                }
            }
            match (v.exact_distance, v.enumerated) {
                (Some(d), Some(count)) => {
                    let _ = writeln!(
                        out,
                        "exact distance: {} ({} message classes enumerated)",
                        d, count
                    );
                }
                _ => {
                    let _ = writeln!(out, "exact distance: not computed");
                }
            }
            let basis = v.basis.iter().map(monomial_str).collect::<Vec<_>>();
            let _ = writeln!(out, "basis: {}", basis.join(", "));
            if let Some(matrix) = &v.matrix {
                let _ = writeln!(out, "generator matrix:");
                for row in matrix {
                    let _ = writeln!(out, "  {}", row.join(" "));
                }
            }
        }
        Emission::Prospect(v) => {
            let _ = writeln!(
                out,
                "prospector search: q = {}, criterion = {}, k_min = {}, t_max = {}",
                v.q, v.criterion, v.k_min, v.t_max
            );
            let _ = writeln!(out, "n = {}, genus = {}", v.n, v.genus);
            if v.rows.is_empty() {
                let _ = writeln!(out, "no (l, t) pair satisfies the criterion");
            } else {
                let _ = writeln!(
                    out,
                    "{:>5} {:>5} {:>5} {:>5} {:>8} {:>8} {:>12}",
                    "l", "t", "s", "k", "d_lower", "goppa", "improvement"
                );
                for r in &v.rows {
                    let _ = writeln!(
                        out,
                        "{:>5} {:>5} {:>5} {:>5} {:>8} {:>8} {:>12}",
                        r.l, r.t, r.s, r.k, r.d_lower, r.goppa_d_lower, r.improvement
                    );
                }
            }
            // The asymptotic chain aims at gains near g - q; show how far the
            // best certified row lands from that reference.
            let reference = v.genus as i64 - v.q as i64;
            match v.rows.first() {
                Some(best) => {
                    let _ = writeln!(
                        out,
                        "best improvement over the Goppa bound: {} (reference gap g - q = {})",
                        best.improvement, reference
                    );
                }
                None => {
                    let _ = writeln!(
                        out,
                        "best improvement over the Goppa bound: none (reference gap g - q = {})",
                        reference
                    );
                }
            }
        }
        Emission::Lemma(v) => {
            let _ = writeln!(
                out,
                "affine-lemma verification on the toy curve (q = 2, 9 classes)"
            );
            let _ = writeln!(
                out,
                "evaluation points: {}",
                v.eval_set
                    .iter()
                    .map(|p| p.wire_string())
                    .collect::<Vec<_>>()
                    .join("; ")
            );
            let _ = writeln!(out, "n = {}, s = {}, m = {}", v.n, v.s, v.m);
            let _ = writeln!(
                out,
                "classes hit by differences: {} of {}",
                v.classes_hit, v.class_number
            );
            let _ = writeln!(
                out,
                "good class: degree {}, z = {}",
                v.good_class.degree,
                v.good_class.z.wire_string()
            );
            let divisor = v
                .divisor
                .iter()
                .map(|(p, mult)| format!("{}*{}", mult, p.wire_string()))
                .collect::<Vec<_>>()
                .join(" + ");
            let _ = writeln!(out, "divisor G = {}", divisor);
            let _ = writeln!(out, "basis of L(G):");
            for f in &v.basis {
                let _ = writeln!(out, "  {}", rf_str(f));
            }
            let _ = writeln!(out, "evaluation matrix:");
            for row in &v.matrix {
                let _ = writeln!(out, "  {}", row.join(" "));
            }
            let _ = writeln!(
                out,
                "k = {} (need {}), d = {} (need >= {})",
                v.k, v.s, v.d_exact, v.d_required
            );
            let _ = writeln!(out, "{}", if v.passed { "PASS" } else { "FAIL" });
        }
        Emission::Asymptotic(v) => {
            let _ = writeln!(
                out,
                "asymptotic profile: q = {}, genus = {}, n = {}",
                v.q, v.genus, v.n
            );
            let _ = writeln!(out, "alpha = {}, theta = {}", v.alpha, v.theta);
            let _ = writeln!(out, "binary entropy H(alpha) = {}", v.entropy);
            let _ = writeln!(out, "margin = {} (theta* = {})", v.margin, v.theta_star);
            let _ = writeln!(
                out,
                "profile: l = {}, t = {}, s = {}, k = {} (k positive: {})",
                v.l, v.t, v.s, v.k, v.k_positive
            );
            let _ = writeln!(out, "d_lower = {}, k + d = {}", v.d_lower, v.k_plus_d);
            let _ = writeln!(
                out,
                "improvement t + 1 = {}, predicted g - 4 = {}",
                v.improvement, v.predicted_improvement
            );
        }
    }
    out
}
