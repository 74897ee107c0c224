//! Existence-criterion search: for which (l, t) does a divisor class of
//! degree s = l+t exist whose code beats the Goppa designed distance by t+1?
//!
//! Two criteria are exposed side by side. `prop23_holds` is the closed-form
//! sufficient condition binom(n,l) * q^{2t+2-2g} <= 1; `exact_criterion_holds`
//! replaces the q-power bound with the exact divisor count A_t and tests
//! binom(n,l) * A_t < h. The second is strictly weaker as a hypothesis (so it
//! certifies more rows); every decision is made in exact big integers.
//!
//! Floating point appears only in the asymptotic evaluator at the bottom of
//! the module, which traces the theorem's own parameter choices and reports
//! honestly where they lead (including the nonpositive k they produce).

use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{big_pow, binomial};
use crate::curve::genus;
use crate::error::{Error, Result};
use crate::zeta::{a_k_closed, class_number};

/// Largest q the search will attempt.
pub const PROSPECT_Q_GUARD: u64 = 32;

/// Which existence test a search ran with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    /// Closed-form condition binom(n,l) <= q^{2g-2-2t}.
    Prop23,
    /// Exact condition binom(n,l) * A_t < h.
    Exact,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::Prop23 => write!(f, "prop23"),
            Criterion::Exact => write!(f, "exact"),
        }
    }
}

impl FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prop23" => Ok(Criterion::Prop23),
            "exact" => Ok(Criterion::Exact),
            other => Err(Error::Domain(format!(
                "unknown criterion '{}', expected 'prop23' or 'exact'",
                other
            ))),
        }
    }
}

/// One certified parameter point.
#[derive(Debug, Clone, Serialize)]
pub struct ProspectRow {
    /// Evaluation places sacrificed in the distance bound (the lemma's m).
    pub l: u64,
    /// Degree of the free effective part (s - m).
    pub t: u64,
    /// Degree of the divisor class: s = l + t.
    pub s: u64,
    /// Guaranteed dimension l + t - g + 1.
    pub k: u64,
    /// Guaranteed distance n - l + 1.
    pub d_lower: u64,
    /// Goppa designed distance n - s for the same class degree.
    pub goppa_d_lower: i64,
    /// d_lower - goppa_d_lower = t + 1.
    pub improvement: u64,
    pub criterion: Criterion,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProspectReport {
    pub q: u64,
    pub genus: u64,
    pub n: u64,
    pub criterion: Criterion,
    pub k_min: u64,
    pub t_max: u64,
    pub rows: Vec<ProspectRow>,
}

fn check_range(q: u64, l: u64) -> Result<(u64, u64)> {
    let g = genus(q)?;
    let n = q * q * q;
    if l > n {
        return Err(Error::Range(format!("l = {} exceeds n = {}", l, n)));
    }
    Ok((g, n))
}

/// The closed-form criterion binom(n,l) * q^{2t+2-2g} <= 1, cross-multiplied.
pub fn prop23_holds(q: u64, l: u64, t: u64) -> Result<bool> {
    let (g, n) = check_range(q, l)?;
    let lhs = binomial(n, l);
    Ok(if 2 * t + 2 >= 2 * g {
        lhs * big_pow(q, 2 * t + 2 - 2 * g) <= BigUint::one()
    } else {
        lhs <= big_pow(q, 2 * g - 2 - 2 * t)
    })
}

/// The exact criterion binom(n,l) * A_t < h.
pub fn exact_criterion_holds(q: u64, l: u64, t: u64) -> Result<bool> {
    let (_, n) = check_range(q, l)?;
    Ok(binomial(n, l) * a_k_closed(q, t)? < class_number(q)?)
}

fn criterion_holds(c: Criterion, q: u64, l: u64, t: u64) -> Result<bool> {
    match c {
        Criterion::Prop23 => prop23_holds(q, l, t),
        Criterion::Exact => exact_criterion_holds(q, l, t),
    }
}

/// Scan (l, t) for certified rows with k = l+t-g+1 >= k_min.
///
/// t runs 0..=t_max (default 2g) with an early break per l: both criteria are
/// monotone in t, so the first failure ends the column. l climbs from 1 and
/// the scan stops at the first l whose t = 0 test fails: past that frontier
/// any surviving row sits in the degenerate tail where nearly all evaluation
/// places have been given up and d_lower has collapsed toward 1, which is not
/// a prospect worth reporting.
pub fn search(
    q: u64,
    criterion: Criterion,
    k_min: u64,
    t_max: Option<u64>,
) -> Result<ProspectReport> {
    search_with_limits(q, criterion, k_min, t_max, None, PROSPECT_Q_GUARD)
}

/// `search` with an optional cap on l and an explicit q guard.
pub fn search_with_limits(
    q: u64,
    criterion: Criterion,
    k_min: u64,
    t_max: Option<u64>,
    l_max: Option<u64>,
    q_guard: u64,
) -> Result<ProspectReport> {
    if q > q_guard {
        return Err(Error::SizeGuard(format!(
            "q = {} exceeds the search guard {}",
            q, q_guard
        )));
    }
    if k_min < 1 {
        return Err(Error::Range("k_min must be at least 1".into()));
    }
    let g = genus(q)?;
    let n = q * q * q;
    let t_max = t_max.unwrap_or(2 * g);
    let mut rows = Vec::new();
    for l in 1..=l_max.unwrap_or(n).min(n) {
        if !criterion_holds(criterion, q, l, 0)? {
            break;
        }
        for t in 0..=t_max {
            if !criterion_holds(criterion, q, l, t)? {
                break;
            }
            let k_signed = (l + t + 1) as i64 - g as i64;
            if k_signed < k_min as i64 {
                continue;
            }
            let s = l + t;
            rows.push(ProspectRow {
                l,
                t,
                s,
                k: k_signed as u64,
                d_lower: n - l + 1,
                goppa_d_lower: n as i64 - s as i64,
                improvement: t + 1,
                criterion,
            });
        }
    }
    rows.sort_by(|a, b| {
        b.improvement
            .cmp(&a.improvement)
            .then(b.k.cmp(&a.k))
            .then(a.l.cmp(&b.l))
    });
    Ok(ProspectReport {
        q,
        genus: g,
        n,
        criterion,
        k_min,
        t_max,
        rows,
    })
}

/// Binary entropy; endpoints take the limit value 0.
pub fn entropy2(delta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) || delta.is_nan() {
        return Err(Error::Domain(format!(
            "entropy argument {} outside [0, 1]",
            delta
        )));
    }
    if delta == 0.0 || delta == 1.0 {
        return Ok(0.0);
    }
    Ok(-delta * delta.log2() - (1.0 - delta) * (1.0 - delta).log2())
}

fn check_alpha(q: u64, alpha: f64) -> Result<()> {
    genus(q)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "alpha = {} must lie strictly inside (0, 1)",
            alpha
        )));
    }
    Ok(())
}

/// The limit expression H_2(alpha) log_q 2 + 2 alpha (theta - 1).
///
/// Negative margin means the bad-class count is asymptotically outweighed by
/// the class number, i.e. the construction goes through.
pub fn asymptotic_margin(q: u64, alpha: f64, theta: f64) -> Result<f64> {
    check_alpha(q, alpha)?;
    let log_q_2 = 2.0f64.ln() / (q as f64).ln();
    Ok(entropy2(alpha)? * log_q_2 + 2.0 * alpha * (theta - 1.0))
}

/// The zero of the margin in theta: 1 - log_q(2) H_2(alpha) / (2 alpha).
pub fn theta_star(q: u64, alpha: f64) -> Result<f64> {
    check_alpha(q, alpha)?;
    let log_q_2 = 2.0f64.ln() / (q as f64).ln();
    Ok(1.0 - log_q_2 * entropy2(alpha)? / (2.0 * alpha))
}

/// Where the theorem's own parameter choices land for a concrete q.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticProfile {
    pub q: u64,
    pub genus: u64,
    pub n: u64,
    pub alpha: f64,
    pub theta: f64,
    pub entropy: f64,
    pub margin: f64,
    pub theta_star: f64,
    pub l: u64,
    pub t: i64,
    pub s: i64,
    /// l + t - g + 1; nonpositive at the theorem's own parameters.
    pub k: i64,
    pub d_lower: u64,
    pub k_plus_d: i64,
    pub improvement: i64,
    /// The g - 4 the distance-improvement chain predicts.
    pub predicted_improvement: i64,
    /// Whether the certified dimension is actually positive.
    pub k_positive: bool,
}

pub const DEFAULT_THETA_SLACK: f64 = 1e-6;

/// Evaluate the theorem's construction at q^eps = 2, i.e. l = 2 places.
pub fn theorem_profile(q: u64) -> Result<AsymptoticProfile> {
    theorem_profile_with_slack(q, DEFAULT_THETA_SLACK)
}

/// Same, with an explicit slack below theta* (the proof needs strict margin).
pub fn theorem_profile_with_slack(q: u64, slack: f64) -> Result<AsymptoticProfile> {
    let g = genus(q)?;
    if q < 4 {
        return Err(Error::Range(format!(
            "theorem profile needs q >= 4, got {}",
            q
        )));
    }
    let n = q * q * q;
    let l = 2u64;
    let alpha = l as f64 / n as f64;
    let ts = theta_star(q, alpha)?;
    let theta = ts - slack;
    let t = g as i64 - 1 + ((theta - 1.0) * l as f64).floor() as i64;
    let k = l as i64 + t - g as i64 + 1;
    let d_lower = n - l + 1;
    Ok(AsymptoticProfile {
        q,
        genus: g,
        n,
        alpha,
        theta,
        entropy: entropy2(alpha)?,
        margin: asymptotic_margin(q, alpha, theta)?,
        theta_star: ts,
        l,
        t,
        s: l as i64 + t,
        k,
        d_lower,
        k_plus_d: k + d_lower as i64,
        improvement: t + 1,
        predicted_improvement: g as i64 - 4,
        k_positive: k >= 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prop23_examples() {
        assert!(prop23_holds(4, 3, 1).unwrap());
        assert!(!prop23_holds(4, 3, 2).unwrap());
        for q in [2u64, 3, 4, 5] {
            let g = genus(q).unwrap();
            assert!(prop23_holds(q, 0, g - 1).unwrap());
            // One degree higher and even l = 0 fails.
            assert!(!prop23_holds(q, 0, g).unwrap());
        }
    }

    #[test]
    fn exact_examples() {
        assert!(exact_criterion_holds(2, 1, 0).unwrap());
        assert!(!exact_criterion_holds(2, 2, 0).unwrap());
        assert!(!exact_criterion_holds(2, 0, 1).unwrap());
    }

    #[test]
    fn out_of_range_l() {
        assert!(matches!(prop23_holds(2, 9, 0), Err(Error::Range(_))));
        assert!(matches!(
            exact_criterion_holds(2, 9, 0),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn prop23_implies_exact() {
        for q in [2u64, 3] {
            let g = genus(q).unwrap();
            for l in 0..=16.min(q * q * q) {
                for t in 0..=2 * g {
                    if prop23_holds(q, l, t).unwrap() {
                        assert!(exact_criterion_holds(q, l, t).unwrap(), "q={q} l={l} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_in_t() {
        for q in [2u64, 3, 4] {
            let g = genus(q).unwrap();
            for l in [0u64, 1, 2, 5] {
                for c in [Criterion::Prop23, Criterion::Exact] {
                    let mut seen_false = false;
                    for t in 0..=2 * g {
                        let h = criterion_holds(c, q, l, t).unwrap();
                        if seen_false {
                            assert!(!h, "criterion not monotone at q={q} l={l} t={t}");
                        }
                        seen_false |= !h;
                    }
                }
            }
        }
    }

    #[test]
    fn search_q2() {
        let r = search(2, Criterion::Exact, 1, None).unwrap();
        assert_eq!(r.rows.len(), 1);
        let row = &r.rows[0];
        assert_eq!((row.l, row.t, row.s, row.k, row.d_lower), (1, 0, 1, 1, 8));
        assert_eq!(row.goppa_d_lower, 7);
        assert_eq!(row.improvement, 1);

        assert!(search(2, Criterion::Prop23, 1, None)
            .unwrap()
            .rows
            .is_empty());
    }

    #[test]
    fn search_q4_prop23_empty() {
        assert!(search(4, Criterion::Prop23, 1, None)
            .unwrap()
            .rows
            .is_empty());
    }

    #[test]
    fn search_row_identities_and_order() {
        let r = search(8, Criterion::Exact, 1, None).unwrap();
        assert!(!r.rows.is_empty());
        for row in &r.rows {
            assert_eq!(row.s, row.l + row.t);
            assert_eq!(row.d_lower as i64 - row.goppa_d_lower, row.t as i64 + 1);
            assert_eq!(
                row.k + row.d_lower,
                r.n + row.t - r.genus + 2,
                "k + d identity broken at l={} t={}",
                row.l,
                row.t
            );
            assert!(row.k >= 1);
        }
        for pair in r.rows.windows(2) {
            let key = |x: &ProspectRow| {
                (
                    std::cmp::Reverse(x.improvement),
                    std::cmp::Reverse(x.k),
                    x.l,
                )
            };
            assert!(key(&pair[0]) <= key(&pair[1]));
        }
    }

    #[test]
    fn search_k_min_filters() {
        let all = search(8, Criterion::Exact, 1, None).unwrap();
        let top = search(8, Criterion::Exact, 5, None).unwrap();
        assert!(top.rows.iter().all(|r| r.k >= 5));
        assert!(top.rows.len() < all.rows.len());
        assert!(matches!(
            search(8, Criterion::Exact, 0, None),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn search_guard() {
        assert!(matches!(
            search(64, Criterion::Exact, 1, None),
            Err(Error::SizeGuard(_))
        ));
    }

    #[test]
    fn entropy_values() {
        assert!((entropy2(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(entropy2(0.0).unwrap(), 0.0);
        assert_eq!(entropy2(1.0).unwrap(), 0.0);
        assert!((entropy2(0.25).unwrap() - 0.8112781244591328).abs() < 1e-12);
        assert!(matches!(entropy2(-0.1), Err(Error::Domain(_))));
        assert!(matches!(entropy2(1.1), Err(Error::Domain(_))));
    }

    #[test]
    fn margin_and_theta_star() {
        assert!(asymptotic_margin(4, 0.5, 0.5).unwrap().abs() < 1e-15);
        assert!(asymptotic_margin(4, 0.5, 0.4).unwrap() < 0.0);
        assert!(asymptotic_margin(4, 0.5, 0.6).unwrap() > 0.0);
        assert!((theta_star(4, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!(theta_star(2, 0.5).unwrap().abs() < 1e-15);
        // theta_star is the margin's zero.
        for q in [2u64, 4, 16] {
            for alpha in [0.1, 0.3, 0.7] {
                let ts = theta_star(q, alpha).unwrap();
                assert!(asymptotic_margin(q, alpha, ts).unwrap().abs() < 1e-9);
            }
        }
        assert!(matches!(
            asymptotic_margin(4, 0.0, 0.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(theta_star(4, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn theta_star_limit() {
        // alpha = 2/q^3 with q = 2^10: the threshold approaches -1/2.
        let q = 1024u64;
        let alpha = 2.0 / (q as f64).powi(3);
        assert!((theta_star(q, alpha).unwrap() + 0.5).abs() < 0.05);
    }

    #[test]
    fn theorem_profiles() {
        let p = theorem_profile(4).unwrap();
        assert_eq!(p.l, 2);
        assert_eq!(p.t, 1);
        assert_eq!(p.k, -2);
        assert!(!p.k_positive);
        assert_eq!(p.improvement, 2);
        assert_eq!(p.predicted_improvement, 2);
        assert!(p.margin < 0.0);
        assert_eq!(p.k_plus_d, p.n as i64 + p.t - p.genus as i64 + 2);

        for q in [16u64, 64] {
            let p = theorem_profile(q).unwrap();
            let g = p.genus as i64;
            assert!(p.improvement >= g - 6 && p.improvement <= g - 3, "q={}", q);
            assert!(!p.k_positive);
            assert_eq!(p.k_plus_d, p.n as i64 + p.t - g + 2);
        }

        assert!(matches!(theorem_profile(3), Err(Error::Range(_))));
        assert!(matches!(theorem_profile(6), Err(Error::NotPrimePower(6))));
    }
}
