//! Morse polynomials and the specialization set `A(h)`.
//!
//! `h` is Morse when `h'` has distinct roots and `h` takes distinct values
//! on them; then `Gal(h(x) - t / Q(t)) = S_m`. Both conditions are read off
//! `D(t) = Res_x(h(x) - t, h'(x))`, whose roots are the critical values:
//! `D` is squarefree of degree `m - 1` exactly when `h` is Morse.
//!
//! `A(h)` is the set of integers `c` with `Gal(h(x) - c / Q) = S_m`.
//! Membership is proven by a Galois certificate and disproven by a rational
//! root, a repeated root or a square discriminant; anything else stays
//! unproven.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact_poly::subresultant::{subresultant_prs, IntPoly};
use crate::exact_poly::{
    divisors, is_rational_square, rat_squarefree_part, serde_exact, ExactInt, ExactRat, UniPoly,
};
use crate::galois_cert::{certify_galois, GaloisCertificate, GaloisVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseReport {
    pub h: UniPoly,
    pub derivative_squarefree: bool,
    pub critical_value_disc_squarefree: bool,
    pub is_morse: bool,
    /// `Res_x(H(x) - t, H'(x))` for the primitive integer model `H` of `h`.
    pub critical_value_poly: UniPoly,
}

/// `Res_x(H(x) - t, H'(x))` as a polynomial in `t`.
fn critical_value_poly(ints: &[BigInt]) -> UniPoly {
    let mut a: Vec<IntPoly> = ints.iter().map(|c| IntPoly::new(vec![c.clone()])).collect();
    a[0] = IntPoly::new(vec![ints[0].clone(), -BigInt::one()]);
    let b: Vec<IntPoly> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| IntPoly::new(vec![c * BigInt::from(k)]))
        .collect();
    let res = subresultant_prs(&a, &b).resultant;
    UniPoly::from_int_coeffs(Some("t"), &res.0)
}

pub fn is_morse(h: &UniPoly) -> MorseReport {
    let m = h.degree().unwrap_or(0);
    if m < 2 {
        return MorseReport {
            h: h.clone(),
            derivative_squarefree: false,
            critical_value_disc_squarefree: false,
            is_morse: false,
            critical_value_poly: UniPoly::zero(Some("t")),
        };
    }
    let (_, ints) = h.to_primitive_integer();
    let d = critical_value_poly(&ints);
    assert_eq!(
        d.degree(),
        Some(m - 1),
        "critical value polynomial of {h} has the wrong degree"
    );
    let derivative_squarefree = h.derivative().is_squarefree();
    let critical_value_disc_squarefree = d.is_squarefree();
    MorseReport {
        h: h.clone(),
        derivative_squarefree,
        critical_value_disc_squarefree,
        is_morse: derivative_squarefree && critical_value_disc_squarefree,
        critical_value_poly: d,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Proven,
    Disproven,
    Unproven,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub c: i64,
    #[serde(rename = "in_A_h")]
    pub in_a_h: bool,
    pub membership: Membership,
    pub reason: String,
    /// Squarefree part of `disc(h - c)`; the quadratic subfield of its
    /// splitting field is `Q(sqrt(quad_tag))`.
    #[serde(with = "serde_exact::opt_int")]
    pub quad_tag: Option<ExactInt>,
    pub certificate: Option<GaloisCertificate>,
}

fn rational_root(f: &UniPoly) -> Option<ExactRat> {
    let (_, ints) = f.to_primitive_integer();
    if ints[0].is_zero() {
        return Some(ExactRat::zero());
    }
    let num = divisors(&ints[0].abs()).ok()?;
    let den = divisors(&ints.last()?.abs()).ok()?;
    for a in &num {
        for b in &den {
            for s in [a.clone(), -a.clone()] {
                let r = ExactRat::new(s, b.clone());
                if f.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn scan_one(h: &UniPoly, c: i64, prime_bound: u64) -> ScanResult {
    let f = h
        .try_sub(&UniPoly::constant(ExactRat::from_integer(c.into())))
        .expect("constant has no variable");
    let result = |membership, reason: String, quad_tag, certificate| ScanResult {
        c,
        in_a_h: membership == Membership::Proven,
        membership,
        reason,
        quad_tag,
        certificate,
    };
    if !f.is_squarefree() {
        return result(
            Membership::Disproven,
            "h - c has a repeated root".into(),
            None,
            None,
        );
    }
    let disc = f.discriminant().expect("degree is at least 2");
    let quad_tag = rat_squarefree_part(&disc).ok();
    let cert = match certify_galois(&f, prime_bound) {
        Ok(cert) => cert,
        Err(e) => return result(Membership::Unproven, format!("error: {e}"), quad_tag, None),
    };
    if cert.verdict == GaloisVerdict::ProvenSymmetric {
        return result(
            Membership::Proven,
            "Galois group certified symmetric".into(),
            quad_tag,
            Some(cert),
        );
    }
    let (membership, reason) = if is_rational_square(&disc) {
        (
            Membership::Disproven,
            "discriminant is a square".to_string(),
        )
    } else if let Some(r) = rational_root(&f) {
        (Membership::Disproven, format!("rational root {r}"))
    } else {
        (
            Membership::Unproven,
            format!("no certificate below {prime_bound}"),
        )
    };
    result(membership, reason, quad_tag, Some(cert))
}

/// Classifies every integer `c` in `c_min..=c_max`, in order.
pub fn scan_a_h(h: &UniPoly, c_min: i64, c_max: i64, prime_bound: u64) -> Vec<ScanResult> {
    if h.degree().unwrap_or(0) < 2 || c_min > c_max {
        return Vec::new();
    }
    (c_min..=c_max)
        .into_par_iter()
        .map(|c| scan_one(h, c, prime_bound))
        .collect()
}

/// Pairs `(c, c')` whose tags differ.
pub fn pairs_with_distinct_tags(rows: &[(i64, ExactInt)]) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for (i, (c, a)) in rows.iter().enumerate() {
        for (c2, b) in &rows[i + 1..] {
            if a != b {
                out.push((*c, *c2));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointnessReport {
    pub pairs: Vec<(i64, i64)>,
    pub warnings: Vec<String>,
}

/// Pairs of members of `A(h)` with linearly disjoint splitting fields.
///
/// For two `S_m` extensions the only possible common subfield besides `Q`
/// is the quadratic one when `m != 4`, so distinct quadratic subfields
/// suffice. For `m = 4` the common `S_3` quotient defeats this test and no
/// pairs are reported.
pub fn disjointness_filter(results: &[ScanResult]) -> DisjointnessReport {
    let mut warnings = Vec::new();
    let mut tagged = Vec::new();
    for row in results {
        if !row.in_a_h {
            warnings.push(format!("c = {} skipped: not proven in A(h)", row.c));
            continue;
        }
        match &row.quad_tag {
            Some(tag) => tagged.push((row.c, tag.clone())),
            None => warnings.push(format!(
                "c = {} skipped: discriminant could not be factored",
                row.c
            )),
        }
    }
    let degree = results
        .iter()
        .find_map(|r| r.certificate.as_ref().map(|c| c.degree()));
    if degree == Some(4) {
        warnings.push("degree 4: quadratic subfields do not decide disjointness".into());
        return DisjointnessReport {
            pairs: Vec::new(),
            warnings,
        };
    }
    DisjointnessReport {
        pairs: pairs_with_distinct_tags(&tagged),
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::parse_poly;

    fn p(s: &str) -> UniPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn quintic_is_morse() {
        let r = is_morse(&p("x^5-x"));
        assert!(r.is_morse);
        assert_eq!(r.critical_value_poly, parse_poly("3125t^4-256").unwrap());
    }

    #[test]
    fn symmetric_critical_values_fail() {
        let r = is_morse(&p("x^4-2x^2"));
        assert!(r.derivative_squarefree);
        assert!(!r.critical_value_disc_squarefree);
        assert!(!r.is_morse);
        assert_eq!(
            r.critical_value_poly,
            parse_poly("-256t^3-512t^2-256t").unwrap()
        );
    }

    #[test]
    fn degenerate_critical_point_fails() {
        let r = is_morse(&p("x^3"));
        assert!(!r.derivative_squarefree);
        assert!(!r.is_morse);
        assert_eq!(r.critical_value_poly, parse_poly("27t^2").unwrap());
        assert!(!is_morse(&p("x")).is_morse);
    }

    #[test]
    fn quadratics_are_morse() {
        assert!(is_morse(&p("x^2+3x+1")).is_morse);
        assert!(is_morse(&p("x^2/2+1")).is_morse);
    }

    #[test]
    fn scan_members_and_non_members() {
        let rows = scan_a_h(&p("x^4-x"), -3, 3, 200);
        assert_eq!(
            rows.iter().map(|r| r.c).collect::<Vec<_>>(),
            (-3..=3).collect::<Vec<_>>()
        );
        let at = |c: i64| rows.iter().find(|r| r.c == c).unwrap();
        assert!(at(1).in_a_h);
        assert!(at(-2).in_a_h);
        assert_eq!(at(0).membership, Membership::Disproven);
        assert!(at(0).reason.contains("rational root"));
    }

    #[test]
    fn repeated_roots_are_disproven() {
        // x^2 - 2x - c has a double root at c = -1
        let rows = scan_a_h(&p("x^2-2x"), -1, -1, 50);
        assert_eq!(rows[0].membership, Membership::Disproven);
        assert!(rows[0].quad_tag.is_none());
    }

    #[test]
    fn distinct_tag_pairs() {
        let rows = [(0, BigInt::from(2021)), (1, BigInt::from(-283))];
        assert_eq!(pairs_with_distinct_tags(&rows), vec![(0, 1)]);
        let rows = [
            (0, BigInt::from(5)),
            (1, BigInt::from(5)),
            (2, BigInt::from(7)),
        ];
        assert_eq!(pairs_with_distinct_tags(&rows), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn filter_skips_degree_four_and_non_members() {
        let rows = scan_a_h(&p("x^4-x"), -2, 1, 200);
        let rep = disjointness_filter(&rows);
        assert!(rep.pairs.is_empty());
        assert!(rep.warnings.iter().any(|w| w.contains("degree 4")));

        let rows = scan_a_h(&p("x^5-x"), 1, 3, 200);
        assert!(rows.iter().all(|r| r.in_a_h));
        let rep = disjointness_filter(&rows);
        assert!(!rep.pairs.is_empty());
    }
}
