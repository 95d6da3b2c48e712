//! Rank verdicts for `J = Jac(X_{f,g})` over `Q̄(t^(1/q))`, `q = p^r`.
//!
//! The rank at layer `d` is `rk Hom(J_{f,d}, J_{g,d})^{mu_d} - c1*d + c2(d)`.
//! When `Hom(J_{f,q}, J_{g,q}) = 0` at every layer of the tower, `c1 = 0`
//! follows from one layer with `d > c2(d)` and the rank is exactly
//! `c2(m, n, q)`. Hom vanishing is established by one of two routes:
//!
//! * **CM route**: one side is a binomial `c*(y^n - a)`, so its Jacobians
//!   have CM, and the other side has Galois group containing `A_m`
//!   (`m >= 5`), or is `S_4` with an extra disjointness condition.
//! * **Degree route**: `m > n >= 4`, both Galois groups certified. Hom
//!   then has bounded rank, and vanishes outright unless `n = m - 1` and
//!   `p | m`.
//!
//! Every condition checked ends up as a [`HypothesisRecord`]; a verdict
//! can be audited after the fact with [`audit_verdict`].

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_poly::{rat_squarefree_part, ExactInt, ExactRat, UniPoly};
use crate::galois_cert::{certify_galois, replay, GaloisCertificate, GaloisError, GaloisVerdict};
use crate::jacobian_invariants::{berger_genus, c2, InvariantError, TowerLayer};
use crate::morse_scan::is_morse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<GaloisError> for RankError {
    fn from(e: GaloisError) -> Self {
        if e.is_internal() {
            RankError::Internal(e.to_string())
        } else {
            RankError::InvalidInput(e.to_string())
        }
    }
}

impl From<InvariantError> for RankError {
    fn from(e: InvariantError) -> Self {
        if e.is_internal() {
            RankError::Internal(e.to_string())
        } else {
            RankError::InvalidInput(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisRecord {
    pub name: String,
    pub status: Status,
    /// Whether an exact rank claim depends on this record holding.
    pub required: bool,
    pub evidence: BTreeMap<String, String>,
}

impl HypothesisRecord {
    fn new(name: &str, status: Status, required: bool, evidence: &[(&str, String)]) -> Self {
        let evidence: BTreeMap<String, String> = evidence
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        assert!(
            status != Status::Holds || !evidence.is_empty(),
            "hypothesis {name} holds without evidence"
        );
        HypothesisRecord {
            name: name.to_string(),
            status,
            required,
            evidence,
        }
    }

    fn optional(mut self) -> Self {
        self.required = false;
        self
    }
}

fn any_holds(records: &[HypothesisRecord]) -> Status {
    if records.iter().any(|r| r.status == Status::Holds) {
        Status::Holds
    } else if records.iter().all(|r| r.status == Status::Fails) {
        Status::Fails
    } else {
        Status::Unknown
    }
}

/// `Some(a)` when `g = c*(y^n - a)` with `a != 0`, `n >= 2`.
pub fn is_binomial_cm(g: &UniPoly) -> Option<ExactRat> {
    let n = g.degree()?;
    if n < 2 {
        return None;
    }
    let c = g.coeffs();
    if c[0].is_zero() || c[1..n].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(-&c[0] / &c[n])
}

fn p_star(p: u64) -> ExactInt {
    if p % 4 == 3 {
        -ExactInt::from(p)
    } else {
        ExactInt::from(p)
    }
}

/// Condition that `Q(sqrt(disc f))` is not the quadratic subfield
/// `Q(sqrt(p*))` of `Q(zeta_p)`.
pub fn quadratic_disjoint(f: &UniPoly, p: u64) -> HypothesisRecord {
    const NAME: &str = "quadratic-disjoint";
    let poly = ("polynomial", f.to_string());
    if p.is_multiple_of(2) {
        return HypothesisRecord::new(
            NAME,
            Status::Unknown,
            false,
            &[poly, ("p", "needs odd p".into())],
        );
    }
    let disc = match f.discriminant() {
        Ok(d) if !d.is_zero() => d,
        _ => {
            return HypothesisRecord::new(
                NAME,
                Status::Unknown,
                false,
                &[poly, ("disc", "0".into())],
            )
        }
    };
    let star = p_star(p);
    match rat_squarefree_part(&disc) {
        Ok(sf) => {
            let status = if sf != star {
                Status::Holds
            } else {
                Status::Fails
            };
            HypothesisRecord::new(
                NAME,
                status,
                false,
                &[
                    poly,
                    ("disc", disc.to_string()),
                    ("squarefree_part", sf.to_string()),
                    ("p_star", star.to_string()),
                ],
            )
        }
        Err(e) => HypothesisRecord::new(
            NAME,
            Status::Unknown,
            false,
            &[poly, ("disc", disc.to_string()), ("error", e.to_string())],
        ),
    }
}

/// `p` unramified in the splitting field of `f`, decided by `p` not
/// dividing `lc * disc` of the primitive integer model.
pub fn unramified_check(f: &UniPoly, p: u64) -> HypothesisRecord {
    const NAME: &str = "unramified";
    let (_, ints) = f.to_primitive_integer();
    let poly = ("polynomial", f.to_string());
    let disc = match f.integer_discriminant() {
        Ok(d) if !d.is_zero() => d,
        _ => {
            return HypothesisRecord::new(
                NAME,
                Status::Unknown,
                false,
                &[poly, ("disc", "0".into())],
            )
        }
    };
    let lc = ints.last().cloned().unwrap_or_default();
    let divides = (&disc * &lc % p).is_zero();
    let status = if divides {
        Status::Unknown
    } else {
        Status::Holds
    };
    HypothesisRecord::new(
        NAME,
        status,
        false,
        &[
            poly,
            ("integer_disc", disc.to_string()),
            ("leading_coeff", lc.to_string()),
            ("p", p.to_string()),
        ],
    )
}

/// Records and certificates produced by a Hom check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCheck {
    pub records: Vec<HypothesisRecord>,
    pub certificates: Vec<GaloisCertificate>,
}

impl HomCheck {
    pub fn status(&self, name: &str) -> Status {
        self.records
            .iter()
            .find(|r| r.name == name)
            .map_or(Status::Unknown, |r| r.status)
    }
}

/// Galois hypotheses on one side: `A_m` inside the group for `m >= 5`;
/// for `m = 4`, `S_4` plus odd `p` plus one of the two disjointness
/// conditions.
fn galois_side(
    role: &str,
    f: &UniPoly,
    p: u64,
    prime_bound: u64,
    out: &mut HomCheck,
) -> Result<Status, RankError> {
    let m = f.degree().unwrap_or(0);
    let name = format!("galois-{role}");
    if m < 4 {
        out.records.push(HypothesisRecord::new(
            &format!("degree-{role}-at-least-4"),
            Status::Fails,
            true,
            &[("degree", m.to_string())],
        ));
        return Ok(Status::Fails);
    }
    let cert = certify_galois(f, prime_bound)?;
    let verdict = cert.verdict;
    let status = match (m, verdict) {
        (4, GaloisVerdict::ProvenSymmetric) => Status::Holds,
        (4, GaloisVerdict::ProvenAlternating) => Status::Fails,
        (4, _) => Status::Unknown,
        (_, v) if v.contains_alternating() => Status::Holds,
        _ => Status::Unknown,
    };
    let want = if m == 4 { "S_4" } else { "contains A_m" };
    out.records.push(HypothesisRecord::new(
        &name,
        status,
        true,
        &[
            ("polynomial", f.to_string()),
            ("verdict", verdict.to_string()),
            ("needed", want.into()),
            ("prime_bound", prime_bound.to_string()),
        ],
    ));
    out.certificates.push(cert);
    if m > 4 {
        return Ok(status);
    }
    let odd = if p % 2 == 1 {
        Status::Holds
    } else {
        Status::Fails
    };
    out.records.push(HypothesisRecord::new(
        &format!("p-odd-for-quartic-{role}"),
        odd,
        true,
        &[("p", p.to_string())],
    ));
    let alternatives = [quadratic_disjoint(f, p), unramified_check(f, p)];
    let either = any_holds(&alternatives);
    let summary: String = alternatives
        .iter()
        .map(|r| format!("{}={}", r.name, r.status))
        .collect::<Vec<_>>()
        .join(", ");
    out.records.extend(alternatives);
    out.records.push(HypothesisRecord::new(
        &format!("quartic-{role}-disjoint-or-unramified"),
        either,
        true,
        &[("alternatives", summary)],
    ));
    Ok(match (status, odd, either) {
        (Status::Holds, Status::Holds, Status::Holds) => Status::Holds,
        (Status::Fails, _, _) | (_, Status::Fails, _) | (_, _, Status::Fails) => Status::Fails,
        _ => Status::Unknown,
    })
}

/// `Hom(J_{f,q}, J_{g,q}) = 0` for every `q = p^r` when `g` is binomial.
pub fn check_hom_vanishing_cm(
    f: &UniPoly,
    p: u64,
    prime_bound: u64,
) -> Result<HomCheck, RankError> {
    check_cm_route("f", f, p, prime_bound)
}

fn check_cm_route(
    role: &str,
    f: &UniPoly,
    p: u64,
    prime_bound: u64,
) -> Result<HomCheck, RankError> {
    let mut out = HomCheck {
        records: Vec::new(),
        certificates: Vec::new(),
    };
    let side = galois_side(role, f, p, prime_bound, &mut out)?;
    let basis = out
        .records
        .iter()
        .filter(|r| r.required)
        .map(|r| format!("{}={}", r.name, r.status))
        .collect::<Vec<_>>()
        .join(", ");
    out.records.push(HypothesisRecord::new(
        "hom-vanishing",
        side,
        true,
        &[("route", "cm".into()), ("basis", basis)],
    ));
    Ok(out)
}

/// Bounded Hom for `m > n >= 4`, with exact vanishing when `p` does not
/// divide `m` or `n != m - 1`.
pub fn check_hom_mgtn(
    f: &UniPoly,
    g: &UniPoly,
    p: u64,
    prime_bound: u64,
) -> Result<HomCheck, RankError> {
    check_degree_route(("f", f), ("g", g), p, prime_bound)
}

fn check_degree_route(
    big: (&str, &UniPoly),
    small: (&str, &UniPoly),
    p: u64,
    prime_bound: u64,
) -> Result<HomCheck, RankError> {
    let mut out = HomCheck {
        records: Vec::new(),
        certificates: Vec::new(),
    };
    let m = big.1.degree().unwrap_or(0) as u64;
    let n = small.1.degree().unwrap_or(0) as u64;
    let a = galois_side(big.0, big.1, p, prime_bound, &mut out)?;
    let b = galois_side(small.0, small.1, p, prime_bound, &mut out)?;
    let bounded = match (a, b) {
        (Status::Holds, Status::Holds) => Status::Holds,
        (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
        _ => Status::Unknown,
    };
    out.records.push(HypothesisRecord::new(
        "hom-bounded",
        bounded,
        true,
        &[
            ("route", "degree".into()),
            ("m", m.to_string()),
            ("n", n.to_string()),
        ],
    ));
    let exact_case = !m.is_multiple_of(p) || n + 1 != m;
    let vanishing = match (bounded, exact_case) {
        (Status::Holds, true) => Status::Holds,
        (Status::Holds, false) => Status::Fails,
        _ => Status::Unknown,
    };
    out.records.push(
        HypothesisRecord::new(
            "hom-vanishing",
            vanishing,
            false,
            &[
                ("route", "degree".into()),
                ("p_divides_m", m.is_multiple_of(p).to_string()),
                ("n_equals_m_minus_1", (n + 1 == m).to_string()),
            ],
        )
        .optional(),
    );
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankKind {
    ExactRank,
    UpperBoundPlusConstant,
    Inconclusive,
}

impl fmt::Display for RankKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankVerdict {
    pub f: UniPoly,
    pub g: UniPoly,
    pub m: u64,
    pub n: u64,
    pub genus: u64,
    pub layer: TowerLayer,
    pub kind: RankKind,
    /// Exact rank, present only for `ExactRank`.
    pub rank: Option<u64>,
    /// Symbolic bound, present only for `UpperBoundPlusConstant`.
    pub bound: Option<String>,
    pub c2_value: u64,
    pub hypotheses: Vec<HypothesisRecord>,
    pub certificates: Vec<GaloisCertificate>,
    #[serde(rename = "trace_Kd_zero")]
    pub trace_kd_zero: bool,
    pub trace_geometric_zero: Status,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Route {
    Cm,
    Degree,
    None,
}

/// Everything about `(f, g, p)` that does not depend on `r`.
#[derive(Debug, Clone)]
pub struct TowerAnalysis {
    f: UniPoly,
    g: UniPoly,
    p: u64,
    m: u64,
    n: u64,
    genus: u64,
    route: Route,
    records: Vec<HypothesisRecord>,
    certificates: Vec<GaloisCertificate>,
    trace_geometric_zero: Status,
    notes: Vec<String>,
}

fn validate(f: &UniPoly, g: &UniPoly) -> Result<(), RankError> {
    for (role, h) in [("f", f), ("g", g)] {
        if h.degree().unwrap_or(0) < 2 {
            return Err(RankError::InvalidInput(format!(
                "{role} = {h} must have degree at least 2"
            )));
        }
        if !h.is_squarefree() {
            return Err(RankError::InvalidInput(format!(
                "{role} = {h} has a repeated root"
            )));
        }
    }
    if f.var() == g.var() {
        return Err(RankError::InvalidInput(format!(
            "f and g must use distinct variables, both are in {}",
            f.var().unwrap_or("?")
        )));
    }
    Ok(())
}

fn is_cubic_elliptic_pair(f: &UniPoly, g: &UniPoly) -> bool {
    let c = f.coeffs();
    f.degree() == Some(3)
        && f.coeffs() == g.coeffs()
        && c[3] == ExactRat::from_integer(1.into())
        && c[2].is_zero()
        && c[1] == ExactRat::from_integer((-1).into())
}

impl TowerAnalysis {
    pub fn new(f: &UniPoly, g: &UniPoly, p: u64, prime_bound: u64) -> Result<Self, RankError> {
        validate(f, g)?;
        TowerLayer::new(p, 0)?;
        let m = f.degree().unwrap() as u64;
        let n = g.degree().unwrap() as u64;
        let mut a = TowerAnalysis {
            f: f.clone(),
            g: g.clone(),
            p,
            m,
            n,
            genus: berger_genus(m, n)?,
            route: Route::None,
            records: Vec::new(),
            certificates: Vec::new(),
            trace_geometric_zero: Status::Unknown,
            notes: Vec::new(),
        };

        let f_cm = is_binomial_cm(f);
        let g_cm = is_binomial_cm(g);
        let check = match (&f_cm, &g_cm) {
            (None, Some(b)) => Some(a.cm_route(("f", f), ("g", g, b), prime_bound)?),
            (Some(b), None) => Some(a.cm_route(("g", g), ("f", f, b), prime_bound)?),
            (Some(_), Some(_)) => {
                a.notes.push(
                    "both sides are binomials; both Jacobians have CM and Hom need not vanish"
                        .into(),
                );
                None
            }
            (None, None) => {
                let (big, small) = if m >= n {
                    (("f", f), ("g", g))
                } else {
                    (("g", g), ("f", f))
                };
                let (bm, sm) = (m.max(n), m.min(n));
                if bm > sm && sm >= 4 {
                    a.route = Route::Degree;
                    if m < n {
                        a.notes
                            .push("deg g > deg f: roles exchanged for the degree route".into());
                    }
                    Some(check_degree_route(big, small, p, prime_bound)?)
                } else {
                    a.notes.push(format!(
                        "no Hom vanishing criterion for degrees ({m}, {n}) without a binomial side"
                    ));
                    None
                }
            }
        };
        if let Some(check) = check {
            let at = a
                .records
                .iter()
                .position(|r| r.name == "geometric-trace-zero")
                .unwrap_or(a.records.len());
            a.records.splice(at..at, check.records);
            a.certificates.extend(check.certificates);
        }
        if m == 3 || n == 3 {
            if is_cubic_elliptic_pair(f, g) {
                a.notes.push(
                    "elliptic configuration f = g = x^3 - x - b: rank is bounded, no value claimed"
                        .into(),
                );
            }
            a.notes.push(
                "cubic side: endomorphisms of its Jacobians are not controlled by the Galois group"
                    .into(),
            );
        }
        Ok(a)
    }

    fn cm_route(
        &mut self,
        other: (&str, &UniPoly),
        binomial: (&str, &UniPoly, &ExactRat),
        prime_bound: u64,
    ) -> Result<HomCheck, RankError> {
        self.route = Route::Cm;
        if other.0 == "g" {
            self.notes.push(
                "f is the binomial side; roles exchanged (Hom vanishing is symmetric)".into(),
            );
        }
        self.records.push(HypothesisRecord::new(
            &format!("binomial-{}", binomial.0),
            Status::Holds,
            false,
            &[
                ("polynomial", binomial.1.to_string()),
                ("a", binomial.2.to_string()),
            ],
        ));
        let check = check_cm_route(other.0, other.1, self.p, prime_bound)?;
        let side_deg = other.1.degree().unwrap_or(0);
        let contains_a = check
            .certificates
            .first()
            .is_some_and(|c| c.verdict.contains_alternating());
        if binomial.1.degree() == Some(2) && side_deg >= 5 && contains_a {
            let morse = is_morse(other.1);
            self.trace_geometric_zero = if morse.is_morse {
                Status::Holds
            } else {
                Status::Unknown
            };
            self.records.push(
                HypothesisRecord::new(
                    "geometric-trace-zero",
                    self.trace_geometric_zero,
                    false,
                    &[
                        ("morse", morse.is_morse.to_string()),
                        ("critical_value_poly", morse.critical_value_poly.to_string()),
                    ],
                )
                .optional(),
            );
        }
        Ok(check)
    }

    fn status(&self, name: &str) -> Status {
        self.records
            .iter()
            .find(|r| r.name == name)
            .map_or(Status::Unknown, |r| r.status)
    }

    /// Smallest `r'` with `p^r' > (m-1)(n-1) + gcd(m,n) - 1`.
    fn c1_witness(&self) -> (u32, u64) {
        let top = (self.m - 1) * (self.n - 1) + self.m.gcd(&self.n) - 1;
        let mut r = 0;
        let mut d = 1u64;
        while d <= top {
            d *= self.p;
            r += 1;
        }
        (r, d)
    }

    pub fn verdict(&self, r: u32) -> Result<RankVerdict, RankError> {
        let layer = TowerLayer::new(self.p, r)?;
        let c2_value = c2(self.m, self.n, layer.q);
        let mut hypotheses = self.records.clone();
        let mut notes = self.notes.clone();

        let vanishing = self.status("hom-vanishing");
        let bounded = self.route == Route::Degree && self.status("hom-bounded") == Status::Holds;
        if vanishing == Status::Holds {
            let (rw, d) = self.c1_witness();
            let c2_at = c2(self.m, self.n, d);
            assert!(d > c2_at, "c1 witness layer too small");
            hypotheses.push(HypothesisRecord::new(
                "c1-zero",
                Status::Holds,
                true,
                &[
                    ("witness_r", rw.to_string()),
                    ("witness_d", d.to_string()),
                    ("c2_at_witness", c2_at.to_string()),
                ],
            ));
        }
        let (kind, rank, bound) = if vanishing == Status::Holds {
            (RankKind::ExactRank, Some(c2_value), None)
        } else if bounded {
            (
                RankKind::UpperBoundPlusConstant,
                None,
                Some(format!("{c2_value} + eps (eps independent of p and q)")),
            )
        } else {
            (RankKind::Inconclusive, None, None)
        };

        let binomial_quadratic = (self.n == 2 && is_binomial_cm(&self.g).is_some())
            || (self.m == 2 && is_binomial_cm(&self.f).is_some());
        let other = self.m.max(self.n);
        if binomial_quadratic && other.is_multiple_of(2) && other > 2 {
            notes.push(format!(
                "even-degree family: general evaluation gives c2 = 2g_X+gcd(q,2) = {c2_value}; \
                 the closed form 2g_X+gcd(q,2)-1 would give {}. Reporting {c2_value}.",
                c2_value - 1
            ));
        }
        if kind == RankKind::ExactRank && binomial_quadratic && other % 2 == 1 {
            debug_assert_eq!(c2_value, 2 * self.genus);
        }

        Ok(RankVerdict {
            f: self.f.clone(),
            g: self.g.clone(),
            m: self.m,
            n: self.n,
            genus: self.genus,
            layer,
            kind,
            rank,
            bound,
            c2_value,
            hypotheses,
            certificates: self.certificates.clone(),
            trace_kd_zero: kind == RankKind::ExactRank,
            trace_geometric_zero: self.trace_geometric_zero,
            notes,
        })
    }
}

pub fn rank_verdict(
    f: &UniPoly,
    g: &UniPoly,
    p: u64,
    r: u32,
    prime_bound: u64,
) -> Result<RankVerdict, RankError> {
    TowerAnalysis::new(f, g, p, prime_bound)?.verdict(r)
}

/// Verdicts for `r = 0..=r_max`; Galois certification runs once.
pub fn rank_table(
    f: &UniPoly,
    g: &UniPoly,
    p: u64,
    r_max: u32,
    prime_bound: u64,
) -> Result<Vec<RankVerdict>, RankError> {
    let analysis = TowerAnalysis::new(f, g, p, prime_bound)?;
    (0..=r_max)
        .into_par_iter()
        .map(|r| analysis.verdict(r))
        .collect()
}

/// Independent consistency check of a verdict: recorded certificates
/// replay, exact claims rest on held hypotheses, numbers match `c2`.
pub fn audit_verdict(v: &RankVerdict) -> Result<(), String> {
    for cert in &v.certificates {
        replay(cert).map_err(|e| format!("{}: {e}", cert.polynomial))?;
    }
    for h in &v.hypotheses {
        if h.status == Status::Holds && h.evidence.is_empty() {
            return Err(format!("{} holds without evidence", h.name));
        }
    }
    if v.c2_value != c2(v.m, v.n, v.layer.q) {
        return Err("c2_value does not match c2(m, n, q)".into());
    }
    let holds = |name: &str| {
        v.hypotheses
            .iter()
            .any(|h| h.name == name && h.status == Status::Holds)
    };
    match v.kind {
        RankKind::ExactRank => {
            if let Some(h) = v
                .hypotheses
                .iter()
                .find(|h| h.required && h.status != Status::Holds)
            {
                return Err(format!("exact rank with {} = {}", h.name, h.status));
            }
            if !holds("hom-vanishing") || !holds("c1-zero") {
                return Err("exact rank without Hom vanishing and c1 = 0".into());
            }
            if v.rank != Some(v.c2_value) {
                return Err("exact rank differs from c2".into());
            }
        }
        RankKind::UpperBoundPlusConstant => {
            if !holds("hom-bounded") || v.rank.is_some() {
                return Err("upper bound without bounded Hom".into());
            }
        }
        RankKind::Inconclusive => {
            if v.rank.is_some() {
                return Err("inconclusive verdict carries a rank".into());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::parse_poly;

    fn p(s: &str) -> UniPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn binomial_detection() {
        assert_eq!(
            is_binomial_cm(&p("y^2-1")),
            Some(ExactRat::from_integer(1.into()))
        );
        assert_eq!(
            is_binomial_cm(&p("y^3-1")),
            Some(ExactRat::from_integer(1.into()))
        );
        assert_eq!(is_binomial_cm(&p("y^3-y-1")), None);
        assert_eq!(is_binomial_cm(&p("y^3")), None);
        assert_eq!(
            is_binomial_cm(&p("2y^4+6")),
            Some(ExactRat::from_integer((-3).into()))
        );
    }

    #[test]
    fn quadratic_disjointness() {
        assert_eq!(quadratic_disjoint(&p("x^4-x+2"), 43).status, Status::Holds);
        let r = quadratic_disjoint(&p("x^4-x-1"), 283);
        assert_eq!(r.status, Status::Fails);
        assert_eq!(r.evidence["p_star"], "-283");
        assert_eq!(quadratic_disjoint(&p("x^4-x-1"), 3).status, Status::Holds);
    }

    #[test]
    fn unramified() {
        assert_eq!(unramified_check(&p("x^4-x-1"), 5).status, Status::Holds);
        assert_eq!(unramified_check(&p("x^4-x-1"), 283).status, Status::Unknown);
        assert_eq!(unramified_check(&p("x^4-x+2"), 43).status, Status::Unknown);
    }

    #[test]
    fn cm_hom_checks() {
        let c = check_hom_vanishing_cm(&p("x^5-x-1"), 2, 200).unwrap();
        assert_eq!(c.status("hom-vanishing"), Status::Holds);
        let c = check_hom_vanishing_cm(&p("x^4-x-1"), 283, 200).unwrap();
        assert_ne!(c.status("hom-vanishing"), Status::Holds);
        assert_eq!(c.status("quadratic-disjoint"), Status::Fails);
        assert_eq!(c.status("unramified"), Status::Unknown);
        let c = check_hom_vanishing_cm(&p("x^4-x-1"), 2, 200).unwrap();
        assert_eq!(c.status("p-odd-for-quartic-f"), Status::Fails);
        assert_eq!(c.status("hom-vanishing"), Status::Fails);
    }

    #[test]
    fn degree_route_cases() {
        let f7 = p("x^7-x-1");
        let g5 = p("y^5-y-1");
        let f6 = p("x^6-x-1");
        let c = check_hom_mgtn(&f7, &g5, 3, 200).unwrap();
        assert_eq!(c.status("hom-vanishing"), Status::Holds);
        let c = check_hom_mgtn(&f6, &g5, 5, 200).unwrap();
        assert_eq!(c.status("hom-vanishing"), Status::Holds);
        let c = check_hom_mgtn(&f6, &g5, 2, 200).unwrap();
        assert_eq!(c.status("hom-bounded"), Status::Holds);
        assert_eq!(c.status("hom-vanishing"), Status::Fails);
        let v = rank_verdict(&f6, &g5, 2, 1, 200).unwrap();
        assert_eq!(v.kind, RankKind::UpperBoundPlusConstant);
        assert!(audit_verdict(&v).is_ok());
    }

    #[test]
    fn main_family_verdicts() {
        let (f, g) = (p("x^5-x-1"), p("y^2-1"));
        for (pr, r) in [(7, 2), (2, 0)] {
            let v = rank_verdict(&f, &g, pr, r, 200).unwrap();
            assert_eq!(v.kind, RankKind::ExactRank);
            assert_eq!(v.rank, Some(4));
            assert_eq!(v.trace_geometric_zero, Status::Holds);
            assert!(audit_verdict(&v).is_ok());
        }
        let v = rank_verdict(&f, &p("y^3-1"), 5, 1, 200).unwrap();
        assert_eq!(v.rank, Some(8));
    }

    #[test]
    fn excluded_prime_is_inconclusive() {
        let v = rank_verdict(&p("x^4-x-1"), &p("y^2-1"), 283, 1, 200).unwrap();
        assert_eq!(v.kind, RankKind::Inconclusive);
        assert!(audit_verdict(&v).is_ok());
        let v = rank_verdict(&p("x^4-x-1"), &p("y^2-1"), 3, 1, 200).unwrap();
        assert_eq!(v.kind, RankKind::ExactRank);
    }

    #[test]
    fn even_degree_note() {
        let v = rank_verdict(&p("x^6-x-1"), &p("y^2-1"), 3, 1, 200).unwrap();
        assert_eq!(v.rank, Some(5));
        assert!(v.notes.iter().any(|n| n.contains("2g_X+gcd(q,2)-1")));
    }

    #[test]
    fn swapped_roles() {
        let v = rank_verdict(&p("x^2-1"), &p("y^5-y-1"), 7, 1, 200).unwrap();
        assert_eq!(v.rank, Some(4));
        assert!(v.notes.iter().any(|n| n.contains("roles exchanged")));
    }

    #[test]
    fn tables() {
        let t = rank_table(&p("x^5-x-1"), &p("y^5-1"), 5, 2, 200).unwrap();
        assert_eq!(
            t.iter().map(|v| v.rank).collect::<Vec<_>>(),
            vec![Some(16), Some(20), Some(20)]
        );
        let t = rank_table(&p("x^5-x-1"), &p("y^2-1"), 3, 0, 200).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn invalid_inputs() {
        let e = rank_verdict(&p("x^5-x-1"), &p("x^2-1"), 7, 1, 200).unwrap_err();
        assert!(matches!(e, RankError::InvalidInput(ref s) if s.contains("distinct variables")));
        assert!(rank_verdict(&p("(x-1)^2(x+1)"), &p("y^2-1"), 7, 1, 200).is_err());
        assert!(rank_verdict(&p("x^5-x-1"), &p("y^2-1"), 9, 1, 200).is_err());
    }

    #[test]
    fn cubic_is_inconclusive() {
        let v = rank_verdict(&p("x^3-x-2"), &p("y^3-y-2"), 5, 1, 200).unwrap();
        assert_eq!(v.kind, RankKind::Inconclusive);
        assert!(v.notes.iter().any(|n| n.contains("elliptic configuration")));
        let v = rank_verdict(&p("x^3-x-1"), &p("y^2-1"), 5, 1, 200).unwrap();
        assert_eq!(v.kind, RankKind::Inconclusive);
    }
}
