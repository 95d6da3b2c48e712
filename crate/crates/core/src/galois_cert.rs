//! Sound but incomplete certification that `Gal(f/Q)` is `S_m` or `A_m`.
//!
//! By Dedekind's theorem, for a prime `p` not dividing `lc(f) * disc(f)` the
//! factor degrees of `f mod p` are the cycle type of a Frobenius element of
//! `Gal(f)`. A fixed set of classical group-theoretic rules turns sampled
//! cycle types into facts about the group:
//!
//! | rule          | premises                                   | conclusion            |
//! |---------------|--------------------------------------------|-----------------------|
//! | `R-trans`     | a pattern `{m}`                            | transitive            |
//! | `R-trans2`    | subset-sum sets of patterns meet in `{0,m}`| transitive            |
//! | `R-transpo`   | one part `2`, every other part odd         | contains transposition|
//! | `R-mcycle`    | pattern `{m}` or `{1, m-1}`                | `m`- / `(m-1)`-cycle  |
//! | `R-jordan`    | transitive, prime part `m/2 < l < m-2`     | contains `A_m`        |
//! | `R-prime-deg` | `m` prime, transitive, transposition       | `S_m`                 |
//! | `R-classic`   | transitive, transposition, `(m-1)`-cycle   | `S_m`                 |
//! | `R-s4`        | `m = 4`, transitive, transposition, 4- and 3-cycle | `S_4`         |
//! | `R-sign`      | contains `A_m`, discriminant (non)square   | `S_m` / `A_m`         |
//!
//! Certificates record every rule firing with the primes it consumed, and
//! [`replay`] re-derives the verdict from the recorded observations alone.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_poly::{
    is_prime_u64, is_rational_square, primes_up_to, serde_exact, ExactRat, PolyError, UniPoly,
};
use crate::modp_factor::{degree_pattern, reduce_mod_p, DegreePattern, ModpError};
use crate::morse_scan::is_morse;

pub const DEFAULT_PRIME_BOUND: u64 = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("polynomial has a repeated root (discriminant 0)")]
    NotSquarefree,
    #[error("polynomial of degree {0} is too small")]
    DegreeTooSmall(usize),
    #[error("discriminant is a square but p = {p} gives odd cycle type {pattern}")]
    DiscSquareInconsistency { p: u64, pattern: DegreePattern },
    #[error(transparent)]
    Modp(#[from] ModpError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl GaloisError {
    /// Errors that can only come from a bug in this crate.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            GaloisError::DiscSquareInconsistency { .. } | GaloisError::Modp(_)
        )
    }
}

/// Frobenius cycle type at an unramified prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleTypeObservation {
    pub p: u64,
    pub pattern: DegreePattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "R-trans")]
    Trans,
    #[serde(rename = "R-trans2")]
    Trans2,
    #[serde(rename = "R-transpo")]
    Transpo,
    #[serde(rename = "R-mcycle")]
    MCycle,
    #[serde(rename = "R-jordan")]
    Jordan,
    #[serde(rename = "R-prime-deg")]
    PrimeDeg,
    #[serde(rename = "R-classic")]
    Classic,
    #[serde(rename = "R-s4")]
    S4,
    #[serde(rename = "R-sign")]
    Sign,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Trans => "R-trans",
            Rule::Trans2 => "R-trans2",
            Rule::Transpo => "R-transpo",
            Rule::MCycle => "R-mcycle",
            Rule::Jordan => "R-jordan",
            Rule::PrimeDeg => "R-prime-deg",
            Rule::Classic => "R-classic",
            Rule::S4 => "R-s4",
            Rule::Sign => "R-sign",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "fact", rename_all = "kebab-case")]
pub enum Fact {
    Transitive,
    Transposition,
    Cycle { length: usize },
    ContainsAlternating,
    Symmetric,
    Alternating,
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Transitive => f.write_str("transitive"),
            Fact::Transposition => f.write_str("transposition"),
            Fact::Cycle { length } => write!(f, "{length}-cycle"),
            Fact::ContainsAlternating => f.write_str("contains A_m"),
            Fact::Symmetric => f.write_str("S_m"),
            Fact::Alternating => f.write_str("A_m"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleFiring {
    pub rule: Rule,
    /// Primes of the observations consumed.
    pub primes: Vec<u64>,
    pub premises: Vec<Fact>,
    pub conclusion: Fact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GaloisVerdict {
    ProvenSymmetric,
    ProvenAlternating,
    ProvenContainsAlternating,
    Inconclusive,
}

impl GaloisVerdict {
    pub fn contains_alternating(self) -> bool {
        !matches!(self, GaloisVerdict::Inconclusive)
    }
}

impl fmt::Display for GaloisVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisCertificate {
    pub polynomial: UniPoly,
    pub prime_bound: u64,
    #[serde(with = "serde_exact::rational")]
    pub disc: ExactRat,
    pub disc_is_square: bool,
    pub observations: Vec<CycleTypeObservation>,
    pub rules_fired: Vec<RuleFiring>,
    pub verdict: GaloisVerdict,
}

impl GaloisCertificate {
    pub fn degree(&self) -> usize {
        self.polynomial.degree().unwrap_or(0)
    }
}

/// Frobenius cycle types at every prime `p <= prime_bound` with
/// `p` not dividing `lc * disc` of the primitive integer model of `f`.
pub fn sample_cycle_types(
    f: &UniPoly,
    prime_bound: u64,
) -> Result<Vec<CycleTypeObservation>, GaloisError> {
    let m = f.degree().unwrap_or(0);
    if m < 1 {
        return Err(GaloisError::DegreeTooSmall(m));
    }
    let (_, ints) = f.to_primitive_integer();
    let model = UniPoly::from_int_coeffs(f.var(), &ints);
    let disc = model.integer_discriminant()?;
    if disc.is_zero() {
        return Err(GaloisError::NotSquarefree);
    }
    let bad = disc * ints.last().unwrap();
    let mut out = Vec::new();
    for p in primes_up_to(prime_bound) {
        if (&bad % p).is_zero() {
            continue;
        }
        let pattern = degree_pattern(&reduce_mod_p(&model, p)?)?;
        out.push(CycleTypeObservation { p, pattern });
    }
    Ok(out)
}

fn is_transposition_source(pat: &DegreePattern) -> bool {
    let twos = pat.parts().iter().filter(|&&k| k == 2).count();
    twos == 1 && pat.parts().iter().all(|&k| k == 2 || k % 2 == 1)
}

/// Prime part `l` with `m/2 < l < m - 2`; its power by the lcm of the
/// other (smaller, hence coprime) parts is an `l`-cycle.
fn jordan_prime(pat: &DegreePattern, m: usize) -> Option<usize> {
    pat.parts()
        .iter()
        .copied()
        .find(|&l| 2 * l > m && l + 2 < m && is_prime_u64(l as u64))
}

/// Degrees of all sub-products of the factors in `pat`.
fn subset_sums(pat: &DegreePattern, m: usize) -> Vec<bool> {
    let mut reach = vec![false; m + 1];
    reach[0] = true;
    for &k in pat.parts() {
        for s in (k..=m).rev() {
            if reach[s - k] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn only_trivial_degrees(reach: &[bool]) -> bool {
    let m = reach.len() - 1;
    reach
        .iter()
        .enumerate()
        .all(|(s, &r)| r == (s == 0 || s == m))
}

struct Derivation {
    facts: Vec<Fact>,
    firings: Vec<RuleFiring>,
}

impl Derivation {
    fn has(&self, f: Fact) -> bool {
        self.facts.contains(&f)
    }

    fn fire(&mut self, rule: Rule, primes: Vec<u64>, premises: Vec<Fact>, conclusion: Fact) {
        self.firings.push(RuleFiring {
            rule,
            primes,
            premises,
            conclusion,
        });
        self.facts.push(conclusion);
    }

    fn verdict(&self) -> GaloisVerdict {
        verdict_from(&self.facts)
    }
}

fn verdict_from(facts: &[Fact]) -> GaloisVerdict {
    if facts.contains(&Fact::Symmetric) {
        GaloisVerdict::ProvenSymmetric
    } else if facts.contains(&Fact::Alternating) {
        GaloisVerdict::ProvenAlternating
    } else if facts.contains(&Fact::ContainsAlternating) {
        GaloisVerdict::ProvenContainsAlternating
    } else {
        GaloisVerdict::Inconclusive
    }
}

/// Applies the rule set to the cycle types seen up to `prime_bound`.
pub fn certify_galois(f: &UniPoly, prime_bound: u64) -> Result<GaloisCertificate, GaloisError> {
    let m = f.degree().unwrap_or(0);
    if m < 2 {
        return Err(GaloisError::DegreeTooSmall(m));
    }
    let disc = f.discriminant()?;
    if disc.is_zero() {
        return Err(GaloisError::NotSquarefree);
    }
    let disc_is_square = is_rational_square(&disc);
    let observations = sample_cycle_types(f, prime_bound)?;
    if disc_is_square {
        if let Some(bad) = observations
            .iter()
            .find(|o| !o.pattern.is_even_permutation())
        {
            return Err(GaloisError::DiscSquareInconsistency {
                p: bad.p,
                pattern: bad.pattern.clone(),
            });
        }
    }

    let mut d = Derivation {
        facts: Vec::new(),
        firings: Vec::new(),
    };
    let full = DegreePattern::new(vec![m]);
    let near_full = DegreePattern::new(vec![1, m - 1]);

    if let Some(o) = observations.iter().find(|o| o.pattern == full) {
        d.fire(Rule::Trans, vec![o.p], vec![], Fact::Transitive);
    } else {
        let mut reach = vec![true; m + 1];
        let mut used = Vec::new();
        for o in &observations {
            let own = subset_sums(&o.pattern, m);
            if reach.iter().zip(&own).any(|(&a, &b)| a && !b) {
                used.push(o.p);
                for (a, b) in reach.iter_mut().zip(own) {
                    *a &= b;
                }
            }
            if only_trivial_degrees(&reach) {
                d.fire(Rule::Trans2, used, vec![], Fact::Transitive);
                break;
            }
        }
    }

    if !disc_is_square {
        if let Some(o) = observations
            .iter()
            .find(|o| is_transposition_source(&o.pattern))
        {
            d.fire(Rule::Transpo, vec![o.p], vec![], Fact::Transposition);
        }
    }
    if let Some(o) = observations.iter().find(|o| o.pattern == full) {
        d.fire(Rule::MCycle, vec![o.p], vec![], Fact::Cycle { length: m });
    }
    if m >= 3 {
        if let Some(o) = observations.iter().find(|o| o.pattern == near_full) {
            d.fire(
                Rule::MCycle,
                vec![o.p],
                vec![],
                Fact::Cycle { length: m - 1 },
            );
        }
    }

    if d.has(Fact::Transitive) {
        let s4 = [
            Fact::Transitive,
            Fact::Transposition,
            Fact::Cycle { length: 4 },
            Fact::Cycle { length: 3 },
        ];
        let prime_deg = [Fact::Transitive, Fact::Transposition];
        let classic = [
            Fact::Transitive,
            Fact::Transposition,
            Fact::Cycle { length: m - 1 },
        ];
        if m == 4 && s4.iter().all(|&f| d.has(f)) {
            d.fire(Rule::S4, vec![], s4.to_vec(), Fact::Symmetric);
        } else if is_prime_u64(m as u64) && prime_deg.iter().all(|&f| d.has(f)) {
            d.fire(Rule::PrimeDeg, vec![], prime_deg.to_vec(), Fact::Symmetric);
        } else if m >= 3 && classic.iter().all(|&f| d.has(f)) {
            d.fire(Rule::Classic, vec![], classic.to_vec(), Fact::Symmetric);
        } else if let Some(o) = observations
            .iter()
            .find(|o| jordan_prime(&o.pattern, m).is_some())
        {
            d.fire(
                Rule::Jordan,
                vec![o.p],
                vec![Fact::Transitive],
                Fact::ContainsAlternating,
            );
            let conclusion = if disc_is_square {
                Fact::Alternating
            } else {
                Fact::Symmetric
            };
            d.fire(
                Rule::Sign,
                vec![],
                vec![Fact::ContainsAlternating],
                conclusion,
            );
        }
    }

    let verdict = d.verdict();
    Ok(GaloisCertificate {
        polynomial: f.clone(),
        prime_bound,
        disc,
        disc_is_square,
        observations,
        rules_fired: d.firings,
        verdict,
    })
}

/// `Gal(h(x) - t)` over `Q(t)`: symmetric when `h` is a Morse polynomial.
pub fn galois_over_function_field(h: &UniPoly) -> GaloisVerdict {
    if h.degree().unwrap_or(0) >= 2 && is_morse(h).is_morse {
        GaloisVerdict::ProvenSymmetric
    } else {
        GaloisVerdict::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate replay failed: {0}")]
pub struct ReplayError(pub String);

fn reject<T>(msg: impl Into<String>) -> Result<T, ReplayError> {
    Err(ReplayError(msg.into()))
}

/// Re-checks every rule firing against the recorded observations and
/// returns the verdict they support. Errors if any step does not follow
/// or the recorded verdict differs.
pub fn replay(cert: &GaloisCertificate) -> Result<GaloisVerdict, ReplayError> {
    let m = cert.degree();
    if m < 2 {
        return reject("degree below 2");
    }
    match cert.polynomial.discriminant() {
        Ok(d) if d == cert.disc => {}
        _ => return reject("recorded discriminant does not match the polynomial"),
    }
    if is_rational_square(&cert.disc) != cert.disc_is_square {
        return reject("disc_is_square flag is wrong");
    }
    for w in cert.observations.windows(2) {
        if w[0].p >= w[1].p {
            return reject("observations not in ascending prime order");
        }
    }
    for o in &cert.observations {
        if o.pattern.total() != m {
            return reject(format!("pattern at {} does not sum to {m}", o.p));
        }
        if cert.disc_is_square && !o.pattern.is_even_permutation() {
            return reject(format!("odd pattern at {} with square discriminant", o.p));
        }
    }
    let obs = |p: u64| {
        cert.observations
            .iter()
            .find(|o| o.p == p)
            .map(|o| &o.pattern)
            .ok_or_else(|| ReplayError(format!("no observation at p = {p}")))
    };
    let single = |f: &RuleFiring| -> Result<&DegreePattern, ReplayError> {
        match f.primes.as_slice() {
            [p] => obs(*p),
            _ => reject(format!("{} consumes exactly one observation", f.rule)),
        }
    };

    let mut facts: Vec<Fact> = Vec::new();
    for f in &cert.rules_fired {
        for prem in &f.premises {
            if !facts.contains(prem) {
                return reject(format!("{} uses underived premise {prem:?}", f.rule));
            }
        }
        let needs = |want: &[Fact]| -> Result<(), ReplayError> {
            if want.iter().all(|w| f.premises.contains(w)) {
                Ok(())
            } else {
                reject(format!("{} is missing premises", f.rule))
            }
        };
        let expected = match f.rule {
            Rule::Trans => {
                if single(f)?.parts() != [m] {
                    return reject("R-trans needs a full-degree pattern");
                }
                Fact::Transitive
            }
            Rule::Trans2 => {
                let mut reach = vec![true; m + 1];
                for &p in &f.primes {
                    for (a, b) in reach.iter_mut().zip(subset_sums(obs(p)?, m)) {
                        *a &= b;
                    }
                }
                if f.primes.is_empty() || !only_trivial_degrees(&reach) {
                    return reject("R-trans2 degree sets admit a proper factor");
                }
                Fact::Transitive
            }
            Rule::Transpo => {
                if !is_transposition_source(single(f)?) {
                    return reject("R-transpo pattern has the wrong shape");
                }
                Fact::Transposition
            }
            Rule::MCycle => {
                let pat = single(f)?;
                match f.conclusion {
                    Fact::Cycle { length } if length == m && pat.parts() == [m] => f.conclusion,
                    Fact::Cycle { length } if length + 1 == m && pat.parts() == [1, m - 1] => {
                        f.conclusion
                    }
                    _ => return reject("R-mcycle conclusion does not match its pattern"),
                }
            }
            Rule::Jordan => {
                needs(&[Fact::Transitive])?;
                if jordan_prime(single(f)?, m).is_none() {
                    return reject("R-jordan pattern has no suitable prime cycle");
                }
                Fact::ContainsAlternating
            }
            Rule::PrimeDeg => {
                needs(&[Fact::Transitive, Fact::Transposition])?;
                if !is_prime_u64(m as u64) {
                    return reject("R-prime-deg on composite degree");
                }
                Fact::Symmetric
            }
            Rule::Classic => {
                needs(&[
                    Fact::Transitive,
                    Fact::Transposition,
                    Fact::Cycle { length: m - 1 },
                ])?;
                Fact::Symmetric
            }
            Rule::S4 => {
                needs(&[
                    Fact::Transitive,
                    Fact::Transposition,
                    Fact::Cycle { length: 4 },
                    Fact::Cycle { length: 3 },
                ])?;
                if m != 4 {
                    return reject("R-s4 outside degree 4");
                }
                Fact::Symmetric
            }
            Rule::Sign => {
                needs(&[Fact::ContainsAlternating])?;
                if cert.disc_is_square {
                    Fact::Alternating
                } else {
                    Fact::Symmetric
                }
            }
        };
        if expected != f.conclusion {
            return reject(format!(
                "{} concludes {:?}, expected {expected:?}",
                f.rule, f.conclusion
            ));
        }
        facts.push(expected);
    }
    let verdict = verdict_from(&facts);
    if verdict != cert.verdict {
        return reject(format!(
            "rules support {verdict}, certificate says {}",
            cert.verdict
        ));
    }
    Ok(verdict)
}
