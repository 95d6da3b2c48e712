//! Exact univariate polynomials over the rationals.
//!
//! [`UniPoly`] is dense and canonical: coefficients in ascending degree
//! order, never a trailing zero, and the zero polynomial is the empty
//! vector (its degree is `None`). GCD, resultant and discriminant clear
//! denominators and run the subresultant PRS over the integers.

mod integer;
mod parse;
pub(crate) mod subresultant;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use integer::{
    divisors, factorize, factorize_with, int_squarefree_part, is_perfect_square, is_prime_u64,
    is_rational_square, primes_up_to, rat_squarefree_part, FactorBudget, Factorization, IntError,
};
pub use parse::{parse_poly, ParseError};

use subresultant::{primitive_part, subresultant_prs};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials in different variables: {0} and {1}")]
    MultiVariable(String, String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a polynomial of degree at least 1")]
    ConstantPolynomial,
}

#[derive(Clone, Debug)]
pub struct UniPoly {
    var: Option<String>,
    coeffs: Vec<ExactRat>,
}

/// Constants compare equal regardless of the variable they were written in.
impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.coeffs.len() <= 1 || self.var == other.var)
    }
}

impl Eq for UniPoly {}

fn trim_rat(v: &mut Vec<ExactRat>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn rat(n: i64) -> ExactRat {
    BigRational::from_integer(BigInt::from(n))
}

impl UniPoly {
    pub fn new(var: Option<&str>, mut coeffs: Vec<ExactRat>) -> Self {
        trim_rat(&mut coeffs);
        UniPoly {
            var: var.map(str::to_owned),
            coeffs,
        }
    }

    pub fn from_ints(var: &str, coeffs: &[i64]) -> Self {
        UniPoly::new(Some(var), coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_int_coeffs(var: Option<&str>, coeffs: &[BigInt]) -> Self {
        UniPoly::new(
            var,
            coeffs
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        )
    }

    pub fn zero(var: Option<&str>) -> Self {
        UniPoly::new(var, Vec::new())
    }

    pub fn constant(c: ExactRat) -> Self {
        UniPoly::new(None, vec![c])
    }

    /// The monomial `var^k`.
    pub fn monomial(var: &str, k: usize) -> Self {
        let mut coeffs = vec![ExactRat::zero(); k + 1];
        coeffs[k] = ExactRat::one();
        UniPoly::new(Some(var), coeffs)
    }

    pub fn var(&self) -> Option<&str> {
        self.var.as_deref()
    }

    /// Same coefficients, new variable name.
    pub fn with_var(&self, var: &str) -> Self {
        UniPoly {
            var: Some(var.to_owned()),
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactRat {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactRat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&ExactRat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &ExactRat) -> ExactRat {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat(k as i64))
            .collect();
        UniPoly::new(self.var(), coeffs)
    }

    pub fn scale(&self, c: &ExactRat) -> UniPoly {
        UniPoly::new(self.var(), self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// The variable of a result combining `self` and `other`.
    fn joint_var(&self, other: &UniPoly) -> Result<Option<String>, PolyError> {
        match (&self.var, &other.var) {
            (Some(a), Some(b)) if a != b && !self.is_constant() && !other.is_constant() => {
                Err(PolyError::MultiVariable(a.clone(), b.clone()))
            }
            _ if !self.is_constant() => Ok(self.var.clone()),
            _ if !other.is_constant() => Ok(other.var.clone()),
            _ => Ok(self.var.clone().or_else(|| other.var.clone())),
        }
    }

    pub fn try_add(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        let var = self.joint_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Ok(UniPoly::new(var.as_deref(), coeffs))
    }

    pub fn try_sub(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        let var = self.joint_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(UniPoly::zero(var.as_deref()));
        }
        let mut coeffs = vec![ExactRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(UniPoly::new(var.as_deref(), coeffs))
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::new(self.var(), vec![ExactRat::one()]);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division over the rationals: `self = q * divisor + r`.
    pub fn divmod(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let var = self.joint_var(divisor)?;
        let db = divisor.degree().ok_or(PolyError::DivisionByZeroPoly)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((
                UniPoly::zero(var.as_deref()),
                UniPoly::new(var.as_deref(), rem),
            ));
        }
        let lc = divisor.coeffs[db].clone();
        let mut quot = vec![ExactRat::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + db] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((
            UniPoly::new(var.as_deref(), quot),
            UniPoly::new(var.as_deref(), rem),
        ))
    }

    /// `(scale, z)` with `self = scale * z`, `z` a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn to_primitive_integer(&self) -> (ExactRat, Vec<ExactInt>) {
        if self.is_zero() {
            return (ExactRat::zero(), Vec::new());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let prim = primitive_part(&ints);
        let scale =
            self.coeffs.last().unwrap() / BigRational::from_integer(prim.last().unwrap().clone());
        (scale, prim)
    }

    /// Monic GCD over the rationals. `gcd(0, 0)` is the zero polynomial.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        let var = self.joint_var(other)?;
        let var = var.as_deref();
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ok(UniPoly::zero(var)),
            (true, false) => return Ok(other.monic().with_var_opt(var)),
            (false, true) => return Ok(self.monic().with_var_opt(var)),
            _ => {}
        }
        let (_, a) = self.to_primitive_integer();
        let (_, b) = other.to_primitive_integer();
        let last = subresultant_prs(&a, &b).last;
        Ok(UniPoly::from_int_coeffs(var, &primitive_part(&last)).monic())
    }

    /// `Res(self, other) = lc(self)^deg(other) * prod other(alpha)` over
    /// the roots `alpha` of `self`.
    pub fn resultant(&self, other: &UniPoly) -> Result<ExactRat, PolyError> {
        self.joint_var(other)?;
        let m = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        let n = other.degree().ok_or(PolyError::ZeroPolynomial)?;
        let (sa, a) = self.to_primitive_integer();
        let (sb, b) = other.to_primitive_integer();
        let res = BigRational::from_integer(subresultant_prs(&a, &b).resultant);
        Ok(res * rat_pow(&sa, n) * rat_pow(&sb, m))
    }

    /// `(-1)^(m(m-1)/2) * Res(a, a') / lc(a)`.
    pub fn discriminant(&self) -> Result<ExactRat, PolyError> {
        let m = match self.degree() {
            None | Some(0) => return Err(PolyError::ConstantPolynomial),
            Some(m) => m,
        };
        if m == 1 {
            return Ok(ExactRat::one());
        }
        let res = self.resultant(&self.derivative())?;
        let d = res / self.leading_coeff().unwrap();
        Ok(if (m * (m - 1) / 2) % 2 == 1 { -d } else { d })
    }

    /// Discriminant of the primitive integer model; the integer whose prime
    /// divisors are the primes of bad reduction.
    pub fn integer_discriminant(&self) -> Result<ExactInt, PolyError> {
        let (_, z) = self.to_primitive_integer();
        let d = UniPoly::from_int_coeffs(self.var(), &z).discriminant()?;
        Ok(d.to_integer())
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self
                .gcd(&self.derivative())
                .map(|g| g.degree() == Some(0))
                .unwrap_or(false),
        }
    }

    fn with_var_opt(mut self, var: Option<&str>) -> Self {
        self.var = var.map(str::to_owned);
        self
    }
}

pub(crate) fn rat_pow(r: &ExactRat, e: usize) -> ExactRat {
    (0..e).fold(ExactRat::one(), |acc, _| acc * r)
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.var(), self.coeffs.iter().map(|c| -c).collect())
    }
}

// Operator forms panic on mismatched variables; use the `try_` methods
// when inputs are untrusted.
impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.try_add(rhs).expect("variable mismatch")
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.try_sub(rhs).expect("variable mismatch")
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.try_mul(rhs).expect("variable mismatch")
    }
}

fn fmt_rat(r: &ExactRat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical rendering: descending powers, `" + "`/`" - "` separators,
/// `c*x^k` terms with unit coefficients omitted.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let var = self.var().unwrap_or("x");
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let body = match k {
                0 => String::new(),
                1 => var.to_owned(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                f.write_str(&fmt_rat(&mag))?;
            } else if mag.is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{}*{}", fmt_rat(&mag), body)?;
            }
        }
        Ok(())
    }
}

impl FromStr for UniPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_poly(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing exact numbers as decimal strings.
pub mod serde_exact {
    use super::*;

    pub mod int {
        use super::*;
        pub fn serialize<S: Serializer>(v: &ExactInt, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactInt, D::Error> {
            String::deserialize(d)?
                .parse()
                .map_err(serde::de::Error::custom)
        }
    }

    pub mod opt_int {
        use super::*;
        pub fn serialize<S: Serializer>(v: &Option<ExactInt>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.serialize_some(&v.to_string()),
                None => s.serialize_none(),
            }
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<ExactInt>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| s.parse().map_err(serde::de::Error::custom))
                .transpose()
        }
    }

    pub mod rational {
        use super::*;
        pub fn serialize<S: Serializer>(v: &ExactRat, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&fmt_rat(v))
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactRat, D::Error> {
            String::deserialize(d)?
                .parse()
                .map_err(serde::de::Error::custom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> UniPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn ring_ops_examples() {
        assert_eq!(&p("x+1") * &p("x-1"), p("x^2-1"));
        let z = &p("x^2") + &p("-x^2");
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(&p("x^3-x-1") - &p("x^3"), p("-x-1"));
        assert_eq!(
            p("x").try_add(&p("y")),
            Err(PolyError::MultiVariable("x".into(), "y".into()))
        );
        // constants mix with anything
        assert_eq!(p("3").try_mul(&p("y^2")).unwrap(), p("3y^2"));
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = p("x^4-x+2").divmod(&p("x-3")).unwrap();
        assert_eq!(q, p("x^3+3x^2+9x+26"));
        assert_eq!(r, UniPoly::constant(rat(80)));
        let (q, r) = p("x^2").divmod(&p("x")).unwrap();
        assert_eq!((q, r.is_zero()), (p("x"), true));
        let (q, r) = p("x+1").divmod(&p("x^2")).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, p("x+1"));
        assert_eq!(
            p("x").divmod(&UniPoly::zero(Some("x"))),
            Err(PolyError::DivisionByZeroPoly)
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("x^2-1").gcd(&p("x-1")).unwrap(), p("x-1"));
        assert_eq!(p("x^4-x-1").gcd(&p("4x^3-1")).unwrap(), p("1"));
        assert_eq!(p("x^2").gcd(&p("2x")).unwrap(), p("x"));
        assert_eq!(p("1/2x^2 - 1/2").gcd(&p("3x+3")).unwrap(), p("x+1"));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x^5-x").derivative(), p("5x^4-1"));
        assert!(p("7").derivative().is_zero());
        for m in 2..8usize {
            let f = p(&format!("x^{m}-x-1"));
            assert_eq!(f.derivative(), p(&format!("{m}x^{}-1", m - 1)));
        }
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(p("x-2").resultant(&p("x-3")).unwrap(), rat(-1));
        assert_eq!(p("x^2+1").resultant(&p("x^2-1")).unwrap(), rat(4));
        assert_eq!(
            p("x").resultant(&UniPoly::zero(Some("x"))),
            Err(PolyError::ZeroPolynomial)
        );
        // rational scaling: Res(2x - 1, x^2) = 2^2 * (1/2)^2 = 1
        assert_eq!(p("2x-1").resultant(&p("x^2")).unwrap(), rat(1));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(p("x^4-x-1").discriminant().unwrap(), rat(-283));
        assert_eq!(p("x^4-x+2").discriminant().unwrap(), rat(2021));
        assert_eq!(p("x^2-1").discriminant().unwrap(), rat(4));
        assert_eq!(p("x^2").discriminant().unwrap(), rat(0));
        assert_eq!(p("3x+1").discriminant().unwrap(), rat(1));
        assert_eq!(p("5").discriminant(), Err(PolyError::ConstantPolynomial));
        // non-monic: disc(2x^2 + 3x + 1) = 9 - 8 = 1
        assert_eq!(p("2x^2+3x+1").discriminant().unwrap(), rat(1));
    }

    #[test]
    fn rendering_is_canonical() {
        assert_eq!(p("x^4 - x - 1").to_string(), "x^4 - x - 1");
        assert_eq!(p("-1 + 0x + 1/2 * x^3").to_string(), "1/2*x^3 - 1");
        assert_eq!(p("-(y^2) + 2").to_string(), "-y^2 + 2");
        assert_eq!(UniPoly::zero(Some("x")).to_string(), "0");
        assert_eq!(p("-3/4").to_string(), "-3/4");
    }

    #[test]
    fn integer_model() {
        let (s, z) = p("1/2x^2 - 3/4").to_primitive_integer();
        assert_eq!(s, BigRational::new(1.into(), 4.into()));
        assert_eq!(z, vec![BigInt::from(-3), BigInt::from(0), BigInt::from(2)]);
    }
}
