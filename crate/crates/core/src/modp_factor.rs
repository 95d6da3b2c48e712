//! Polynomials over prime fields and their factor-degree patterns.
//!
//! Distinct-degree factorization peels off the product of all irreducible
//! factors of degree `i` as `gcd(a, x^(p^i) - x)`; its degree divided by
//! `i` counts them. Full splitting into irreducibles (Cantor-Zassenhaus)
//! is available separately and is seeded deterministically.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_poly::{is_prime_u64, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModpError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("a coefficient denominator is divisible by {0}")]
    DenominatorDivisibleByP(u64),
    #[error("polynomial is not squarefree modulo {0}")]
    NotSquarefree(u64),
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
}

/// Dense polynomial over `F_p`, ascending coefficients, no trailing zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl PrimePoly {
    /// Coefficients are reduced mod `p`. `p` is assumed prime.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PrimePoly { p, coeffs }
    }

    fn zero(p: u64) -> Self {
        PrimePoly {
            p,
            coeffs: Vec::new(),
        }
    }

    fn one(p: u64) -> Self {
        PrimePoly { p, coeffs: vec![1] }
    }

    fn x(p: u64) -> Self {
        PrimePoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat; a is a unit.
        let (mut base, mut e, mut acc) = (a % self.p, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn monic(&self) -> PrimePoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = self.inv(lc);
                PrimePoly::new(
                    self.p,
                    self.coeffs.iter().map(|&c| self.mulmod(c, inv)).collect(),
                )
            }
        }
    }

    pub fn add(&self, other: &PrimePoly) -> PrimePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                ((a as u128 + b as u128) % self.p as u128) as u64
            })
            .collect();
        PrimePoly::new(self.p, c)
    }

    pub fn sub(&self, other: &PrimePoly) -> PrimePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                ((a as u128 + self.p as u128 - b as u128) % self.p as u128) as u64
            })
            .collect();
        PrimePoly::new(self.p, c)
    }

    pub fn mul(&self, other: &PrimePoly) -> PrimePoly {
        if self.is_zero() || other.is_zero() {
            return PrimePoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        PrimePoly::new(self.p, acc.into_iter().map(|c| c as u64).collect())
    }

    /// Quotient and remainder; `divisor` nonzero.
    pub fn divrem(&self, divisor: &PrimePoly) -> (PrimePoly, PrimePoly) {
        let db = divisor.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= db {
            return (PrimePoly::zero(self.p), self.clone());
        }
        let inv = self.inv(divisor.coeffs[db]);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.mulmod(rem[k + db], inv);
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let t = self.mulmod(c, d);
                rem[k + j] = (rem[k + j] + self.p - t) % self.p;
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (PrimePoly::new(self.p, quot), PrimePoly::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &PrimePoly) -> PrimePoly {
        self.divrem(divisor).1
    }

    /// Monic GCD; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PrimePoly) -> PrimePoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> PrimePoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| self.mulmod(c, k as u64 % self.p))
            .collect();
        PrimePoly::new(self.p, c)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &PrimePoly) -> PrimePoly {
        let mut base = self.rem(modulus);
        let mut acc = PrimePoly::one(self.p).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

impl fmt::Display for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.p);
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

/// Sorted multiset of irreducible-factor degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreePattern(Vec<usize>);

impl DegreePattern {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable();
        DegreePattern(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Parity of the permutation with this cycle type.
    pub fn is_even_permutation(&self) -> bool {
        self.0.iter().map(|k| k - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for DegreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Coefficientwise reduction of a rational polynomial modulo `p`.
pub fn reduce_mod_p(a: &UniPoly, p: u64) -> Result<PrimePoly, ModpError> {
    if !is_prime_u64(p) {
        return Err(ModpError::NotPrime(p));
    }
    let bp = BigInt::from(p);
    let modp = |n: &BigInt| -> u64 {
        let r = n % &bp;
        let r = if r < BigInt::zero() { r + &bp } else { r };
        r.to_u64().unwrap()
    };
    let field = PrimePoly::zero(p);
    let mut out = Vec::with_capacity(a.coeffs().len());
    for c in a.coeffs() {
        let den = modp(c.denom());
        if den == 0 {
            return Err(ModpError::DenominatorDivisibleByP(p));
        }
        out.push(field.mulmod(modp(c.numer()), field.inv(den)));
    }
    Ok(PrimePoly::new(p, out))
}

/// `(i, product of all monic irreducible factors of degree i)`, ascending.
/// `a` must be squarefree with degree at least 1.
pub fn distinct_degree_factorization(a: &PrimePoly) -> Vec<(usize, PrimePoly)> {
    let p = a.p;
    let mut rest = a.monic();
    let x = PrimePoly::x(p);
    let mut frob = x.clone();
    let mut out = Vec::new();
    let mut i = 0;
    while let Some(d) = rest.degree() {
        if d < 2 * (i + 1) {
            if d > 0 {
                out.push((d, rest));
            }
            break;
        }
        i += 1;
        frob = frob.pow_mod(p, &rest);
        let g = rest.gcd(&frob.sub(&x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&g).0;
            frob = frob.rem(&rest);
            out.push((i, g));
        }
    }
    out
}

/// Factor degrees of a squarefree polynomial mod p, via distinct-degree
/// factorization.
pub fn degree_pattern(a: &PrimePoly) -> Result<DegreePattern, ModpError> {
    if a.degree().unwrap_or(0) == 0 {
        return Err(ModpError::ConstantPolynomial);
    }
    if !a.is_squarefree() {
        return Err(ModpError::NotSquarefree(a.p));
    }
    let mut parts = Vec::new();
    for (i, g) in distinct_degree_factorization(a) {
        let count = g.degree().unwrap() / i;
        parts.extend(std::iter::repeat_n(i, count));
    }
    Ok(DegreePattern::new(parts))
}

pub fn is_irreducible_mod_p(a: &PrimePoly) -> bool {
    match a.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(d) => degree_pattern(a).is_ok_and(|pat| pat.parts() == [d]),
    }
}

fn random_below(p: u64, deg: usize, rng: &mut ChaCha8Rng) -> PrimePoly {
    PrimePoly::new(p, (0..deg).map(|_| rng.gen_range(0..p)).collect())
}

/// Splits a product of distinct monic irreducibles, all of degree `d`.
fn equal_degree_split(g: &PrimePoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<PrimePoly>) {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.monic());
        return;
    }
    let p = g.p;
    loop {
        let r = random_below(p, n, rng);
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let w = if p == 2 {
            // Trace map r + r^2 + ... + r^(2^(d-1)).
            let mut acc = r.rem(g);
            let mut term = acc.clone();
            for _ in 1..d {
                term = term.mul(&term).rem(g);
                acc = acc.add(&term);
            }
            acc
        } else {
            // r^((p^d - 1)/2) = prod_i (r^((p-1)/2))^(p^i).
            let mut s = r.pow_mod((p - 1) / 2, g);
            let mut acc = s.clone();
            for _ in 1..d {
                s = s.pow_mod(p, g);
                acc = acc.mul(&s).rem(g);
            }
            acc.sub(&PrimePoly::one(p))
        };
        let h = g.gcd(&w);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let other = g.divrem(&h).0;
            equal_degree_split(&h, d, rng, out);
            equal_degree_split(&other, d, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial, sorted by degree
/// then coefficients.
pub fn factor_squarefree(a: &PrimePoly) -> Result<Vec<PrimePoly>, ModpError> {
    if a.degree().unwrap_or(0) == 0 {
        return Err(ModpError::ConstantPolynomial);
    }
    if !a.is_squarefree() {
        return Err(ModpError::NotSquarefree(a.p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ a.p ^ ((a.coeffs.len() as u64) << 32));
    let mut out = Vec::new();
    for (d, g) in distinct_degree_factorization(a) {
        equal_degree_split(&g, d, &mut rng, &mut out);
    }
    out.sort_by(|x, y| {
        (x.degree(), x.coeffs.iter().rev().collect::<Vec<_>>())
            .cmp(&(y.degree(), y.coeffs.iter().rev().collect::<Vec<_>>()))
    });
    Ok(out)
}
