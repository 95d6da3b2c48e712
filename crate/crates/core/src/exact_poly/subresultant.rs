//! Subresultant polynomial remainder sequences over an integral domain.
//!
//! Polynomials here are bare coefficient vectors in ascending degree order
//! with no trailing zeros. The same routine serves integer polynomials
//! (GCD, resultant, discriminant) and polynomials whose coefficients are
//! themselves integer polynomials in an outer variable (the bivariate
//! resultant behind the Morse test).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact ring operations needed by the subresultant algorithm.
pub(crate) trait Domain: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known to be exact. Panics otherwise.
    fn exact_div(&self, other: &Self) -> Self;

    fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Domain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        assert!(
            Zero::is_zero(&r),
            "inexact integer division {self} / {other}"
        );
        q
    }
}

/// Dense polynomial in an outer variable with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPoly(coeffs)
    }
}

impl Domain for IntPoly {
    fn zero() -> Self {
        IntPoly(Vec::new())
    }
    fn one() -> Self {
        IntPoly(vec![<BigInt as One>::one()])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        IntPoly::new(add(&self.0, &other.0))
    }
    fn sub(&self, other: &Self) -> Self {
        IntPoly::new(sub(&self.0, &other.0))
    }
    fn mul(&self, other: &Self) -> Self {
        IntPoly::new(mul(&self.0, &other.0))
    }
    fn neg(&self) -> Self {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }
    fn exact_div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dd = other.0.len() - 1;
        let lc = other.0.last().unwrap();
        if rem.len() <= dd {
            assert!(rem.is_empty(), "inexact polynomial division");
            return IntPoly::zero();
        }
        let mut quot = vec![<BigInt as Zero>::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if Zero::is_zero(top) {
                continue;
            }
            let (c, r) = top.div_rem(lc);
            assert!(Zero::is_zero(&r), "inexact polynomial division");
            for (j, oc) in other.0.iter().enumerate() {
                rem[k + j] -= &c * oc;
            }
            quot[k] = c;
        }
        trim(&mut rem);
        assert!(rem.is_empty(), "inexact polynomial division");
        IntPoly::new(quot)
    }
}

pub(crate) fn trim<R: Domain>(v: &mut Vec<R>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn add<R: Domain>(a: &[R], b: &[R]) -> Vec<R> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn sub<R: Domain>(a: &[R], b: &[R]) -> Vec<R> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.sub(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.neg(),
            (None, None) => unreachable!(),
        })
        .collect()
}

pub(crate) fn mul<R: Domain>(a: &[R], b: &[R]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn pseudo_rem<R: Domain>(a: &[R], b: &[R]) -> Vec<R> {
    assert!(!b.is_empty());
    let db = b.len() - 1;
    if a.len() <= db {
        return a.to_vec();
    }
    let lc = &b[db];
    let mut rem = a.to_vec();
    let mut steps = a.len() - db;
    while rem.len() > db {
        let top = rem.pop().unwrap();
        let shift = rem.len() - db;
        for c in rem.iter_mut() {
            *c = c.mul(lc);
        }
        for (j, bc) in b[..db].iter().enumerate() {
            rem[shift + j] = rem[shift + j].sub(&top.mul(bc));
        }
        steps -= 1;
        trim(&mut rem);
    }
    // Steps skipped by degree drops still contribute a factor of lc.
    if steps > 0 {
        let f = lc.pow(steps);
        for c in rem.iter_mut() {
            *c = c.mul(&f);
        }
    }
    rem
}

pub(crate) struct PrsOutcome<R> {
    /// Last nonzero element of the sequence; a GCD up to a unit of the
    /// fraction field.
    pub last: Vec<R>,
    pub resultant: R,
}

/// Runs the subresultant PRS on two nonzero polynomials, returning both
/// the last nonzero remainder and `Res(a, b)` with the Sylvester
/// convention `lc(a)^deg(b) * prod b(alpha)`.
pub(crate) fn subresultant_prs<R: Domain>(a: &[R], b: &[R]) -> PrsOutcome<R> {
    assert!(!a.is_empty() && !b.is_empty(), "zero polynomial in PRS");
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    let mut negate = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            negate = true;
        }
    }
    let sign = |r: R, negate: bool| if negate { r.neg() } else { r };

    if b.len() == 1 {
        let res = b[0].pow(a.len() - 1);
        return PrsOutcome {
            last: b,
            resultant: sign(res, negate),
        };
    }

    let mut g = R::one();
    let mut h = R::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let divisor = g.mul(&h.pow(delta));
        b = r.iter().map(|c| c.exact_div(&divisor)).collect();
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)),
        };
        if b.is_empty() {
            return PrsOutcome {
                last: a,
                resultant: R::zero(),
            };
        }
        if b.len() == 1 {
            let da = a.len() - 1;
            let res = b[0].pow(da).exact_div(&h.pow(da - 1));
            return PrsOutcome {
                last: b,
                resultant: sign(res, negate),
            };
        }
    }
}

/// Content (nonnegative gcd of coefficients) of an integer polynomial.
pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(<BigInt as Zero>::zero(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive_part(a: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn pseudo_remainder_matches_hand_computation() {
        // prem(x^2 + 1, 2x + 1) = 4 * (x^2 + 1) mod (2x + 1) = 5
        assert_eq!(pseudo_rem(&zp(&[1, 0, 1]), &zp(&[1, 2])), zp(&[5]));
        // degree drop inside the loop: prem(x^3 + x, x^2) = x with lc 1
        assert_eq!(pseudo_rem(&zp(&[0, 1, 0, 1]), &zp(&[0, 0, 1])), zp(&[0, 1]));
    }

    #[test]
    fn small_resultants() {
        let r = subresultant_prs(&zp(&[-2, 1]), &zp(&[-3, 1])).resultant;
        assert_eq!(r, BigInt::from(-1));
        let r = subresultant_prs(&zp(&[1, 0, 1]), &zp(&[-1, 0, 1])).resultant;
        assert_eq!(r, BigInt::from(4));
        // constant second argument: c^deg(a)
        let r = subresultant_prs(&zp(&[1, 1, 1]), &zp(&[3])).resultant;
        assert_eq!(r, BigInt::from(9));
    }

    #[test]
    fn gcd_sequence_ends_in_common_factor() {
        // (x - 1)(x + 2) and (x - 1)(x - 3)
        let out = subresultant_prs(&zp(&[-2, 1, 1]), &zp(&[3, -4, 1]));
        assert!(Zero::is_zero(&out.resultant));
        assert_eq!(primitive_part(&out.last), zp(&[-1, 1]));
    }

    #[test]
    fn int_poly_exact_division() {
        let a = IntPoly::new(zp(&[-1, 0, 1]));
        let b = IntPoly::new(zp(&[1, 1]));
        assert_eq!(a.exact_div(&b), IntPoly::new(zp(&[-1, 1])));
    }
}
