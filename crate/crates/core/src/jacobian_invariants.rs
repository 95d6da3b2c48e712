//! Closed-form invariants of Berger curves and superelliptic Jacobians.
//!
//! Every halving is checked: a numerator that is odd (or negative) is a
//! formula bug and surfaces as [`InvariantError::ParityBug`].

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_poly::{is_prime_u64, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("non-integral half in {formula}: numerator {numerator}")]
    ParityBug {
        formula: &'static str,
        numerator: i128,
    },
    #[error("new-part dimensions sum to {rows} but the Jacobian has dimension {total}")]
    DimensionSumMismatch { rows: u64, total: u64 },
}

impl InvariantError {
    /// True for violated internal identities, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        !matches!(self, InvariantError::InvalidArgument(_))
    }
}

fn half(formula: &'static str, numerator: i128) -> Result<u64, InvariantError> {
    if numerator < 0 || numerator % 2 != 0 {
        return Err(InvariantError::ParityBug { formula, numerator });
    }
    Ok((numerator / 2) as u64)
}

fn invalid(msg: impl Into<String>) -> InvariantError {
    InvariantError::InvalidArgument(msg.into())
}

/// A layer `k(t^(1/q))` of the tower, `q = p^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerLayer {
    pub p: u64,
    pub r: u32,
    pub q: u64,
}

impl TowerLayer {
    pub fn new(p: u64, r: u32) -> Result<Self, InvariantError> {
        if !is_prime_u64(p) {
            return Err(invalid(format!("{p} is not a prime")));
        }
        let q = p
            .checked_pow(r)
            .ok_or_else(|| invalid(format!("{p}^{r} overflows")))?;
        Ok(TowerLayer { p, r, q })
    }

    /// The `d` of the layer `K_d`.
    pub fn d(&self) -> u64 {
        self.q
    }
}

/// Prime-power test: `Some((p, i))` with `q = p^i`, `i >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut i) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        i += 1;
    }
    (rest == 1).then_some((p, i))
}

pub fn euler_phi(q: u64) -> u64 {
    assert!(q >= 1, "euler_phi of 0");
    let (mut n, mut phi) = (q, q);
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Genus `((m-1)(n-1) - gcd(m,n) + 1) / 2` of the Berger curve.
pub fn berger_genus(m: u64, n: u64) -> Result<u64, InvariantError> {
    if m < 2 || n < 2 {
        return Err(invalid("degrees must be at least 2"));
    }
    let num = ((m - 1) * (n - 1)) as i128 - m.gcd(&n) as i128 + 1;
    half("berger_genus", num)
}

/// `dim J_{f,q} = (m-1)(q-1)/2 - (gcd(q,m)-1)/2`.
pub fn dim_superelliptic(m: u64, q: u64) -> Result<u64, InvariantError> {
    if m < 2 || q < 1 {
        return Err(invalid("need m >= 2 and q >= 1"));
    }
    let num = ((m - 1) * (q - 1)) as i128 - (q.gcd(&m) as i128 - 1);
    half("dim_superelliptic", num)
}

/// Dimension of the new part at a prime-power level `q > 1`.
pub fn dim_new_part(m: u64, q: u64) -> Result<u64, InvariantError> {
    if m < 2 {
        return Err(invalid("need m >= 2"));
    }
    if prime_power(q).is_none() {
        return Err(invalid(format!("{q} is not a prime power > 1")));
    }
    let k = if m.is_multiple_of(q) { m - 2 } else { m - 1 };
    half("dim_new_part", (k * euler_phi(q)) as i128)
}

/// Periodic term `(m-1)(n-1) + gcd(m,n,d) - 1` of the tower rank formula.
pub fn c2(m: u64, n: u64, d: u64) -> u64 {
    (m - 1) * (n - 1) + m.gcd(&n).gcd(&d) - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRow {
    pub i: u32,
    pub q: u64,
    pub dim: u64,
}

/// `J_{f,p^r}` up to isogeny as the product of its new parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTable {
    pub m: u64,
    pub p: u64,
    pub r: u32,
    pub rows: Vec<DecompositionRow>,
    pub total: u64,
}

pub fn decomposition_table(m: u64, p: u64, r: u32) -> Result<DecompositionTable, InvariantError> {
    let layer = TowerLayer::new(p, r)?;
    let mut rows = Vec::with_capacity(r as usize);
    for i in 1..=r {
        let q = p.pow(i);
        rows.push(DecompositionRow {
            i,
            q,
            dim: dim_new_part(m, q)?,
        });
    }
    let total = dim_superelliptic(m, layer.q)?;
    let sum: u64 = rows.iter().map(|row| row.dim).sum();
    if sum != total {
        return Err(InvariantError::DimensionSumMismatch { rows: sum, total });
    }
    Ok(DecompositionTable {
        m,
        p,
        r,
        rows,
        total,
    })
}

/// The pair `(f, g)` defining the Berger curve `f(x) - t g(y) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePair {
    pub f: UniPoly,
    pub g: UniPoly,
}

impl CurvePair {
    pub fn new(f: UniPoly, g: UniPoly) -> Result<Self, InvariantError> {
        let pair = CurvePair { f, g };
        if pair.f.degree().unwrap_or(0) < 2 || pair.g.degree().unwrap_or(0) < 2 {
            return Err(invalid("f and g must have degree at least 2"));
        }
        if !pair.f.is_squarefree() || !pair.g.is_squarefree() {
            return Err(invalid("f and g must have distinct roots"));
        }
        Ok(pair)
    }

    pub fn m(&self) -> u64 {
        self.f.degree().unwrap_or(0) as u64
    }

    pub fn n(&self) -> u64 {
        self.g.degree().unwrap_or(0) as u64
    }

    pub fn genus(&self) -> Result<u64, InvariantError> {
        berger_genus(self.m(), self.n())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(7), 6);
    }

    #[test]
    fn genus_values() {
        assert_eq!(berger_genus(5, 2), Ok(2));
        assert_eq!(berger_genus(3, 3), Ok(1));
        assert_eq!(berger_genus(2, 2), Ok(0));
        assert!(berger_genus(1, 2).is_err());
    }

    #[test]
    fn dimension_values() {
        assert_eq!(dim_superelliptic(5, 3), Ok(4));
        assert_eq!(dim_superelliptic(4, 2), Ok(1));
        for m in 2..20 {
            assert_eq!(dim_superelliptic(m, 1), Ok(0));
        }
        assert_eq!(dim_new_part(5, 3), Ok(4));
        assert_eq!(dim_new_part(4, 2), Ok(1));
        assert_eq!(dim_new_part(2, 2), Ok(0));
        assert!(dim_new_part(5, 6).is_err());
        assert!(dim_new_part(5, 1).is_err());
    }

    #[test]
    fn c2_values() {
        assert_eq!(c2(5, 2, 7), 4);
        assert_eq!(c2(5, 3, 3), 8);
        assert_eq!(c2(9, 3, 3), 18);
        assert_eq!(c2(6, 2, 3), 5);
    }

    #[test]
    fn decomposition_tables() {
        let t = decomposition_table(5, 3, 2).unwrap();
        assert_eq!(
            t.rows.iter().map(|r| r.dim).collect::<Vec<_>>(),
            vec![4, 12]
        );
        assert_eq!(t.total, 16);
        let t = decomposition_table(4, 2, 2).unwrap();
        assert_eq!(t.rows.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(t.total, 3);
        for m in 2..=30 {
            for p in [2, 3, 5, 7, 11, 13] {
                for r in 0..=5 {
                    decomposition_table(m, p, r).unwrap();
                }
            }
        }
        let t = decomposition_table(7, 5, 0).unwrap();
        assert!(t.rows.is_empty());
        assert_eq!(t.total, 0);
        assert!(decomposition_table(7, 6, 1).is_err());
    }

    #[test]
    fn tower_layers() {
        let l = TowerLayer::new(3, 0).unwrap();
        assert_eq!(l.q, 1);
        assert_eq!(TowerLayer::new(7, 2).unwrap().d(), 49);
        assert!(TowerLayer::new(9, 1).is_err());
        assert!(TowerLayer::new(2, 64).is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    proptest! {
        #[test]
        fn new_parts_are_positive_off_the_trivial_case(m in 2u64..40, pi in 0usize..6, i in 1u32..4) {
            let p = [2u64, 3, 5, 7, 11, 13][pi];
            let q = p.pow(i);
            let dim = dim_new_part(m, q).unwrap();
            prop_assert_eq!(dim > 0, m > 2 || q > 2);
        }

        #[test]
        fn c2_stays_in_its_band(m in 2u64..50, n in 2u64..50, d in 1u64..500) {
            let base = (m - 1) * (n - 1);
            let v = c2(m, n, d);
            prop_assert!(base <= v && v < base + m.gcd(&n));
            prop_assert_eq!(v, c2(m, n, d + m.gcd(&n)));
        }

        #[test]
        fn genus_numerator_is_even(m in 2u64..=50, n in 2u64..=50) {
            prop_assert!(berger_genus(m, n).is_ok());
        }
    }
}
